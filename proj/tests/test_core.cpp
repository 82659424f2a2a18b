#include <doctest.h>

#include <random>

#include "henon/core.hpp"

using namespace henon;

namespace {

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

// smallest t on a grid beyond which both domain inequalities hold on sampled circles
double scan_threshold(const Polynomial& p, double r, double R) {
    const int d = p.degree();
    auto ok = [&](double t) {
        for (int k = 0; k < 64; ++k) {
            cplx y = std::polar(t, 2 * M_PI * k / 64);
            cplx q = p(y) - std::pow(y, d);
            if (!(std::abs(q / std::pow(y, d)) + (R + 1) / std::pow(t, d - 1) < r)) return false;
            if (!(std::abs(p(y)) > (2 * R + 1) * t)) return false;
        }
        return true;
    };
    double last_bad = 1;
    for (double t = 1; t <= 50; t += 1e-3)
        if (!ok(t)) last_bad = t;
    return last_bad;
}

}  // namespace

TEST_CASE("polynomial parsing and evaluation") {
    Polynomial p = Polynomial::parse("x2-1");
    CHECK(p.degree() == 2);
    CHECK(near(p(cplx(3)), 8.0, 1e-15));
    Polynomial q = Polynomial::parse("x^3-3x+0.5i");
    CHECK(q.degree() == 3);
    CHECK(near(q(cplx(2)), cplx(2, 0.5), 1e-14));
    CHECK_THROWS_AS(Polynomial::parse("2x2"), Error);
    auto cps = Polynomial::parse("x^3-3x").critical_points();
    REQUIRE(cps.size() == 2);
    for (auto c : cps) CHECK(std::abs(std::abs(c) - 1) < 1e-12);
}

TEST_CASE("apply and its inverse") {
    HenonMap f{Polynomial::parse("x2-1"), 0.5};
    Point z = apply(f, {2.0, 1.0});
    CHECK(near(z.x, 2.5, 1e-15));
    CHECK(near(z.y, 2.0, 1e-15));
    Point w = apply_inverse(f, z);
    CHECK(near(w.x, 2.0, 1e-12));
    CHECK(near(w.y, 1.0, 1e-12));

    HenonMap g{Polynomial::parse("x2"), 1.0};
    Point u = apply_inverse(g, {4.0, 2.0});
    CHECK(near(u.x, 2.0, 1e-15));
    CHECK(near(u.y, 0.0, 1e-15));

    HenonMap deg{Polynomial::parse("x2-1"), 0.0};
    Point img = apply(deg, {0.7, -3.0});
    CHECK(near(img.x, deg.p(img.y), 1e-15));
    CHECK_THROWS_AS(apply_inverse(deg, {1.0, 1.0}), Error);
}

TEST_CASE("iteration") {
    HenonMap f{Polynomial::parse("x2"), 0.0};
    Point z = iterate(f, {2.0, 1.0}, 3).z;
    CHECK(near(z.x, 256.0, 1e-12));
    CHECK(near(z.y, 16.0, 1e-12));
    CHECK(near(iterate(f, {2.0, 1.0}, 0).z.x, 2.0, 0));

    HenonMap g{Polynomial::parse("x2-1"), 0.05};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    for (int i = 0; i < 100; ++i) {
        Point z0{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        Point a = iterate(g, iterate(g, z0, 2).z, 3).z;
        Point b = iterate(g, z0, 5).z;
        double s = std::max(1.0, std::abs(b.x) + std::abs(b.y));
        CHECK(std::abs(a.x - b.x) + std::abs(a.y - b.y) < 1e-9 * s);
        Point back = iterate(g, iterate(g, z0, 2).z, -2).z;
        CHECK(std::abs(back.x - z0.x) + std::abs(back.y - z0.y) < 1e-9);
    }
    auto big = iterate(HenonMap{Polynomial::parse("x2"), 0.0}, {10.0, 0.0}, 20);
    CHECK(big.overflow);
}

TEST_CASE("escape radius from the scan oracle") {
    Polynomial p = Polynomial::parse("x2");
    DomainParams dp = domain_params(p, 0.5, 0.125);
    double t = scan_threshold(p, 0.5, 0.125);
    CHECK(std::abs(t - 2.25) < 2e-3);
    CHECK(std::abs(dp.alpha - 1.05 * t) < 5e-3);
    CHECK(std::abs(dp.alpha - 2.3625) < 1e-3);

    for (const char* s : {"x2-1", "x2+0.3", "x^3-3x+0.5i"}) {
        Polynomial q = Polynomial::parse(s);
        DomainParams e = domain_params(q, 0.5, 0.125);
        CHECK(e.alpha >= scan_threshold(q, 0.5, 0.125));
        for (int k = 0; k < 32; ++k) {
            cplx y = std::polar(e.alpha, 2 * M_PI * k / 32);
            CHECK(std::abs(q(y)) > (2 * e.R + 1) * e.alpha);
        }
    }
    Polynomial q = Polynomial::parse("x2+0.3");
    double loose = domain_params(q, 0.9, 0.01).alpha, tight = domain_params(q, 0.5, 0.125).alpha;
    CHECK(loose < tight);
    CHECK(loose >= scan_threshold(q, 0.9, 0.01));
    CHECK(std::abs(DomainParams{}.B(2) - 2.0) < 1e-15);
}

TEST_CASE("escape domains") {
    DomainParams dp = domain_params(Polynomial::parse("x2"), 0.5, 0.125);
    CHECK(in_v_plus({10.0, 1.0}, dp));
    CHECK_FALSE(in_v_minus({10.0, 1.0}, dp));
    CHECK(in_v_minus({1.0, 10.0}, dp));
    CHECK_FALSE(in_v_plus({1.0, 1.0}, dp));
    CHECK_FALSE(in_v_minus({1.0, 1.0}, dp));
}

TEST_CASE("invariance of the escape domains and the Jacobian") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(1, 6), frac(0, 0.999), ja(0, 0.12);
    for (const char* s : {"x2", "x2-1"}) {
        Polynomial p = Polynomial::parse(s);
        DomainParams dp = domain_params(p);
        for (int i = 0; i < 1000; ++i) {
            HenonMap f{p, std::polar(ja(rng), ang(rng))};
            cplx x = std::polar(dp.alpha * rad(rng), ang(rng));
            cplx y = std::polar(std::abs(x) * frac(rng), ang(rng));
            Point z{x, y};
            REQUIRE(in_v_plus(z, dp));
            Point w = apply(f, z);
            CHECK(in_v_plus(w, dp));
            CHECK(std::abs(w.x) > (dp.R + 1) * std::abs(z.x));
            Point m{y, x};  // swapped: in V-
            REQUIRE(in_v_minus(m, dp));
            Point b = apply_inverse(f, m);
            CHECK(in_v_minus(b, dp));
            CHECK(std::abs(b.y) > 2 * std::abs(m.y));
        }
    }
    HenonMap f{Polynomial::parse("x2-1"), cplx(0.07, 0.02)};
    std::uniform_real_distribution<double> u(-2, 2);
    const double h = 1e-6;
    for (int i = 0; i < 50; ++i) {
        Point z{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        auto dx = [&](int c) {
            Point p1 = apply(f, {z.x + h, z.y}), p0 = apply(f, {z.x - h, z.y});
            return c == 0 ? (p1.x - p0.x) / (2 * h) : (p1.y - p0.y) / (2 * h);
        };
        auto dy = [&](int c) {
            Point p1 = apply(f, {z.x, z.y + h}), p0 = apply(f, {z.x, z.y - h});
            return c == 0 ? (p1.x - p0.x) / (2 * h) : (p1.y - p0.y) / (2 * h);
        };
        cplx det = dx(0) * dy(1) - dy(0) * dx(1);
        CHECK(std::abs(det - f.a) < 1e-6 * std::abs(f.a));
    }
}
