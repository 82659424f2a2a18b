#include <doctest.h>

#include <random>

#include "henon/escape.hpp"

using namespace henon;

namespace {

Context make(const char* p, cplx a) { return Context(HenonMap{Polynomial::parse(p), a}); }

// brute force forward escape rate
double brute_green_plus(const HenonMap& f, Point z) {
    const int d = f.p.degree();
    double scale = 1;
    for (int n = 0; n < 60; ++n) {
        if (std::abs(z.x) > 1e40) return std::log(std::abs(z.x)) * scale;
        z = apply(f, z);
        scale /= d;
    }
    return 0;
}

}  // namespace

TEST_CASE("trivial Henon map has phi+ = x") {
    Context ctx = make("x2", 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(3, 40);
    for (int i = 0; i < 50; ++i) {
        Point z{std::polar(rad(rng), ang(rng)), 0.3 * std::polar(1.0, ang(rng))};
        EscapeValue e = phi_plus(ctx, z);
        CHECK(std::abs(e.value - z.x) < 1e-13 * std::abs(z.x));
    }
}

TEST_CASE("phi+ examples") {
    Context ctx = make("x2-1", 0.01);
    EscapeValue e = phi_plus(ctx, {10.0, 1.0});
    // first two telescoping factors by hand, the rest is O(x^-8)
    double s1 = -1 / 100.0 - 0.01 * 1 / 100.0;
    double x1 = 99 - 0.01;
    double s2 = -1 / (x1 * x1) - 0.01 * 10 / (x1 * x1);
    double hand = 10 * std::pow(1 + s1, 0.5) * std::pow(1 + s2, 0.25);
    CHECK(std::abs(e.value - hand) < 1e-6);
    CHECK(e.tail_bound < 1e-12);
    CHECK(std::abs(e.value.imag()) < 1e-14);

    Context zero = make("x2", 0.0);
    CHECK(std::abs(phi_plus(zero, {cplx(0, 5), 0.0}).value - cplx(0, 5)) < 1e-13);
}

TEST_CASE("functional equations") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(4, 20), frac(0, 0.5);
    for (const char* p : {"x2-1", "x2+0.25i", "x^3-3x+0.5i"}) {
        Context ctx = make(p, cplx(0.03, 0.02));
        const int d = ctx.d();
        for (int i = 0; i < 100; ++i) {
            cplx x = std::polar(rad(rng), ang(rng));
            Point z{x, std::polar(std::abs(x) * frac(rng), ang(rng))};
            cplx a = phi_plus(ctx, apply(ctx.map, z)).value;
            cplx b = std::pow(phi_plus(ctx, z).value, d);
            CHECK(std::abs(a - b) < 1e-11 * std::abs(b));

            Point m{z.y, z.x};
            cplx lhs = ctx.map.a * phi_minus(ctx, apply_inverse(ctx.map, m)).value;
            cplx rhs = std::pow(phi_minus(ctx, m).value, d);
            CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(rhs));
        }
    }
}

TEST_CASE("green function against brute force") {
    Context ctx = make("x2-1", 0.05);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int escaping = 0;
    for (int i = 0; i < 200; ++i) {
        Point z{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        GreenValue g = green(ctx, z, Side::plus);
        double b = brute_green_plus(ctx.map, z);
        if (g.interior) {
            CHECK(b == 0);
            CHECK(g.value == 0);
            continue;
        }
        ++escaping;
        CHECK(g.value >= 0);
        CHECK(std::abs(g.value - b) < 1e-8);
    }
    CHECK(escaping > 20);
    // attracting 2-cycle near {0, -1}
    GreenValue in = green(ctx, {0.0, -1.0}, Side::plus);
    CHECK(in.interior);
    CHECK(in.value == 0);
    GreenValue out = green(ctx, {0.0, 0.0}, Side::minus);
    CHECK_FALSE(out.interior);
    CHECK(out.value > std::log(0.05));
}

TEST_CASE("gradient matches finite differences") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3, 3);
    const double h = 1e-5;
    for (Side side : {Side::plus, Side::minus}) {
        Context ctx = make("x2-1", 0.05);
        int tested = 0, skipped = 0;
        for (int i = 0; i < 600 && tested < 100; ++i) {
            Point z{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
            auto val = [&](Point w) {
                return side == Side::plus ? phi_plus(ctx, w).value : phi_minus(ctx, w).value;
            };
            std::pair<EscapeValue, Gradient> pg;
            try {
                pg = phi_with_gradient(ctx, z, side);
            } catch (const Error&) {
                continue;
            }
            cplx phi = pg.first.value;
            // 5-point stencil on phi, then d log phi = d phi / phi
            auto fd = [&](cplx Point::*coord, double h) {
                auto at = [&](double t) {
                    Point w = z;
                    w.*coord += t;
                    return val(w);
                };
                return (-at(2 * h) + 8. * at(h) - 8. * at(-h) + at(-2 * h)) / (12 * h) / phi;
            };
            cplx gx = fd(&Point::x, h), gy = fd(&Point::y, h);
            // stencil unresolved this close to the filled Julia set
            if (std::abs(gx - fd(&Point::x, h / 2)) + std::abs(gy - fd(&Point::y, h / 2)) > 1e-8 * std::abs(gx) + 1e-8) {
                ++skipped;
                continue;
            }
            INFO("z=" << z.x << "," << z.y << " side=" << int(side) << " depth=" << pg.first.depth
                 << " phi=" << phi << " fdx=" << gx << " adx=" << pg.second.dx);
            double s = std::abs(pg.second.dx) + std::abs(pg.second.dy) + 1;
            ++tested;
            CHECK(std::abs(gx - pg.second.dx) < 1e-6 * s);
            CHECK(std::abs(gy - pg.second.dy) < 1e-6 * s);
        }
        CHECK(tested >= 50);
        CHECK(skipped < tested / 10);
    }
}

TEST_CASE("truncation depth") {
    CHECK(terms_for_tolerance(2, 0.5, 1e-15) >= 50);
    Context ctx = make("x2-1", 0.01);
    Point z{7.0, 2.0};
    EscapeValue full = phi_plus(ctx, z);
    Context more = ctx;
    more.opt.fixed_terms = full.K + 5;
    EscapeValue extra = phi_plus(more, z);
    CHECK(std::abs(full.value - extra.value) <= std::max(full.tail_bound * std::abs(full.value), 1e-14 * std::abs(full.value)));
    CHECK_THROWS_AS(phi_plus(ctx, {0.0, 0.0}), Error);
}
