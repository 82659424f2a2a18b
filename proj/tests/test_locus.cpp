#include <doctest.h>

#include <random>

#include "henon/locus.hpp"

using namespace henon;

namespace {

Context make(const char* p, cplx a) { return Context(HenonMap{Polynomial::parse(p), a}); }

// independent dense scan of |tangency| over real y
double scan_minimum(const Context& ctx, cplx x, double lo, double hi, double step) {
    double best = hi, best_val = 1e300;
    for (double y = lo; y <= hi; y += step) {
        double v = std::abs(tangency_value(ctx, {x, y}).value);
        if (v < best_val) {
            best_val = v;
            best = y;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("tangency on the degenerate map") {
    Context flat = make("x2", 0.0);
    for (cplx x : {cplx(5), cplx(0, 10)}) CHECK(std::abs(tangency_value(flat, {x, 0.0}).value) < 1e-14);
    CHECK(std::abs(tangency_value(flat, {5.0, 1.0}).value) > 1e-3);
}

TEST_CASE("tangency zero at x = 20 against a scan") {
    Context ctx = make("x2-1", 0.01);
    double oracle = scan_minimum(ctx, 20.0, -0.5, 0.5, 1e-4);
    NewtonResult r = solve_locus_y(ctx, 20.0, 0.0);
    CHECK(std::abs(r.y) < 0.1);
    CHECK(std::abs(r.y - oracle) < 1.5e-4);
    CHECK(r.residual < 1e-10);
    // no second zero in the window
    double far = scan_minimum(ctx, 20.0, std::abs(r.y) + 0.01, 0.1, 1e-4);
    CHECK(std::abs(tangency_value(ctx, {20.0, far}).value) > 1e-4);
}

TEST_CASE("tangent at infinity") {
    Context ctx = make("x2-1", 0.01);
    TangentAtInfinity t = tangent_at_infinity(ctx, 0.0);
    // first order balance: y ~ (a - a^2)/4 u for x^2 - 1
    CHECK(std::abs(t.slope - (0.01 - 1e-4) / 4) < 1e-5);
    CHECK(std::abs(t.C + 2.0 * t.slope) < 1e-14);
    CHECK_THROWS_AS(tangent_at_infinity(ctx, 0.5), Error);

    Context flat = make("x2", 0.0);
    CHECK(std::abs(tangent_at_infinity(flat, 0.0).slope) < 1e-14);
}

TEST_CASE("primary component trace") {
    Context ctx = make("x2-1", 0.01);
    CurveTrace tr = trace_primary_component(ctx, 0.0, 10, 1e4, 0.05);
    REQUIRE(tr.samples.size() > 20);
    CHECK(tr.asymptote_ok);
    double prev = 1e9;
    for (const auto& s : tr.samples) {
        CHECK(std::abs(s.z.y) <= 0.05);
        CHECK(std::abs(s.z.y) <= prev * (1 + 1e-9));
        prev = std::abs(s.z.y);
        CHECK(std::abs(s.z.y) < tr.tube_radius);
    }
    // stations checked against the scan oracle
    for (size_t k = 0; k < tr.samples.size(); k += tr.samples.size() / 5) {
        const auto& s = tr.samples[k];
        double oracle = scan_minimum(ctx, s.z.x, s.z.y.real() - 2e-3, s.z.y.real() + 2e-3, 1e-6);
        CHECK(std::abs(s.z.y - oracle) < 2e-6);
    }
    // image of the curve stays on the locus
    int checked = 0;
    for (const auto& s : tr.samples) {
        if (std::abs(s.z.x) > 300) break;
        Point w = apply(ctx.map, s.z);
        CHECK(locus_distance(ctx, w) < 1e-8 * std::max(1.0, std::abs(w.y)));
        ++checked;
    }
    CHECK(checked > 5);

    LocusOptions tight;
    tight.tube_radius = 1e-6;
    CHECK_THROWS_AS(trace_primary_component(ctx, 0.0, 10, 100, 0.05, 0, tight), Error);
    CHECK(default_tube_radius(Polynomial::parse("x2-1")) == 0.25);
    CHECK(default_tube_radius(Polynomial::parse("x^3-3x")) == doctest::Approx(1.0));
}

TEST_CASE("trivial trace") {
    Context ctx = make("x2", 0.0);
    CurveTrace tr = trace_primary_component(ctx, 0.0, 5, 1e4, 0.1);
    CHECK(tr.samples.size() > 50);
    for (const auto& s : tr.samples) CHECK(s.z.y == cplx(0));
}

TEST_CASE("contact order") {
    Context ctx = make("x2-1", 0.01);
    CurveTrace tr = trace_primary_component(ctx, 0.0, 10, 1e3, 0.2);
    for (size_t k = 0; k < tr.samples.size(); k += 3) CHECK(contact_order(ctx, tr.samples[k].z) == 2);
    CHECK(contact_order(ctx, {20.0, 0.3}) == 1);
    Context flat = make("x2", 0.0);
    CHECK(contact_order(flat, {5.0, 0.0}) == 2);
    CHECK(contact_order(flat, {cplx(0, 7), 0.0}) == 2);
    CHECK(contact_order(flat, {5.0, 0.4}) == 1);
}

TEST_CASE("biholomorphism loops") {
    Context ctx = make("x2-1", 0.01);
    auto reps = verify_biholomorphism(ctx, 0.0, {2, 8, 32});
    REQUIRE(reps.size() == 3);
    for (const auto& r : reps) {
        CHECK(r.winding == 1);
        CHECK(r.closure_error < 1e-8);
        CHECK(r.min_pair_distance > 0);
    }
}

TEST_CASE("classification of locus points") {
    Context ctx = make("x2-1", 0.01);
    CurveTrace tr = trace_primary_component(ctx, 0.0, 10, 100, 0.2);
    Point w = tr.samples[tr.samples.size() / 2].z;
    Classification c0 = classify_component(ctx, w, 8);
    CHECK(c0.k == 0);
    CHECK(std::abs(c0.c) < 1e-12);
    Point z = apply_inverse(ctx.map, w);
    Classification c1 = classify_component(ctx, z, 8);
    CHECK(c1.k == 1);
    CHECK(std::abs(c1.c) < 1e-12);

    // locus points found without the tracer: coarse complex-y scan then Newton
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(4, 40);
    int found = 0;
    for (int i = 0; i < 200 && found < 50; ++i) {
        cplx x = std::polar(rad(rng), ang(rng));
        cplx best = 0;
        double best_val = 1e300;
        for (int a = -10; a <= 10; ++a)
            for (int b = -10; b <= 10; ++b) {
                cplx y(0.15 * a, 0.15 * b);
                double v;
                try {
                    v = std::abs(tangency_value(ctx, {x, y}).value);
                } catch (const Error&) {
                    continue;
                }
                if (v < best_val) best_val = v, best = y;
            }
        NewtonResult r;
        try {
            r = solve_locus_y(ctx, x, best);
        } catch (const Error&) {
            continue;
        }
        if (r.residual > 1e-9) continue;
        ++found;
        Classification c = classify_component(ctx, {x, r.y}, 8);
        CHECK(std::abs(c.k) <= 8);
        CHECK(std::abs(ctx.map.p.derivative(c.c)) < 1e-12);
    }
    CHECK(found == 50);
}
