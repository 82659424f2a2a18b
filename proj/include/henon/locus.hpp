#pragma once

#include <optional>
#include <string>
#include <vector>

#include "henon/escape.hpp"

namespace henon {

struct TangencyValue {
    cplx value;       // normalized by scale
    cplx raw;         // dLp/dx dLm/dy - dLp/dy dLm/dx
    int n = 0, m = 0; // forward / backward depths
    double scale = 1;
};

struct LocusOptions {
    double tube_radius = 0;    // 0: derived from the critical points
    double omega_radius = 0.25;
    double newton_tol = 1e-10;
    int newton_max = 60;
};

TangencyValue tangency_value(const Context& ctx, const Point& z, double tol = 1e-15, int extra_depth = 0);

struct NewtonResult {
    cplx y;
    double residual = 0;  // |normalized tangency|
    int iterations = 0;
};

// Newton in y at fixed x on the raw tangency
NewtonResult solve_locus_y(const Context& ctx, cplx x, cplx y_seed, const LocusOptions& opt = {});

struct TraceSample {
    Point z;
    TangencyValue t;
    double residual = 0;
};

struct CurveTrace {
    cplx c;
    int k = 0;
    std::string chart = "standard";
    double step = 0;
    double tube_radius = 0;
    std::vector<TraceSample> samples;
    bool asymptote_ok = false;
};

double default_tube_radius(const Polynomial& p);

CurveTrace trace_primary_component(const Context& ctx, cplx c, double x_min, double x_max, double step,
                                   double theta = 0, const LocusOptions& opt = {});

struct TangentAtInfinity {
    cplx c;
    cplx slope;  // dy/du at u = 0
    cplx C;      // p''(c) dy + C du = 0
};

TangentAtInfinity tangent_at_infinity(const Context& ctx, cplx c, const LocusOptions& opt = {});

int contact_order(const Context& ctx, const Point& z, double tol = 1e-6);

// |w / dw/dy|: distance in y to the zero set, robust where the normalized value is ill-conditioned
double locus_distance(const Context& ctx, const Point& z);

// solves {tangency = 0, log psi+ = target} near seed with 2-D Newton
std::optional<Point> solve_on_locus_psi(const Context& ctx, const Point& seed, cplx log_target, double tol = 1e-13);

// continues a point of the locus along log psi+ = start + i*t for t in [0, span]
std::vector<Point> follow_psi_arc(const Context& ctx, const Point& start, double span, int steps);

struct LoopReport {
    double radius = 0;
    int winding = 0;
    double winding_raw = 0;
    double closure_error = 0;
    double min_pair_distance = 0;
    double max_residual = 0;
    size_t samples = 0;
};

std::vector<LoopReport> verify_biholomorphism(const Context& ctx, cplx c, const std::vector<double>& radii,
                                              int steps = 512);

struct Classification {
    cplx c;
    int k = 0;
};

Classification classify_component(const Context& ctx, const Point& z, int max_k, const LocusOptions& opt = {});

}  // namespace henon
