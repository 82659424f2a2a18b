#pragma once

#include <utility>

#include "henon/core.hpp"
#include "henon/dual.hpp"

namespace henon {

enum class Side { plus, minus };

struct EscapeOptions {
    int max_iter = 200;        // escape detection cap
    double overflow = kOverflowCap;
    int fixed_terms = 0;       // > 0 forces the number of product factors
};

// a Henon map together with its escape domains
struct Context {
    HenonMap map;
    DomainParams dp;
    EscapeOptions opt;

    Context(HenonMap f, double r = 0.5, double R = 0.125);
    Context(HenonMap f, DomainParams params) : map(std::move(f)), dp(params) {}
    int d() const { return map.p.degree(); }
    double B() const { return dp.B(d()); }
};

struct EscapeValue {
    cplx value;
    cplx log_value;     // branch fixed by the escape depth, see README
    int K = 0;          // product factors used
    double tail_bound = 0;
    int depth = 0;      // iterates needed to reach V+ (forward) or V- (backward)
};

struct Gradient {
    cplx dx, dy;
};

struct GreenValue {
    double value = 0;
    Side side = Side::plus;
    bool interior = false;
    int cap = 0;
};

EscapeValue phi_plus(const Context& ctx, const Point& z, double tol = 1e-15);
EscapeValue phi_minus(const Context& ctx, const Point& z, double tol = 1e-15);
std::pair<EscapeValue, Gradient> phi_with_gradient(const Context& ctx, const Point& z, Side side,
                                                   double tol = 1e-15);
GreenValue green(const Context& ctx, const Point& z, Side side);

// log phi as a Dual seeded at z; min_radius pushes the base point further out than alpha
struct LogPhi {
    Dual L;
    int K = 0;
    double tail_bound = 0;
    int depth = 0;
    cplx base = 0, S = 0;  // base coordinate and telescoping sum, kept for depth 0
};
LogPhi log_phi(const Context& ctx, const Point& z, Side side, double tol = 1e-15, double min_radius = 0,
               int min_depth = 0);

// smallest truncation from the uniform geometric bound
int terms_for_tolerance(int d, double r, double tol);

}  // namespace henon
