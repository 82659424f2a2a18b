#include "henon/escape.hpp"

#include <cmath>
#include <limits>

namespace henon {

Context::Context(HenonMap f, double r, double R) : map(std::move(f)), dp(domain_params(map.p, r, R)) {
    if (!(std::abs(map.a) < dp.R)) fail(ErrorKind::InvalidArgument, "|a| must be below R");
}

int terms_for_tolerance(int d, double r, double tol) {
    double v = -std::log(1 - r) / ((1 - 1.0 / d) * tol);
    return std::max(1, static_cast<int>(std::ceil(std::log(v) / std::log(double(d)))));
}

namespace {

constexpr double kStopRadius = 1e100;

// sup of |s_k| once the driving coordinate has modulus rho
double r_eff(const Polynomial& p, double rho, double lower_term) {
    int d = p.degree();
    double s = 0;
    for (int j = 0; j < d; ++j) s += std::abs(p.coefficients()[j]) * std::pow(rho, j - d);
    return s + lower_term / std::pow(rho, d - 1);
}

// telescoping sum for log phi at a base point already inside V+ (plus) or V- (minus)
void telescope(const Context& ctx, Dual X, Dual Y, Side side, double tol, Dual& S, int& K, double& tail) {
    const auto& p = ctx.map.p;
    const cplx a = ctx.map.a;
    const int d = p.degree();
    const int Kmax = ctx.opt.fixed_terms > 0 ? ctx.opt.fixed_terms : terms_for_tolerance(d, ctx.dp.r, tol);
    // a y u^d is bounded by |a| |x|^{1-d} on V+, and x v^d by |y|^{1-d} on V-
    const double lower = side == Side::plus ? std::abs(a) : 1.0;
    S = Dual(0.0);
    K = 0;
    tail = -std::log(1 - ctx.dp.r) * d / (d - 1.0);
    double dk = 1;
    for (int k = 1; k <= Kmax; ++k) {
        Dual lead = side == Side::plus ? X : Y;
        Dual other = side == Side::plus ? Y : X;
        Dual w = Dual(1.0) / lead;
        Dual wd = pow_int(w, d);
        Dual s = p.q_over_zd(w) - (side == Side::plus ? scale(other * wd, a) : other * wd);
        if (!(std::abs(s.v) < ctx.dp.r))
            fail(ErrorKind::NotInEscapeRegion, "telescoping factor violates |s_k| < r");
        dk *= d;
        Dual one_s = Dual(1.0) + s;
        S += scale(log(one_s), 1.0 / dk);
        K = k;
        Dual next = pow_int(lead, d) * one_s;
        if (side == Side::minus) next = scale(next, 1.0 / a);
        if (side == Side::plus) {
            Y = X;
            X = next;
        } else {
            X = Y;
            Y = next;
        }
        double rho = std::abs(next.v);
        double re = r_eff(p, rho, lower);
        tail = re < 1 ? -std::log1p(-re) / (dk * (d - 1)) : std::numeric_limits<double>::infinity();
        if (tail <= tol && ctx.opt.fixed_terms == 0) break;
        if (rho > kStopRadius) break;
    }
}

}  // namespace

LogPhi log_phi(const Context& ctx, const Point& z, Side side, double tol, double min_radius, int min_depth) {
    const auto& f = ctx.map;
    const int d = f.p.degree();
    LogPhi out;
    double radius = std::max(min_radius, ctx.dp.alpha);
    Dual X(z.x, 1.0, 0.0), Y(z.y, 0.0, 1.0);

    if (side == Side::minus && f.a == cplx(0)) {
        Dual v = Dual(f.p(z.y), 0.0, f.p.derivative(z.y)) - X;
        if (v.v == cplx(0)) fail(ErrorKind::OnDegenerateCurve, "p(y) = x with a = 0");
        out.L = scale(log(v), 1.0 / d);
        return out;
    }

    auto inside = [&](const Dual& x, const Dual& y) {
        double ax = std::abs(x.v), ay = std::abs(y.v);
        return side == Side::plus ? (ax > ay && ax > radius) : (ay > ax && ay > radius);
    };
    int k = 0;
    while (k < min_depth || !inside(X, Y)) {
        if (k >= ctx.opt.max_iter) fail(ErrorKind::NotInEscapeRegion, "orbit did not escape within the cap");
        if (side == Side::plus) {
            Dual acc = Dual(f.p.coefficients().back());
            for (int i = d - 1; i >= 0; --i) acc = acc * X + Dual(f.p.coefficients()[i]);
            Dual nx = acc - scale(Y, f.a);
            Y = X;
            X = nx;
        } else {
            Dual acc = Dual(f.p.coefficients().back());
            for (int i = d - 1; i >= 0; --i) acc = acc * Y + Dual(f.p.coefficients()[i]);
            Dual ny = scale(acc - X, 1.0 / f.a);
            X = Y;
            Y = ny;
        }
        ++k;
        if (!(std::abs(X.v) < ctx.opt.overflow && std::abs(Y.v) < ctx.opt.overflow))
            fail(ErrorKind::NotInEscapeRegion, "overflow before entering the escape domain");
    }
    Dual S;
    telescope(ctx, X, Y, side, tol, S, out.K, out.tail_bound);
    Dual base = log(side == Side::plus ? X : Y) + S;
    double dk = std::pow(double(d), k);
    out.L = scale(base, 1.0 / dk);
    out.base = (side == Side::plus ? X : Y).v;
    out.S = S.v;
    // e_k / d^k = (1 - d^-k) / (d - 1)
    if (side == Side::minus && k > 0) out.L = out.L + Dual(std::log(f.a) * ((1 - 1 / dk) / (d - 1)));
    out.tail_bound /= dk;
    out.depth = k;
    return out;
}

namespace {

EscapeValue to_value(const LogPhi& lp) {
    cplx v = lp.depth == 0 && lp.base != cplx(0) ? lp.base * std::exp(lp.S) : std::exp(lp.L.v);
    return EscapeValue{v, lp.L.v, lp.K, lp.tail_bound, lp.depth};
}

}  // namespace

EscapeValue phi_plus(const Context& ctx, const Point& z, double tol) {
    return to_value(log_phi(ctx, z, Side::plus, tol));
}

EscapeValue phi_minus(const Context& ctx, const Point& z, double tol) {
    return to_value(log_phi(ctx, z, Side::minus, tol));
}

std::pair<EscapeValue, Gradient> phi_with_gradient(const Context& ctx, const Point& z, Side side, double tol) {
    LogPhi lp = log_phi(ctx, z, side, tol);
    return {to_value(lp), Gradient{lp.L.dx, lp.L.dy}};
}

GreenValue green(const Context& ctx, const Point& z, Side side) {
    GreenValue g;
    g.side = side;
    g.cap = ctx.opt.max_iter;
    const int d = ctx.d();
    try {
        g.value = log_phi(ctx, z, side).L.v.real();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotInEscapeRegion && e.kind() != ErrorKind::OnDegenerateCurve) throw;
        g.interior = true;
        g.value = side == Side::plus ? 0.0 : std::log(std::abs(ctx.map.a)) / (d - 1);
    }
    return g;
}

}  // namespace henon
