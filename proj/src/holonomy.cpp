#include "henon/holonomy.hpp"

#include <cmath>

#include "henon/parallel.hpp"

namespace henon {

cplx eta_of(const HenonMap& f) {
    if (f.a == cplx(0)) fail(ErrorKind::DegenerateJacobian, "eta requires a != 0");
    return std::exp(-std::log(f.a) / double(f.p.degree() - 1));
}

PsiPair psi_pair(const Context& ctx, const Point& z, double tol) {
    PsiPair out;
    out.eta = eta_of(ctx.map);
    out.psi_plus = phi_plus(ctx, z, tol).value;
    out.psi_minus = out.eta * phi_minus(ctx, apply_inverse(ctx.map, z), tol).value;
    return out;
}

std::optional<RootOfUnityWitness> root_of_unity_witness(cplx ratio, int d, double tol, int cap) {
    double theta = std::arg(ratio);
    double dn = 1;
    for (int n = 0; n <= cap; ++n, dn *= d) {
        double j = std::round(theta * dn / (2 * M_PI));
        cplx omega = std::polar(1.0, 2 * M_PI * j / dn);
        if (j == 0) omega = 1;
        if (std::abs(ratio - omega) < tol) return RootOfUnityWitness{omega, n};
    }
    return std::nullopt;
}

namespace {

std::optional<RootOfUnityWitness> same_leaf(const Context& ctx, Point z1, Point z2, Side side, double tol,
                                            int cap) {
    if (side == Side::minus && ctx.map.a != cplx(0)) {
        z1 = apply_inverse(ctx.map, z1);
        z2 = apply_inverse(ctx.map, z2);
    }
    LogPhi l1 = log_phi(ctx, z1, side);
    LogPhi l2 = log_phi(ctx, z2, side);
    int k = std::max(l1.depth, l2.depth);
    if (l1.depth < k) l1 = log_phi(ctx, z1, side, 1e-15, 0, k);
    if (l2.depth < k) l2 = log_phi(ctx, z2, side, 1e-15, 0, k);
    return root_of_unity_witness(std::exp(l1.L.v - l2.L.v), ctx.d(), tol, cap);
}

}  // namespace

std::optional<RootOfUnityWitness> same_leaf_plus(const Context& ctx, const Point& z1, const Point& z2, double tol,
                                                 int cap) {
    return same_leaf(ctx, z1, z2, Side::plus, tol, cap);
}

std::optional<RootOfUnityWitness> same_leaf_minus(const Context& ctx, const Point& z1, const Point& z2,
                                                  double tol, int cap) {
    return same_leaf(ctx, z1, z2, Side::minus, tol, cap);
}

std::vector<Point> monodromy_orbit(const Context& ctx, cplx c, const Point& z, int n) {
    const int d = ctx.d();
    if (n < 0) fail(ErrorKind::InvalidArgument, "n must be nonnegative");
    if (std::abs(phi_plus(ctx, z).value) <= 1) fail(ErrorKind::InvalidArgument, "|psi+(z)| must exceed 1");
    double tube = default_tube_radius(ctx.map.p);
    if (!(std::abs(z.y - c) < tube)) fail(ErrorKind::LeftTube, "start point is not on the primary component");
    size_t count = 1;
    for (int i = 0; i < n; ++i) count *= d;
    std::vector<Point> orbit(count, z);
    parallel_for(count, [&](size_t j) {
        if (j == 0) return;
        double span = 2 * M_PI * double(j) / double(count);
        orbit[j] = follow_psi_arc(ctx, z, span, std::max(32, int(256 * span / (2 * M_PI))) ).back();
    });
    for (auto& w : orbit)
        if (!(std::abs(tangency_value(ctx, w).value) < 1e-9))
            fail(ErrorKind::ContinuationFailure, "orbit point failed locus certification");
    return orbit;
}

}  // namespace henon
