#include "henon/manifolds.hpp"

#include <cmath>

#include "henon/dual.hpp"
#include "henon/parallel.hpp"

namespace henon {

cplx p_preimage(const Polynomial& p, cplx x, cplx seed) {
    cplx u = seed;
    for (int it = 0; it < 80; ++it) {
        cplx dp = p.derivative(u);
        if (dp == cplx(0)) break;
        cplx du = (p(u) - x) / dp;
        u -= du;
        if (std::abs(du) <= 1e-16 * std::max(1.0, std::abs(u))) return u;
    }
    if (std::abs(p(u) - x) <= 1e-12 * std::max(1.0, std::abs(x))) return u;
    fail(ErrorKind::NewtonDivergence, "Newton for p^{-1}(x) did not converge");
}

cplx v_coord(const HenonMap& f, const Point& z) { return f.p(z.y) - z.x; }

UVPoint uv_coords(const HenonMap& f, const Point& z, double beta) {
    cplx u = p_preimage(f.p, z.x, z.y);
    if (!(std::abs(u - z.y) < beta / 2)) fail(ErrorKind::OutsideVPrime, "no preimage of x within beta/2 of y");
    return {u, v_coord(f, z)};
}

Point uv_inverse(const HenonMap& f, const UVPoint& uv) {
    cplx x = f.p(uv.u);
    return {x, p_preimage(f.p, x + uv.v, uv.u)};
}

namespace {

// y-coordinate of the point with coordinates (u, v)
cplx y_of(const Polynomial& p, cplx u, cplx v) { return p_preimage(p, p(u) + v, u); }

// solves u(f(u, v)) = target for u near seed: p(p(u)) - a Y(u, v) = p(target)
cplx pull_u(const HenonMap& f, cplx target, cplx v, cplx seed) {
    const auto& p = f.p;
    cplx goal = p(target);
    cplx u = seed;
    for (int it = 0; it < 60; ++it) {
        cplx x = p(u);
        cplx y = y_of(p, u, v);
        cplx G = p(x) - f.a * y - goal;
        cplx dG = p.derivative(x) * p.derivative(u) - f.a * p.derivative(u) / p.derivative(y);
        cplx step = G / dG;
        u -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(u))) return u;
    }
    fail(ErrorKind::GraphTransformDiverged, "pullback Newton did not converge");
}

// alternating sweeps on an orbit segment w_0..w_n in (u, v) coordinates:
// v_0 fixed, u_n fixed, v_{k+1} = a Y(u_k, v_k), u_k from u_{k+1} by pull_u
void shoot(const HenonMap& f, std::vector<cplx>& u, std::vector<cplx>& v) {
    const size_t n = u.size() - 1;
    for (int sweep = 0; sweep < 200; ++sweep) {
        for (size_t k = 0; k < n; ++k) v[k + 1] = f.a * y_of(f.p, u[k], v[k]);
        double change = 0;
        for (size_t k = n; k-- > 0;) {
            cplx nu = pull_u(f, u[k + 1], v[k], u[k]);
            change = std::max(change, std::abs(nu - u[k]));
            u[k] = nu;
        }
        if (change <= 1e-15 * std::max(1.0, std::abs(u[0]))) return;
    }
    fail(ErrorKind::GraphTransformDiverged, "graph transform sweeps did not settle");
}

}  // namespace

Point stable_point(const HenonMap& f, cplx z, cplx v, int n, cplx u_seed) {
    std::vector<cplx> u(n + 1), vv(n + 1, 0.0);
    u[0] = u_seed;
    cplx orbit = z;
    for (int k = 1; k <= n; ++k) u[k] = orbit = f.p(orbit);
    vv[0] = v;
    if (n > 0) shoot(f, u, vv);
    else u[0] = z;
    return {f.p(u[0]), y_of(f.p, u[0], v)};
}

Point unstable_point(const HenonMap& f, const std::vector<cplx>& history, cplx u_target, int n) {
    if (history.empty()) fail(ErrorKind::InvalidArgument, "empty history");
    n = std::min<int>(n, int(history.size()) - 1);
    std::vector<cplx> u(n + 1), vv(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) u[k] = history[n - k];
    u[n] = u_target;
    if (n > 0) shoot(f, u, vv);
    return {f.p(u[n]), y_of(f.p, u[n], vv[n])};
}

namespace {

std::vector<cplx> disk_nodes(double radius, int mesh) {
    std::vector<cplx> out;
    for (int j = 0; j < mesh; ++j)
        for (int i = 0; i < mesh; ++i) {
            double s = mesh > 1 ? -1 + 2.0 * i / (mesh - 1) : 0;
            double t = mesh > 1 ? -1 + 2.0 * j / (mesh - 1) : 0;
            if (s * s + t * t <= 1 + 1e-12) out.emplace_back(radius * s, radius * t);
        }
    return out;
}

}  // namespace

LocalManifold local_stable_graph(const HenonMap& f, cplx z, const ManifoldOptions& opt) {
    LocalManifold m;
    m.side = ManifoldSide::stable;
    m.history = {z};
    m.opt = opt;
    m.params = disk_nodes(opt.r * opt.delta, opt.mesh);
    m.values.resize(m.params.size());
    std::vector<double> change(m.params.size());
    parallel_for(m.params.size(), [&](size_t i) {
        cplx v = m.params[i];
        Point w = stable_point(f, z, v, opt.iterations, z);
        Point w2 = stable_point(f, z, v, opt.iterations + 1, z);
        m.values[i] = p_preimage(f.p, w.x, w.y);
        change[i] = std::abs(p_preimage(f.p, w2.x, w2.y) - m.values[i]);
        if (!(std::abs(m.values[i] - z) < opt.radius))
            fail(ErrorKind::GraphTransformDiverged, "stable graph left U_z");
    });
    for (double c : change) m.refinement_change = std::max(m.refinement_change, c);
    return m;
}

LocalManifold local_unstable_graph(const HenonMap& f, const std::vector<cplx>& history, const ManifoldOptions& opt) {
    if (history.empty()) fail(ErrorKind::InvalidArgument, "empty history");
    for (size_t k = 1; k < history.size(); ++k)
        if (std::abs(f.p(history[k]) - history[k - 1]) > 1e-9 * std::max(1.0, std::abs(history[k - 1])))
            fail(ErrorKind::InvalidArgument, "history is not a backward orbit of p");
    LocalManifold m;
    m.side = ManifoldSide::unstable;
    m.history = history;
    m.opt = opt;
    m.params = disk_nodes(opt.radius, opt.mesh);
    for (auto& u : m.params) u += history[0];
    m.values.resize(m.params.size());
    std::vector<double> change(m.params.size());
    int n = std::min<int>(opt.iterations, int(history.size()) - 1);
    parallel_for(m.params.size(), [&](size_t i) {
        Point w = unstable_point(f, history, m.params[i], n);
        m.values[i] = v_coord(f, w);
        if (n >= 1) change[i] = std::abs(v_coord(f, unstable_point(f, history, m.params[i], n - 1)) - m.values[i]);
    });
    for (double c : change) m.refinement_change = std::max(m.refinement_change, c);
    return m;
}

namespace {

struct DiskFunction {
    const Context& ctx;
    cplx z;
    int n;
    double min_green;

    // log phi- on the stable disk at parameter v
    LogPhi F(cplx v, cplx& seed) const {
        Point w = stable_point(ctx.map, z, v, n, seed);
        seed = p_preimage(ctx.map.p, w.x, w.y);
        LogPhi lp = log_phi(ctx, w, Side::minus);
        if (!(lp.L.v.real() > min_green)) fail(ErrorKind::GradientVanishesOnLoop, "loop meets K-");
        return lp;
    }

    cplx dF(cplx v, double h, cplx& seed) const {
        const int d = ctx.d();
        LogPhi a = F(v + h, seed), b = F(v - h, seed);
        int k = std::max(a.depth, b.depth);
        double period = 2 * M_PI / std::pow(double(d), k);
        cplx diff = a.L.v - b.L.v;
        diff -= cplx(0, period * std::round(diff.imag() / period));
        return diff / (2 * h);
    }
};

// winding of conj(G) along a closed parameterized loop, refining until increments are below pi/2
int winding_of_gradient(const std::function<cplx(double, cplx&)>& G, cplx seed0) {
    for (int M = 256; M <= (1 << 16); M *= 2) {
        std::vector<cplx> vals(M);
        cplx seed = seed0;
        for (int j = 0; j < M; ++j) vals[j] = std::conj(G(2 * M_PI * j / M, seed));
        double total = 0, worst = 0;
        for (int j = 0; j < M; ++j) {
            cplx a = vals[j], b = vals[(j + 1) % M];
            if (std::abs(a) < 1e-300 || std::abs(b) < 1e-300)
                fail(ErrorKind::GradientVanishesOnLoop, "gradient vanishes on the loop");
            double inc = std::arg(b / a);
            total += inc;
            worst = std::max(worst, std::abs(inc));
        }
        if (worst < M_PI / 2) return static_cast<int>(std::lround(total / (2 * M_PI)));
    }
    fail(ErrorKind::GradientVanishesOnLoop, "winding refinement did not settle");
}

}  // namespace

int gradient_index(const Context& ctx, const LocalManifold& m, double loop_radius) {
    if (m.side != ManifoldSide::stable) fail(ErrorKind::InvalidArgument, "gradient index needs a stable disk");
    const int d = ctx.d();
    double min_green = std::abs(ctx.map.a) > 0 ? std::log(std::abs(ctx.map.a)) / (d - 1) : -INFINITY;
    DiskFunction df{ctx, m.base(), m.opt.iterations, min_green};
    double rad = loop_radius * m.opt.delta;
    double h = 1e-4 * rad;
    return winding_of_gradient([&](double th, cplx& seed) { return df.dF(std::polar(rad, th), h, seed); }, m.base());
}

HolesReport gradient_index_with_holes(const Context& ctx, cplx z, const ManifoldOptions& opt) {
    const auto& f = ctx.map;
    const int d = ctx.d();
    HolesReport rep;
    double min_green = std::abs(f.a) > 0 ? std::log(std::abs(f.a)) / (d - 1) : -INFINITY;
    DiskFunction df{ctx, z, opt.iterations, min_green};
    const double rad = opt.r * opt.delta;

    LocalManifold outer = local_stable_graph(f, z, opt);
    rep.outer = gradient_index(ctx, outer, opt.r);

    std::vector<cplx> pc = f.p.coefficients();
    pc[0] -= z;
    std::vector<double> hole_radius;
    for (cplx w : poly_roots(pc)) {
        w = p_preimage(f.p, z, w);
        // the hole is the image of the stable disk of w, read in the v-parameter of the disk of z
        auto hole_param = [&](double th, cplx& seed) {
            Point q = stable_point(f, w, std::polar(rad, th), opt.iterations, seed);
            seed = p_preimage(f.p, q.x, q.y);
            return v_coord(f, apply(f, q));
        };
        cplx s = w;
        cplx center = 0;
        double hr = 0;
        const int probe = 16;
        std::vector<cplx> ring(probe);
        for (int j = 0; j < probe; ++j) ring[j] = hole_param(2 * M_PI * j / probe, s);
        for (auto q : ring) center += q / double(probe);
        for (auto q : ring) hr = std::max(hr, std::abs(q - center));
        rep.hole_centers.push_back(center);
        hole_radius.push_back(hr);
        double h = 1e-3 * hr;
        cplx zseed = z;
        cplx wseed = w;
        int idx = winding_of_gradient(
            [&](double th, cplx& seed) {
                cplx vp = hole_param(th, wseed);
                return df.dF(vp, h, seed);
            },
            zseed);
        rep.holes.push_back(idx);
    }
    rep.region = rep.outer;
    for (int hI : rep.holes) rep.region -= hI;

    // zeros of dF inside the region, by secant iteration from a polar seed grid
    auto outside_holes = [&](cplx v, double margin) {
        for (size_t i = 0; i < rep.hole_centers.size(); ++i)
            if (std::abs(v - rep.hole_centers[i]) < margin * hole_radius[i]) return false;
        return std::abs(v) < rad;
    };
    const double h = 1e-5 * rad;
    for (int ir = 1; ir <= 8; ++ir)
        for (int it = 0; it < 16; ++it) {
            cplx v0 = std::polar(rad * ir / 9.0, 2 * M_PI * (it + 0.5 * (ir % 2)) / 16);
            if (!outside_holes(v0, 2)) continue;
            try {
                cplx seed = z;
                cplx v1 = v0 * 1.001;
                cplx g0 = df.dF(v0, h, seed), g1 = df.dF(v1, h, seed);
                bool ok = false;
                for (int k = 0; k < 60; ++k) {
                    if (g1 == g0) break;
                    cplx v2 = v1 - g1 * (v1 - v0) / (g1 - g0);
                    v0 = v1;
                    g0 = g1;
                    v1 = v2;
                    if (!outside_holes(v1, 1)) break;
                    g1 = df.dF(v1, h, seed);
                    if (std::abs(v1 - v0) < 1e-12 * rad) {
                        ok = true;
                        break;
                    }
                }
                if (!ok || !outside_holes(v1, 1)) continue;
                bool dup = false;
                for (auto q : rep.interior_zeros)
                    if (std::abs(q - v1) < 1e-8 * rad) dup = true;
                if (!dup) rep.interior_zeros.push_back(v1);
            } catch (const Error&) {
            }
        }
    return rep;
}

}  // namespace henon
