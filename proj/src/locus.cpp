#include "henon/locus.hpp"

#include <algorithm>
#include <cmath>

namespace henon {

namespace {

double norm2(cplx a, cplx b) { return std::sqrt(std::norm(a) + std::norm(b)); }

cplx reduce_branch(cplx diff, int depth, int d) {
    double period = 2 * M_PI / std::pow(double(d), depth);
    return diff - cplx(0, period * std::round(diff.imag() / period));
}

cplx raw_tangency(const Context& ctx, const Point& z) { return tangency_value(ctx, z).raw; }

std::optional<Point> solve_on_locus_psi_raw(const Context& ctx, const Point& seed, cplx log_target, double tol);

}  // namespace

TangencyValue tangency_value(const Context& ctx, const Point& z, double tol, int extra_depth) {
    double r2 = 2 * ctx.dp.alpha;
    LogPhi p = log_phi(ctx, z, Side::plus, tol, r2);
    if (extra_depth > 0) p = log_phi(ctx, z, Side::plus, tol, r2, p.depth + extra_depth);
    LogPhi m = log_phi(ctx, z, Side::minus, tol, r2);
    if (extra_depth > 0 && ctx.map.a != cplx(0)) m = log_phi(ctx, z, Side::minus, tol, r2, m.depth + extra_depth);
    TangencyValue t;
    t.raw = p.L.dx * m.L.dy - p.L.dy * m.L.dx;
    t.scale = norm2(p.L.dx, p.L.dy) * norm2(m.L.dx, m.L.dy);
    t.value = t.scale > 0 ? t.raw / t.scale : t.raw;
    t.n = p.depth;
    t.m = m.depth;
    return t;
}

NewtonResult solve_locus_y(const Context& ctx, cplx x, cplx y_seed, const LocusOptions& opt) {
    NewtonResult r{y_seed, 0, 0};
    cplx y = y_seed;
    for (int it = 0; it < opt.newton_max; ++it) {
        r.iterations = it + 1;
        double h = 1e-6 * std::max(1.0, std::abs(y));
        cplx w0 = raw_tangency(ctx, {x, y});
        cplx dw = (raw_tangency(ctx, {x, y + h}) - raw_tangency(ctx, {x, y - h})) / (2 * h);
        if (dw == cplx(0)) break;
        cplx dy = w0 / dw;
        y -= dy;
        if (!std::isfinite(std::abs(y))) fail(ErrorKind::NewtonDivergence, "Newton in y diverged");
        if (std::abs(dy) < 1e-15 * std::max(1.0, std::abs(y)) || w0 == cplx(0)) break;
    }
    r.y = y;
    r.residual = std::abs(tangency_value(ctx, {x, y}).value);
    if (!(r.residual < opt.newton_tol)) fail(ErrorKind::NewtonDivergence, "Newton in y did not converge");
    return r;
}

double default_tube_radius(const Polynomial& p) {
    auto cps = p.critical_points();
    double best = 0;
    for (size_t i = 0; i < cps.size(); ++i)
        for (size_t j = i + 1; j < cps.size(); ++j) {
            double dist = std::abs(cps[i] - cps[j]);
            if (dist > 1e-9 && (best == 0 || dist < best)) best = dist;
        }
    return std::max(0.25, best / 2);
}

CurveTrace trace_primary_component(const Context& ctx, cplx c, double x_min, double x_max, double step,
                                   double theta, const LocusOptions& opt) {
    if (!(x_min > 0 && x_max > x_min && step > 0)) fail(ErrorKind::InvalidArgument, "bad trace range");
    CurveTrace tr;
    tr.c = c;
    tr.step = step;
    tr.tube_radius = opt.tube_radius > 0 ? opt.tube_radius : default_tube_radius(ctx.map.p);
    const cplx dir = std::polar(1.0, theta);

    auto accept = [&](double s, cplx y, double res) {
        Point z{std::exp(s) * dir, y};
        if (!(std::abs(y - c) < tr.tube_radius))
            fail(ErrorKind::LeftTube, "trace left the tube at x=" + std::to_string(std::abs(z.x)));
        tr.samples.push_back({z, tangency_value(ctx, z), res});
    };

    double s0 = std::log(x_min), s1 = std::log(x_max);
    NewtonResult first = solve_locus_y(ctx, x_min * dir, c, opt);
    accept(s0, first.y, first.residual);
    std::vector<double> ss{s0};
    double h = step;
    double s = s0;
    while (s < s1 - 1e-14) {
        double hs = std::min(h, s1 - s);
        cplx pred = tr.samples.back().z.y;
        if (ss.size() >= 2) {
            size_t n = ss.size();
            double hp = ss[n - 1] - ss[n - 2];
            pred += (tr.samples[n - 1].z.y - tr.samples[n - 2].z.y) * (hs / hp);
        }
        try {
            NewtonResult nr = solve_locus_y(ctx, std::exp(s + hs) * dir, pred, opt);
            if (std::abs(nr.y - pred) > 0.25 * tr.tube_radius) fail(ErrorKind::NewtonDivergence, "corrector jumped");
            s += hs;
            accept(s, nr.y, nr.residual);
            ss.push_back(s);
            h = std::min(step, 2 * hs);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::LeftTube) throw;
            h = hs / 2;
            if (h < 1e-8) fail(ErrorKind::ContinuationFailure, "step underflow during trace");
        }
    }
    // asymptote: |y - c| nonincreasing over the last decade
    tr.asymptote_ok = true;
    double prev = -1;
    for (auto& smp : tr.samples) {
        if (std::abs(smp.z.x) < x_max / 10 * (1 - 1e-12)) continue;
        double dev = std::abs(smp.z.y - c);
        if (prev >= 0 && dev > prev * (1 + 1e-9) + 1e-15) tr.asymptote_ok = false;
        prev = dev;
    }
    return tr;
}

TangentAtInfinity tangent_at_infinity(const Context& ctx, cplx c, const LocusOptions& opt) {
    const auto& p = ctx.map.p;
    if (std::abs(p.derivative(c)) > 1e-12) fail(ErrorKind::NotSimpleCritical, "c is not a critical point");
    if (std::abs(p.second_derivative(c)) < 1e-8) fail(ErrorKind::NotSimpleCritical, "p''(c) vanishes");
    const int levels = 5;
    const double x0 = 200;
    std::vector<cplx> T(levels);
    cplx y = c;
    for (int k = 0; k < levels; ++k) {
        double x = x0 * std::pow(2.0, k);
        y = solve_locus_y(ctx, x, y, opt).y;
        T[k] = (y - c) * x;
    }
    // (y - c)/u = Y1 + Y2 u + ..., u halves between levels
    for (int j = 1; j < levels; ++j)
        for (int k = 0; k + j < levels; ++k) {
            double f = std::pow(2.0, j);
            T[k] = (f * T[k + 1] - T[k]) / (f - 1);
        }
    TangentAtInfinity out;
    out.c = c;
    out.slope = T[0];
    out.C = -out.slope * p.second_derivative(c);
    return out;
}

int contact_order(const Context& ctx, const Point& z, double tol) {
    const int d = ctx.d();
    const double r2 = 2 * ctx.dp.alpha;
    LogPhi p0 = log_phi(ctx, z, Side::plus, 1e-15, r2);
    LogPhi m0 = log_phi(ctx, z, Side::minus, 1e-15, r2);
    const int n = p0.depth, m = m0.depth;
    if (std::abs(p0.L.dx) == 0) fail(ErrorKind::LeafParameterizationFailed, "plus leaf is not a graph over y");
    const int M = 64;
    const double rho = 0.02 * std::max(1.0, std::abs(z.y));
    std::vector<cplx> g(M);
    cplx X = z.x;
    for (int j = 0; j < M; ++j) {
        cplx t = std::polar(rho, 2 * M_PI * j / M);
        cplx y = z.y + t;
        if (j == 0) X = z.x - p0.L.dy / p0.L.dx * t;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            LogPhi lp = log_phi(ctx, {X, y}, Side::plus, 1e-15, r2, n);
            cplx diff = reduce_branch(lp.L.v - p0.L.v, lp.depth, d);
            cplx dx = diff / lp.L.dx;
            X -= dx;
            if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(X)) ||
                std::abs(diff) < 8e-16 * std::max(1.0, std::abs(lp.L.v))) {
                ok = true;
                break;
            }
        }
        if (!ok) fail(ErrorKind::LeafParameterizationFailed, "Newton along the plus leaf failed");
        LogPhi lm = log_phi(ctx, {X, y}, Side::minus, 1e-15, r2, m);
        // at a = 0 the minus side is log(p(y) - x) / d, ambiguous by 2 pi i / d
        g[j] = reduce_branch(lm.L.v - m0.L.v, ctx.map.a == cplx(0) ? 1 : lm.depth, d);
    }
    // Taylor coefficients by the discrete Cauchy integral, scaled by rho^k
    std::vector<double> mag(M / 2);
    double peak = 0;
    for (int k = 1; k < M / 2; ++k) {
        cplx s = 0;
        for (int j = 0; j < M; ++j) s += g[j] * std::polar(1.0, -2 * M_PI * k * j / M);
        mag[k] = std::abs(s) / M;
        peak = std::max(peak, mag[k]);
    }
    for (int k = 1; k < M / 2; ++k)
        if (mag[k] > tol * peak) return k;
    fail(ErrorKind::LeafParameterizationFailed, "restriction vanishes identically");
}

std::optional<Point> solve_on_locus_psi(const Context& ctx, const Point& seed, cplx log_target, double tol) {
    try {
        return solve_on_locus_psi_raw(ctx, seed, log_target, tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotInEscapeRegion) return std::nullopt;
        throw;
    }
}

double locus_distance(const Context& ctx, const Point& z) {
    double h = 1e-7 * std::max(1.0, std::abs(z.y));
    cplx w = raw_tangency(ctx, z);
    cplx dw = (raw_tangency(ctx, {z.x, z.y + h}) - raw_tangency(ctx, {z.x, z.y - h})) / (2 * h);
    return std::abs(w / dw);
}

namespace {

std::optional<Point> solve_on_locus_psi_raw(const Context& ctx, const Point& seed, cplx log_target, double tol) {
    const int d = ctx.d();
    const double r2 = 2 * ctx.dp.alpha;
    Point z = seed;
    for (int it = 0; it < 60; ++it) {
        LogPhi lp = log_phi(ctx, z, Side::plus, 1e-15, r2);
        cplx F1 = reduce_branch(lp.L.v - log_target, lp.depth, d);
        cplx F2 = raw_tangency(ctx, z);
        double hx = 1e-6 * std::max(1.0, std::abs(z.x)), hy = 1e-6 * std::max(1.0, std::abs(z.y));
        cplx wx = (raw_tangency(ctx, {z.x + hx, z.y}) - raw_tangency(ctx, {z.x - hx, z.y})) / (2 * hx);
        cplx wy = (raw_tangency(ctx, {z.x, z.y + hy}) - raw_tangency(ctx, {z.x, z.y - hy})) / (2 * hy);
        cplx det = lp.L.dx * wy - lp.L.dy * wx;
        if (det == cplx(0)) return std::nullopt;
        cplx dx = (F1 * wy - lp.L.dy * F2) / det;
        cplx dy = (lp.L.dx * F2 - wx * F1) / det;
        z.x -= dx;
        z.y -= dy;
        if (!std::isfinite(std::abs(z.x) + std::abs(z.y))) return std::nullopt;
        if (std::abs(dx) + std::abs(dy) < tol * std::max(1.0, std::abs(z.x))) {
            if (std::abs(tangency_value(ctx, z).value) < 1e-9) return z;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<Point> follow_psi_arc(const Context& ctx, const Point& start, double span, int steps) {
    const double r2 = 2 * ctx.dp.alpha;
    cplx L0 = log_phi(ctx, start, Side::plus, 1e-15, r2).L.v;
    std::vector<Point> pts{start};
    std::vector<double> ts{0.0};
    double h = span / steps;
    double t = 0;
    const double dir = span >= 0 ? 1 : -1;
    while (dir * (span - t) > 1e-14) {
        double ht = dir * std::min(std::abs(h), std::abs(span - t));
        Point pred = pts.back();
        if (pts.size() >= 2) {
            size_t n = pts.size();
            double hp = ts[n - 1] - ts[n - 2];
            pred.x += (pts[n - 1].x - pts[n - 2].x) * (ht / hp);
            pred.y += (pts[n - 1].y - pts[n - 2].y) * (ht / hp);
        }
        std::optional<Point> next;
        try {
            next = solve_on_locus_psi(ctx, pred, L0 + cplx(0, t + ht));
        } catch (const Error&) {
            next.reset();
        }
        double jump = next ? std::abs(next->x - pred.x) + std::abs(next->y - pred.y) : 0;
        double scale = std::abs(pts.back().x) * std::abs(ht) + 1e-12;
        if (!next || jump > scale) {
            h /= 2;
            if (std::abs(h) < 1e-9) fail(ErrorKind::ContinuationFailure, "step underflow along psi arc");
            continue;
        }
        t += ht;
        pts.push_back(*next);
        ts.push_back(t);
        if (std::abs(h) < std::abs(span / steps)) h *= 2;
    }
    return pts;
}

std::vector<LoopReport> verify_biholomorphism(const Context& ctx, cplx c, const std::vector<double>& radii,
                                              int steps) {
    const int d = ctx.d();
    const double r2 = 2 * ctx.dp.alpha;
    std::vector<LoopReport> out;
    for (double rho : radii) {
        LoopReport rep;
        rep.radius = rho;
        std::optional<Point> start;
        // walk in along the real ray from a far, certainly-traceable x
        double x = std::max(rho, 4 * ctx.dp.alpha);
        cplx y = solve_locus_y(ctx, x, c).y;
        start = solve_on_locus_psi(ctx, {x, y}, std::log(rho));
        if (!start) {
            Point cur{x, y};
            cplx L = log_phi(ctx, cur, Side::plus, 1e-15, r2).L.v;
            // radial continuation in log|psi+|
            const int rs = 64;
            for (int k = 1; k <= rs; ++k) {
                cplx tgt = L + (std::log(rho) - L.real()) * (double(k) / rs);
                auto nx = solve_on_locus_psi(ctx, cur, tgt);
                if (!nx) fail(ErrorKind::ContinuationFailure, "radial continuation failed");
                cur = *nx;
            }
            start = solve_on_locus_psi(ctx, cur, std::log(rho));
            if (!start) fail(ErrorKind::ContinuationFailure, "no start point on the circle");
        }
        auto loop = follow_psi_arc(ctx, *start, 2 * M_PI, steps);
        rep.samples = loop.size();
        rep.closure_error = std::abs(loop.back().x - loop.front().x) + std::abs(loop.back().y - loop.front().y);
        double wind = 0;
        LogPhi prev = log_phi(ctx, loop.front(), Side::plus, 1e-15, r2);
        for (size_t i = 1; i < loop.size(); ++i) {
            LogPhi cur = log_phi(ctx, loop[i], Side::plus, 1e-15, r2);
            int dep = std::max(cur.depth, prev.depth);
            wind += reduce_branch(cur.L.v - prev.L.v, dep, d).imag();
            prev = cur;
            rep.max_residual = std::max(rep.max_residual, std::abs(tangency_value(ctx, loop[i]).value));
        }
        rep.winding_raw = wind / (2 * M_PI);
        rep.winding = static_cast<int>(std::lround(rep.winding_raw));
        double mind = INFINITY;
        for (size_t i = 0; i + 1 < loop.size(); ++i)
            for (size_t j = i + 1; j + 1 < loop.size(); ++j)
                mind = std::min(mind, std::abs(loop[i].x - loop[j].x) + std::abs(loop[i].y - loop[j].y));
        rep.min_pair_distance = mind;
        out.push_back(rep);
    }
    return out;
}

Classification classify_component(const Context& ctx, const Point& z, int max_k, const LocusOptions& opt) {
    const auto& f = ctx.map;
    double tube = opt.tube_radius > 0 ? opt.tube_radius : default_tube_radius(f.p);
    auto cps = f.p.critical_points();
    auto test = [&](const Point& w) -> std::optional<cplx> {
        for (cplx c : cps)
            if (std::abs(w.y - c) < tube && std::abs(w.x - f.p(c)) > opt.omega_radius) return c;
        return std::nullopt;
    };
    Point fwd = z, bwd = z;
    bool fwd_ok = true, bwd_ok = f.a != cplx(0);
    if (auto c = test(z)) return {*c, 0};
    for (int k = 1; k <= max_k; ++k) {
        if (fwd_ok) {
            fwd = apply(f, fwd);
            fwd_ok = std::abs(fwd.x) < ctx.opt.overflow;
            if (fwd_ok)
                if (auto c = test(fwd)) return {*c, k};
        }
        if (bwd_ok) {
            bwd = apply_inverse(f, bwd);
            bwd_ok = std::abs(bwd.y) < ctx.opt.overflow;
            if (bwd_ok)
                if (auto c = test(bwd)) return {*c, -k};
        }
    }
    fail(ErrorKind::NotClassified, "no iterate within the cap lands in a primary tube");
}

}  // namespace henon
