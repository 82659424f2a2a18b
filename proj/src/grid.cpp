#include "henon/grid.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "henon/parallel.hpp"

namespace henon {

const char* to_string(Plane p) {
    switch (p) {
        case Plane::x: return "x";
        case Plane::y: return "y";
        case Plane::real: return "real";
    }
    return "x";
}

Plane plane_from_string(const std::string& s) {
    if (s == "x") return Plane::x;
    if (s == "y") return Plane::y;
    if (s == "real") return Plane::real;
    fail(ErrorKind::ConfigError, "unknown plane '" + s + "'");
}

Point GridSpec::point(int i, int j) const {
    double u = nu > 1 ? u0 + (u1 - u0) * i / (nu - 1) : u0;
    double v = nv > 1 ? v0 + (v1 - v0) * j / (nv - 1) : v0;
    switch (plane) {
        case Plane::x: return {cplx(u, v), fixed};
        case Plane::y: return {fixed, cplx(u, v)};
        case Plane::real: return {cplx(u), cplx(v)};
    }
    return {};
}

GridField green_grid(const Context& ctx, const GridSpec& spec, Side side) {
    if (spec.nu < 1 || spec.nv < 1) fail(ErrorKind::InvalidArgument, "empty grid");
    GridField g;
    g.spec = spec;
    g.quantity = side == Side::plus ? "g+" : "g-";
    g.values.assign(size_t(spec.nu) * spec.nv, 0.0);
    g.interior.assign(g.values.size(), 0);
    parallel_for(spec.nv, [&](size_t j) {
        for (int i = 0; i < spec.nu; ++i) {
            GreenValue gv = green(ctx, spec.point(i, int(j)), side);
            g.values[j * spec.nu + i] = gv.value;
            g.interior[j * spec.nu + i] = gv.interior;
        }
    });
    g.min = std::numeric_limits<double>::infinity();
    g.max = -g.min;
    for (double v : g.values) {
        if (!std::isfinite(v)) continue;
        g.min = std::min(g.min, v);
        g.max = std::max(g.max, v);
    }
    if (!std::isfinite(g.min)) g.min = g.max = 0;
    return g;
}

std::vector<unsigned short> quantize(const GridField& g) {
    std::vector<unsigned short> q(g.values.size(), 0);
    double span = g.max - g.min;
    for (size_t k = 0; k < q.size(); ++k) {
        double v = g.values[k];
        if (!std::isfinite(v) || span <= 0) continue;
        q[k] = static_cast<unsigned short>(std::lround((v - g.min) / span * 65535.0));
    }
    return q;
}

void write_pgm(const GridField& g, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrorKind::InvalidArgument, "cannot open " + path);
    os << "P5\n" << g.spec.nu << " " << g.spec.nv << "\n65535\n";
    for (unsigned short v : quantize(g)) {
        char b[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xff)};
        os.write(b, 2);
    }
}

void write_sidecar(const GridField& g, const Context& ctx, const std::string& path) {
    nlohmann::ordered_json j;
    j["quantity"] = g.quantity;
    j["width"] = g.spec.nu;
    j["height"] = g.spec.nv;
    j["plane"] = to_string(g.spec.plane);
    j["bounds"] = {g.spec.u0, g.spec.u1, g.spec.v0, g.spec.v1};
    j["fixed"] = {g.spec.fixed.real(), g.spec.fixed.imag()};
    j["row0"] = "v0";
    j["min"] = g.min;
    j["max"] = g.max;
    size_t interior = 0;
    for (auto f : g.interior) interior += f;
    j["interior_count"] = interior;
    j["map"] = {{"p", ctx.map.p.to_string()}, {"a", {ctx.map.a.real(), ctx.map.a.imag()}}};
    j["domain"] = {{"r", ctx.dp.r}, {"R", ctx.dp.R}, {"alpha", ctx.dp.alpha}};
    j["iteration_cap"] = ctx.opt.max_iter;
    std::ofstream os(path);
    os << j.dump(2) << "\n";
}

void write_csv(const GridField& g, const std::string& path) {
    std::ofstream os(path);
    os.precision(17);
    os << "x,y,value\n";
    for (int j = 0; j < g.spec.nv; ++j)
        for (int i = 0; i < g.spec.nu; ++i) {
            double u = g.spec.nu > 1 ? g.spec.u0 + (g.spec.u1 - g.spec.u0) * i / (g.spec.nu - 1) : g.spec.u0;
            double v = g.spec.nv > 1 ? g.spec.v0 + (g.spec.v1 - g.spec.v0) * j / (g.spec.nv - 1) : g.spec.v0;
            os << u << "," << v << "," << g.at(i, j) << "\n";
        }
}

}  // namespace henon
