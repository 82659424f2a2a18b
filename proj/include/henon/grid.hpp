#pragma once

#include <string>
#include <vector>

#include "henon/escape.hpp"

namespace henon {

enum class Plane { x, y, real };

struct GridSpec {
    Plane plane = Plane::x;
    double u0 = -2, u1 = 2, v0 = -2, v1 = 2;
    int nu = 64, nv = 64;
    cplx fixed = 0;  // the other coordinate for the x and y planes

    Point point(int i, int j) const;
};

struct GridField {
    GridSpec spec;
    std::string quantity;        // "g+", "g-", "tangency"
    std::vector<double> values;  // row-major, row j runs at v0 + j*dv
    std::vector<unsigned char> interior;
    double min = 0, max = 0;

    double at(int i, int j) const { return values[size_t(j) * spec.nu + i]; }
};

GridField green_grid(const Context& ctx, const GridSpec& spec, Side side);

void write_pgm(const GridField& g, const std::string& path);           // P5, 16-bit big-endian
void write_sidecar(const GridField& g, const Context& ctx, const std::string& path);
void write_csv(const GridField& g, const std::string& path);
std::vector<unsigned short> quantize(const GridField& g);

const char* to_string(Plane p);
Plane plane_from_string(const std::string& s);

}  // namespace henon
