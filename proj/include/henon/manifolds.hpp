#pragma once

#include <vector>

#include "henon/escape.hpp"

namespace henon {

struct UVPoint {
    cplx u;  // preimage of x under p closest to y
    cplx v;  // p(y) - x
};

struct ManifoldOptions {
    double delta = 0.05;   // |v| scale of V'
    double r = 0.5;        // disk shrink factor
    double radius = 0.05;  // Euclidean stand-in for U_z
    double beta = 0.5;
    int iterations = 20;
    int mesh = 9;          // nodes per side of the parameter square, clipped to the disk
};

enum class ManifoldSide { stable, unstable };

struct LocalManifold {
    ManifoldSide side = ManifoldSide::stable;
    std::vector<cplx> history;  // history[0] = z; later entries walk backward under p
    ManifoldOptions opt;
    std::vector<cplx> params;   // v nodes (stable) or u nodes (unstable)
    std::vector<cplx> values;   // graph values u = g(v) or v = h(u)
    double refinement_change = 0;  // sup change between iterations and iterations + 1

    cplx base() const { return history.front(); }
};

cplx v_coord(const HenonMap& f, const Point& z);
UVPoint uv_coords(const HenonMap& f, const Point& z, double beta = 0.5);
Point uv_inverse(const HenonMap& f, const UVPoint& uv);

// branch of p^{-1}(x) reached by Newton from seed
cplx p_preimage(const Polynomial& p, cplx x, cplx seed);

// point of the stable disk through z at parameter v after n pullbacks
Point stable_point(const HenonMap& f, cplx z, cplx v, int n, cplx u_seed);
// point of the unstable disk over history at u-coordinate u after n pushforwards
Point unstable_point(const HenonMap& f, const std::vector<cplx>& history, cplx u, int n);

LocalManifold local_stable_graph(const HenonMap& f, cplx z, const ManifoldOptions& opt = {});
LocalManifold local_unstable_graph(const HenonMap& f, const std::vector<cplx>& history,
                                   const ManifoldOptions& opt = {});

// winding of the gradient of g- along the graph over |v| = loop_radius * delta
int gradient_index(const Context& ctx, const LocalManifold& m, double loop_radius);

struct HolesReport {
    int outer = 0;
    std::vector<int> holes;
    std::vector<cplx> hole_centers;
    int region = 0;                    // outer - sum(holes)
    std::vector<cplx> interior_zeros;  // zeros of the complex gradient inside the region
};

// outer loop of the stable disk of z minus the images of the stable disks of p^{-1}(z)
HolesReport gradient_index_with_holes(const Context& ctx, cplx z, const ManifoldOptions& opt = {});

}  // namespace henon
