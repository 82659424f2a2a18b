#pragma once

#include <optional>
#include <vector>

#include "henon/locus.hpp"

namespace henon {

struct PsiPair {
    cplx psi_plus;
    cplx psi_minus;
    cplx eta;  // eta^{d-1} = 1/a, principal branch
};

struct RootOfUnityWitness {
    cplx omega;
    int n = 0;  // omega^{d^n} = 1
};

cplx eta_of(const HenonMap& f);

PsiPair psi_pair(const Context& ctx, const Point& z, double tol = 1e-15);

// nearest d^n-th root of unity to ratio, smallest n <= cap within tol
std::optional<RootOfUnityWitness> root_of_unity_witness(cplx ratio, int d, double tol, int cap);

std::optional<RootOfUnityWitness> same_leaf_plus(const Context& ctx, const Point& z1, const Point& z2,
                                                 double tol = 1e-6, int cap = 8);
std::optional<RootOfUnityWitness> same_leaf_minus(const Context& ctx, const Point& z1, const Point& z2,
                                                  double tol = 1e-6, int cap = 8);

std::vector<Point> monodromy_orbit(const Context& ctx, cplx c, const Point& z, int n);

}  // namespace henon
