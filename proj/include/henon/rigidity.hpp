#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "henon/series.hpp"

namespace henon::rigidity {

using series::MultiPoly;
using series::Rational;
using series::Series;

// monic polynomial in one variable with MultiPoly coefficients, lowest degree first
struct SymbolicPolynomial {
    std::vector<MultiPoly> coeffs;

    static SymbolicPolynomial parse(const std::string& text, const std::string& var = "x");
    static SymbolicPolynomial quadratic(const std::string& c = "c");  // x^2 + c

    int degree() const { return int(coeffs.size()) - 1; }
    MultiPoly operator()(const MultiPoly& x) const;
    SymbolicPolynomial derivative() const;
    // sum_{j<d} q_j w^{d-j}, i.e. q(1/w) w^d
    Series q_over_zd(const Series& w) const;
    std::string to_string(const std::string& var = "x") const;
};

enum class ChartSide { plus, minus };

// h+ in u (coefficients in y, a) or h- in v (coefficients in x, a)
Series phi_series(const SymbolicPolynomial& p, ChartSide side, int N);

// F = u h+(u,y) and G = phi_-^{-d} = (u/lambda) h-(y, au/lambda), lambda = u p(y) - 1
struct ChartFunctions {
    Series F, G;
};
ChartFunctions chart_functions(const SymbolicPolynomial& p, int N);

// w~ = (F_u G_y - F_y G_u) / u^2, through u^N
Series reduced_tangency(const SymbolicPolynomial& p, int N);

// graph y = Y(u) of the critical locus at infinity through (0, c)
Series locus_series(const SymbolicPolynomial& p, const MultiPoly& c, int N);

struct ChartSeries {
    Series Y;
    Series chi_plus;   // F(u, Y(u))
    Series chi_minus;  // a^2 G(u, Y(u)), d = 2 only
    int d = 2;
};
ChartSeries chart_series(const SymbolicPolynomial& p, const MultiPoly& c, int N);

// sigma = chi_- o chi_+^{-1} for p = x^2 + c at its critical point 0
Series sigma_series(int N);
Series sigma_series(const SymbolicPolynomial& p, const MultiPoly& crit, int N);

struct DefectSeries {
    Series D;  // over a1, c1, a2, c2, beta, gamma
    std::string normalization;
};

// sigma_g(beta z) - gamma sigma_f(z), f = (a1,c1), g = (a2,c2)
DefectSeries rigidity_defect(int N);

// reference form of the first three coefficients
std::vector<MultiPoly> reference_display_coefficients();

struct PartialSolutionReport {
    bool coefficient1_zero = false;
    bool coefficient2_zero = false;
    MultiPoly coefficient3;  // a1^2-cleared, after substitution
    bool trivial_solution_vanishes = false;
    int random_specializations = 0;
    int random_nonzero = 0;
    bool ok() const {
        return coefficient1_zero && coefficient2_zero && trivial_solution_vanishes &&
               random_nonzero == random_specializations;
    }
};
PartialSolutionReport check_partial_solution(uint64_t seed = 1);

struct TableCaseReport {
    std::string case_id;
    int n = 0;
    bool solution_vanishes = false;  // case constraint + conclusion annihilate all coefficients
    bool trivial_vanishes = false;
    int violations_tested = 0;
    int violations_detected = 0;  // some coefficient through degree n nonzero
    int deepest_detection = 0;    // largest first-nonzero degree seen
    std::vector<std::string> failures;
    bool ok() const {
        return solution_vanishes && trivial_vanishes && violations_tested > 0 &&
               violations_detected == violations_tested;
    }
};
TableCaseReport verify_table_case(const std::string& case_id, uint64_t seed = 1, int samples = 25);
std::vector<std::string> table_case_ids();
int table_case_degree(const std::string& case_id);

// beta^(2^n) != 1 in Q[beta]/(beta^2+beta+1) for every n <= max_n
bool cube_root_not_in_dyadic_group(int max_n = 20);

// canonical text: one "z^k: <poly>" line per coefficient
std::string serialize(const Series& s);

std::complex<double> evaluate(const Series& s, const std::map<std::string, std::complex<double>>& values,
                              std::complex<double> z);

}  // namespace henon::rigidity
