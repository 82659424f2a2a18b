#pragma once

#include <complex>
#include <string>
#include <vector>

#include "henon/error.hpp"

namespace henon {

using cplx = std::complex<double>;

class Polynomial {
public:
    Polynomial() = default;
    // lowest degree first; the leading coefficient must be exactly 1
    explicit Polynomial(std::vector<cplx> coeffs);

    static Polynomial parse(const std::string& text);  // "x2-1", "x^3-3x+0.5i"

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return c_; }
    // degree of q = p - x^d, -1 when q = 0
    int q_degree() const;

    template <class T>
    T operator()(const T& z) const {
        T r = T(c_.back());
        for (int i = degree() - 1; i >= 0; --i) r = r * z + T(c_[i]);
        return r;
    }
    // q(z) / z^d evaluated through w = 1/z
    template <class T>
    T q_over_zd(const T& w) const {
        int d = degree();
        T r = T(cplx(0));
        for (int j = 0; j < d; ++j) r = r * w + T(c_[j]);
        return r * w;
    }

    cplx derivative(cplx z) const;
    cplx second_derivative(cplx z) const;
    Polynomial derivative_poly() const;  // not monic in general, only used for roots
    std::vector<cplx> critical_points() const;
    std::string to_string() const;

private:
    std::vector<cplx> c_;
};

// roots of sum coeffs[k] z^k via Aberth iteration
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

struct Point {
    cplx x, y;
};

struct HenonMap {
    Polynomial p;
    cplx a;
};

struct DomainParams {
    double r = 0.5;
    double R = 0.125;
    double alpha = 0.0;
    double B(int d) const;
};

struct IterateResult {
    Point z;
    bool overflow = false;
    int steps = 0;  // steps actually performed
};

constexpr double kOverflowCap = 1e150;

Point apply(const HenonMap& f, const Point& z);
Point apply_inverse(const HenonMap& f, const Point& z);
IterateResult iterate(const HenonMap& f, const Point& z, int n, double cap = kOverflowCap);

DomainParams domain_params(const Polynomial& p, double r = 0.5, double R = 0.125);

inline bool in_v_plus(const Point& z, const DomainParams& dp) {
    return std::abs(z.x) > std::abs(z.y) && std::abs(z.x) > dp.alpha;
}
inline bool in_v_minus(const Point& z, const DomainParams& dp) {
    return std::abs(z.y) > std::abs(z.x) && std::abs(z.y) > dp.alpha;
}

}  // namespace henon
