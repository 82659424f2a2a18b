#pragma once

#include <complex>

namespace henon {

// value plus partials with respect to the two coordinates of the seed point
struct Dual {
    std::complex<double> v, dx, dy;

    Dual() = default;
    Dual(std::complex<double> val) : v(val), dx(0), dy(0) {}
    Dual(double val) : v(val), dx(0), dy(0) {}
    Dual(std::complex<double> val, std::complex<double> ddx, std::complex<double> ddy) : v(val), dx(ddx), dy(ddy) {}

    friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.dx + b.dx, a.dy + b.dy}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.dx - b.dx, a.dy - b.dy}; }
    friend Dual operator-(const Dual& a) { return {-a.v, -a.dx, -a.dy}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        auto inv = 1.0 / b.v;
        auto q = a.v * inv;
        return {q, (a.dx - q * b.dx) * inv, (a.dy - q * b.dy) * inv};
    }
    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
};

inline Dual log(const Dual& a) { return {std::log(a.v), a.dx / a.v, a.dy / a.v}; }
inline Dual exp(const Dual& a) {
    auto e = std::exp(a.v);
    return {e, e * a.dx, e * a.dy};
}
inline Dual scale(const Dual& a, std::complex<double> s) { return {a.v * s, a.dx * s, a.dy * s}; }
inline Dual pow_int(const Dual& a, int n) {
    Dual r(1.0);
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}
inline std::complex<double> pow_int(std::complex<double> a, int n) {
    std::complex<double> r(1.0);
    for (int i = 0; i < n; ++i) r *= a;
    return r;
}

}  // namespace henon
