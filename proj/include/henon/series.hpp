#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "henon/error.hpp"

namespace henon::series {

using Rational = mpq_class;

constexpr int kMaxVars = 16;

// process-wide variable registry; text output orders variables by name, never by id
int var_id(const std::string& name);
const std::string& var_name(int id);

struct Monomial {
    std::array<uint8_t, kMaxVars> e{};

    int degree() const;
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    Monomial operator*(const Monomial& o) const;
};

class MultiPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    MultiPoly() = default;
    MultiPoly(const Rational& c);
    MultiPoly(long c) : MultiPoly(Rational(c)) {}
    static MultiPoly var(const std::string& name, int power = 1);
    // flat sums of products: "1/2*gamma*a1^2 - beta^3*a2^2*c2 + 3"
    static MultiPoly parse(const std::string& text);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    size_t size() const { return t_.size(); }

    MultiPoly operator-() const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
    MultiPoly scaled(const Rational& c) const;
    MultiPoly pow(int n) const;

    int degree(const std::string& var) const;
    int total_degree() const;
    MultiPoly coefficient(const std::string& var, int k) const;
    MultiPoly derivative(const std::string& var) const;
    MultiPoly substitute(const std::string& var, const MultiPoly& value) const;
    // den^D * P(num/den) with D the degree in var: zero exactly when the substitution is zero
    MultiPoly substitute_cleared(const std::string& var, const MultiPoly& num, const MultiPoly& den) const;
    // remainder modulo a polynomial monic in var
    MultiPoly reduce_mod(const std::string& var, const MultiPoly& modulus) const;
    MultiPoly rename(const std::map<std::string, std::string>& names) const;
    std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& values) const;
    std::set<std::string> variables() const;

    // gcd of all monomials and rational content, used for lazy normalization
    Monomial monomial_content() const;
    MultiPoly divide_monomial(const Monomial& m) const;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    Terms t_;
};

std::string to_string(const Rational& q);

// pair of polynomials with content-level normalization only
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(const MultiPoly& n) : num_(n), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    RatFunc(const MultiPoly& n, const MultiPoly& d);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_term() const;

    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return (a - b).is_zero(); }
    RatFunc scaled(const Rational& c) const { return RatFunc(num_.scaled(c), den_); }
    std::string to_string() const;

private:
    void normalize();
    MultiPoly num_, den_;
};

// coefficient-ring hooks used by TruncSeries
inline std::optional<MultiPoly> ring_inverse(const MultiPoly& c) {
    if (c.is_constant() && !c.is_zero()) return MultiPoly(Rational(1) / c.constant_term());
    return std::nullopt;
}
inline std::optional<RatFunc> ring_inverse(const RatFunc& c) {
    if (c.is_zero()) return std::nullopt;
    return RatFunc(1) / c;
}
inline bool ring_is_one(const MultiPoly& c) { return c.is_constant() && c.constant_term() == 1; }
inline bool ring_is_one(const RatFunc& c) { return (c - RatFunc(1)).is_zero(); }

template <class C>
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(int N, std::string var = "z") : var_(std::move(var)), c_(N + 1) {}

    static TruncSeries constant(int N, const C& v, std::string var = "z") {
        TruncSeries s(N, std::move(var));
        s.c_[0] = v;
        return s;
    }
    static TruncSeries monomial(int N, int k, const C& v = C(1), std::string var = "z") {
        TruncSeries s(N, std::move(var));
        if (k <= N) s.c_[k] = v;
        return s;
    }

    int order() const { return int(c_.size()) - 1; }
    const std::string& var() const { return var_; }
    const C& operator[](int k) const { return c_[k]; }
    C& operator[](int k) { return c_[k]; }
    const std::vector<C>& coefficients() const { return c_; }

    int valuation() const {
        for (int k = 0; k <= order(); ++k)
            if (!c_[k].is_zero()) return k;
        return order() + 1;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        check(a, b);
        TruncSeries r = a;
        for (int k = 0; k <= a.order(); ++k) r.c_[k] += b.c_[k];
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        check(a, b);
        TruncSeries r = a;
        for (int k = 0; k <= a.order(); ++k) r.c_[k] -= b.c_[k];
        return r;
    }
    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        check(a, b);
        const int N = a.order();
        TruncSeries r(N, a.var_);
        int va = a.valuation(), vb = b.valuation();
        for (int i = va; i <= N; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = vb; i + j <= N; ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    TruncSeries scaled(const C& s) const {
        TruncSeries r = *this;
        for (auto& v : r.c_) v = v * s;
        return r;
    }
    TruncSeries shifted(int k) const {  // multiply by var^k
        TruncSeries r(order(), var_);
        for (int i = 0; i + k <= order(); ++i) r.c_[i + k] = c_[i];
        return r;
    }
    TruncSeries derivative() const {
        TruncSeries r(order(), var_);
        for (int k = 1; k <= order(); ++k) r.c_[k - 1] = c_[k] * C(Rational(k));
        return r;
    }
    TruncSeries integral() const {
        TruncSeries r(order(), var_);
        for (int k = 0; k < order(); ++k) r.c_[k + 1] = c_[k] * C(Rational(1, k + 1));
        return r;
    }
    template <class F>
    TruncSeries map(F&& fn) const {
        TruncSeries r(order(), var_);
        for (int k = 0; k <= order(); ++k) r.c_[k] = fn(c_[k]);
        return r;
    }
    TruncSeries truncated(int M) const {
        TruncSeries r(M, var_);
        for (int k = 0; k <= std::min(M, order()); ++k) r.c_[k] = c_[k];
        return r;
    }
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        if (a.order() != b.order()) return false;
        for (int k = 0; k <= a.order(); ++k)
            if (!(a.c_[k] - b.c_[k]).is_zero()) return false;
        return true;
    }

private:
    static void check(const TruncSeries& a, const TruncSeries& b) {
        if (a.order() != b.order() || a.var_ != b.var_)
            fail(ErrorKind::OrderMismatch, "series order or variable mismatch");
    }
    std::string var_ = "z";
    std::vector<C> c_;
};

using Series = TruncSeries<MultiPoly>;
using RatSeries = TruncSeries<RatFunc>;

// s^e for a unit series (constant term 1), via the J.C.P. Miller recurrence
template <class C>
TruncSeries<C> pow_rational(const TruncSeries<C>& s, const Rational& e) {
    const int N = s.order();
    if (!ring_is_one(s[0])) fail(ErrorKind::NotUnitSeries, "pow_rational needs constant term 1");
    TruncSeries<C> f(N, s.var());
    f[0] = C(1);
    for (int n = 1; n <= N; ++n) {
        C acc;
        for (int k = 1; k <= n; ++k) {
            if (s[k].is_zero()) continue;
            Rational w = e * k - (n - k);
            if (w == 0) continue;
            acc += (s[k] * f[n - k]) * C(w);
        }
        f[n] = acc * C(Rational(1, n));
    }
    return f;
}

template <class C>
TruncSeries<C> inverse(const TruncSeries<C>& s) {
    auto inv0 = ring_inverse(s[0]);
    if (!inv0) fail(ErrorKind::NotUnitSeries, "constant term is not invertible");
    const int N = s.order();
    TruncSeries<C> g(N, s.var());
    g[0] = *inv0;
    for (int n = 1; n <= N; ++n) {
        C acc;
        for (int k = 1; k <= n; ++k)
            if (!s[k].is_zero()) acc += s[k] * g[n - k];
        g[n] = -(acc * *inv0);
    }
    return g;
}

template <class C>
TruncSeries<C> compose(const TruncSeries<C>& outer, const TruncSeries<C>& inner) {
    if (!inner[0].is_zero()) fail(ErrorKind::NonzeroConstantInner, "inner series has a constant term");
    if (outer.order() != inner.order()) fail(ErrorKind::OrderMismatch, "series order mismatch");
    const int N = outer.order();
    TruncSeries<C> r(N, inner.var());
    for (int k = N; k >= 0; --k) {
        r = r * inner;
        r[0] += outer[k];
    }
    return r;
}

// compositional inverse by Lagrange inversion: g_n = [z^{n-1}] (z/f)^n / n
template <class C>
TruncSeries<C> reverse(const TruncSeries<C>& f) {
    if (!f[0].is_zero()) fail(ErrorKind::NonzeroConstantInner, "reverse needs a zero constant term");
    if (!ring_inverse(f[1])) fail(ErrorKind::NonInvertibleLinearTerm, "linear coefficient is not invertible");
    const int N = f.order();
    TruncSeries<C> q(N, f.var());  // f / z
    for (int k = 1; k <= N; ++k) q[k - 1] = f[k];
    TruncSeries<C> h = inverse(q);
    TruncSeries<C> g(N, f.var());
    TruncSeries<C> hp = TruncSeries<C>::constant(N, C(1), f.var());
    for (int n = 1; n <= N; ++n) {
        hp = hp * h;
        g[n] = hp[n - 1] * C(Rational(1, n));
    }
    return g;
}

// sum_n z^n P_n(y) with y replaced by a series in z
Series substitute_series(const Series& s, const std::string& var, const Series& value);
Series derivative_coeffs(const Series& s, const std::string& var);

std::string to_string(const Series& s);

}  // namespace henon::series
