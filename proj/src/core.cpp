#include "henon/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace henon {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::NoAlphaFound: return "NoAlphaFound";
        case ErrorKind::NotInEscapeRegion: return "NotInEscapeRegion";
        case ErrorKind::OnDegenerateCurve: return "OnDegenerateCurve";
        case ErrorKind::NotSimpleCritical: return "NotSimpleCritical";
        case ErrorKind::LeftTube: return "LeftTube";
        case ErrorKind::NewtonDivergence: return "NewtonDivergence";
        case ErrorKind::LeafParameterizationFailed: return "LeafParameterizationFailed";
        case ErrorKind::ContinuationFailure: return "ContinuationFailure";
        case ErrorKind::NotClassified: return "NotClassified";
        case ErrorKind::OutsideVPrime: return "OutsideVPrime";
        case ErrorKind::GraphTransformDiverged: return "GraphTransformDiverged";
        case ErrorKind::GradientVanishesOnLoop: return "GradientVanishesOnLoop";
        case ErrorKind::OrderMismatch: return "OrderMismatch";
        case ErrorKind::NotUnitSeries: return "NotUnitSeries";
        case ErrorKind::NonzeroConstantInner: return "NonzeroConstantInner";
        case ErrorKind::NonInvertibleLinearTerm: return "NonInvertibleLinearTerm";
        case ErrorKind::DegenerateCriticalPoint: return "DegenerateCriticalPoint";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    while (c_.size() > 1 && c_.back() == cplx(0)) c_.pop_back();
    if (c_.size() < 3) fail(ErrorKind::InvalidArgument, "polynomial degree must be at least 2");
    if (c_.back() != cplx(1)) fail(ErrorKind::InvalidArgument, "polynomial must be monic");
}

int Polynomial::q_degree() const {
    for (int j = degree() - 1; j >= 0; --j)
        if (c_[j] != cplx(0)) return j;
    return -1;
}

cplx Polynomial::derivative(cplx z) const {
    cplx r = 0;
    for (int i = degree(); i >= 1; --i) r = r * z + double(i) * c_[i];
    return r;
}

cplx Polynomial::second_derivative(cplx z) const {
    cplx r = 0;
    for (int i = degree(); i >= 2; --i) r = r * z + double(i) * double(i - 1) * c_[i];
    return r;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
    std::vector<cplx> c = coeffs;
    while (c.size() > 1 && c.back() == cplx(0)) c.pop_back();
    int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return {};
    for (auto& v : c) v /= coeffs[n];
    if (n == 1) return {-c[0]};
    double rad = 0;
    for (int i = 0; i < n; ++i) rad = std::max(rad, std::pow(std::abs(c[i]), 1.0 / (n - i)));
    rad = std::max(rad * 2, 1e-3);
    std::vector<cplx> z(n);
    for (int i = 0; i < n; ++i) z[i] = std::polar(rad, 2 * M_PI * (i + 0.25) / n);
    auto eval = [&](cplx x, cplx& dp) {
        cplx p = c[n];
        dp = 0;
        for (int i = n - 1; i >= 0; --i) {
            dp = dp * x + p;
            p = p * x + c[i];
        }
        return p;
    };
    for (int it = 0; it < 500; ++it) {
        double mv = 0;
        for (int i = 0; i < n; ++i) {
            cplx dp;
            cplx p = eval(z[i], dp);
            if (p == cplx(0)) continue;
            cplx ratio = p / dp;
            cplx s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            cplx w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            mv = std::max(mv, std::abs(w) / std::max(1.0, std::abs(z[i])));
        }
        if (mv < 1e-15) break;
    }
    return z;
}

std::vector<cplx> Polynomial::critical_points() const {
    std::vector<cplx> dc;
    for (int i = 1; i <= degree(); ++i) dc.push_back(double(i) * c_[i]);
    auto roots = poly_roots(dc);
    for (auto& r : roots) {
        for (int k = 0; k < 3; ++k) {
            cplx s = second_derivative(r);
            if (s == cplx(0)) break;
            r -= derivative(r) / s;
        }
        if (std::abs(r.imag()) < 1e-14 * std::max(1.0, std::abs(r))) r = {r.real(), 0.0};
        if (std::abs(r) < 1e-14) r = 0;
    }
    return roots;
}

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt_coeff(cplx c) {
    if (c.imag() == 0) return fmt_num(c.real());
    return "(" + fmt_num(c.real()) + (c.imag() < 0 ? "" : "+") + fmt_num(c.imag()) + "i)";
}

}  // namespace

std::string Polynomial::to_string() const {
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        cplx ci = c_[i];
        if (ci == cplx(0)) continue;
        std::string coef;
        bool neg = false;
        if (ci.imag() == 0) {
            neg = ci.real() < 0;
            double m = std::abs(ci.real());
            if (m != 1 || i == 0) coef = fmt_num(m);
        } else {
            coef = fmt_coeff(ci);
        }
        if (!out.empty()) out += neg ? "-" : "+";
        else if (neg) out += "-";
        out += coef;
        if (i >= 1) out += "x";
        if (i >= 2) out += std::to_string(i);
    }
    return out;
}

// grammar: term (('+'|'-') term)*, term = [number | '(' complex ')'] ['x' ['^'] [int]]
Polynomial Polynomial::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) fail(ErrorKind::ParseError, "empty polynomial");
    std::map<int, cplx> terms;
    size_t i = 0;
    auto read_real = [&](const std::string& str, size_t& j) {
        size_t start = j;
        while (j < str.size() && (std::isdigit(static_cast<unsigned char>(str[j])) || str[j] == '.' || str[j] == 'e' ||
                                  ((str[j] == '-' || str[j] == '+') && j > start && str[j - 1] == 'e')))
            ++j;
        if (j == start) fail(ErrorKind::ParseError, "expected number in '" + text + "'");
        try {
            return std::stod(str.substr(start, j - start));
        } catch (const std::exception&) {
            fail(ErrorKind::ParseError, "bad number in '" + text + "'");
        }
    };
    while (i < s.size()) {
        double sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        } else if (i != 0) {
            fail(ErrorKind::ParseError, "expected sign in '" + text + "'");
        }
        cplx coef = 1;
        bool have_coef = false;
        if (i < s.size() && s[i] == '(') {
            size_t close = s.find(')', i);
            if (close == std::string::npos) fail(ErrorKind::ParseError, "unbalanced parenthesis");
            std::string inner = s.substr(i + 1, close - i - 1);
            // re [+-] im i, either part optional
            double re = 0, im = 0;
            size_t j = 0;
            while (j < inner.size()) {
                double sg = 1;
                if (inner[j] == '+' || inner[j] == '-') {
                    sg = inner[j] == '-' ? -1 : 1;
                    ++j;
                }
                double v = 1;
                if (j < inner.size() && inner[j] != 'i') v = read_real(inner, j);
                if (j < inner.size() && inner[j] == 'i') {
                    im += sg * v;
                    ++j;
                } else {
                    re += sg * v;
                }
            }
            coef = {re, im};
            have_coef = true;
            i = close + 1;
        } else if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
            double v = read_real(s, i);
            if (i < s.size() && s[i] == 'i') {
                coef = {0, v};
                ++i;
            } else {
                coef = v;
            }
            have_coef = true;
        } else if (i < s.size() && s[i] == 'i') {
            coef = {0, 1};
            have_coef = true;
            ++i;
        }
        int deg = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') ++i;
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                size_t start = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                deg = std::stoi(s.substr(start, i - start));
            }
        } else if (!have_coef) {
            fail(ErrorKind::ParseError, "empty term in '" + text + "'");
        }
        terms[deg] += sign * coef;
    }
    int d = terms.rbegin()->first;
    std::vector<cplx> c(d + 1, 0.0);
    for (auto& [k, v] : terms) c[k] = v;
    return Polynomial(c);
}

double DomainParams::B(int d) const { return std::pow(1.0 - r, -1.0 / (d - 1)); }

Point apply(const HenonMap& f, const Point& z) { return {f.p(z.x) - f.a * z.y, z.x}; }

Point apply_inverse(const HenonMap& f, const Point& z) {
    if (f.a == cplx(0)) fail(ErrorKind::DegenerateJacobian, "inverse requires a != 0");
    return {z.y, (f.p(z.y) - z.x) / f.a};
}

IterateResult iterate(const HenonMap& f, const Point& z, int n, double cap) {
    if (n < 0 && f.a == cplx(0)) fail(ErrorKind::DegenerateJacobian, "backward iteration requires a != 0");
    IterateResult res{z, false, 0};
    int steps = std::abs(n);
    for (int k = 0; k < steps; ++k) {
        Point w = n > 0 ? apply(f, res.z) : apply_inverse(f, res.z);
        if (!(std::abs(w.x) <= cap && std::abs(w.y) <= cap)) {
            res.overflow = true;
            return res;
        }
        res.z = w;
        res.steps = k + 1;
    }
    return res;
}

namespace {

struct AlphaTest {
    const Polynomial& p;
    double r, R;
    int d;

    bool circle(double rho) const {
        const int M = 720;
        for (int k = 0; k < M; ++k) {
            cplx y = std::polar(rho, 2 * M_PI * k / M);
            double lhs = std::abs(p.q_over_zd(1.0 / y)) + (R + 1) / std::pow(rho, d - 1);
            if (!(lhs < r)) return false;
            if (!(std::abs(p(y)) > (2 * R + 1) * rho)) return false;
        }
        return true;
    }
    // triangle-inequality bounds; both conditions are monotone in rho once they hold
    bool tail(double rho) const {
        double s = 0;
        for (int j = 0; j < d; ++j) s += std::abs(p.coefficients()[j]) * std::pow(rho, j - d);
        return s + (R + 1) / std::pow(rho, d - 1) < r && 1.0 - s - (2 * R + 1) / std::pow(rho, d - 1) > 0;
    }
};

}  // namespace

DomainParams domain_params(const Polynomial& p, double r, double R) {
    if (!(r > 0 && r < 1) || !(R > 0)) fail(ErrorKind::InvalidArgument, "need 0 < r < 1 and R > 0");
    AlphaTest t{p, r, R, p.degree()};
    double rho_tail = 1e-2;
    while (!t.tail(rho_tail)) {
        rho_tail *= 1.01;
        if (rho_tail > 1e8) fail(ErrorKind::NoAlphaFound, "alpha search cap exceeded");
    }
    double h = rho_tail / 1000;
    double good = rho_tail;
    while (good - h > 0 && t.circle(good - h)) {
        good -= h;
    }
    double lo = good - h, hi = good;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid > 0 && t.circle(mid)) hi = mid;
        else lo = mid;
    }
    return DomainParams{r, R, 1.05 * hi};
}

}  // namespace henon
