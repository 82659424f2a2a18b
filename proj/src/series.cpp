#include "henon/series.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>

namespace henon::series {

namespace {

std::mutex g_mu;
std::deque<std::string> g_names;

}  // namespace

int var_id(const std::string& name) {
    std::lock_guard<std::mutex> lk(g_mu);
    for (size_t i = 0; i < g_names.size(); ++i)
        if (g_names[i] == name) return int(i);
    if (g_names.size() >= size_t(kMaxVars)) fail(ErrorKind::InvalidArgument, "too many polynomial variables");
    g_names.push_back(name);
    return int(g_names.size()) - 1;
}

const std::string& var_name(int id) {
    std::lock_guard<std::mutex> lk(g_mu);
    return g_names.at(id);
}

int Monomial::degree() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
        int s = int(e[i]) + int(o.e[i]);
        if (s > 255) fail(ErrorKind::InvalidArgument, "exponent overflow");
        r.e[i] = uint8_t(s);
    }
    return r;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

MultiPoly::MultiPoly(const Rational& c) {
    if (c != 0) t_.emplace(Monomial{}, c);
}

MultiPoly MultiPoly::var(const std::string& name, int power) {
    MultiPoly p;
    Monomial m;
    m.e[var_id(name)] = uint8_t(power);
    p.t_.emplace(m, Rational(1));
    return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

bool MultiPoly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.degree() == 0); }

Rational MultiPoly::constant_term() const {
    auto it = t_.find(Monomial{});
    return it == t_.end() ? Rational(0) : it->second;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    r += b;
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    r -= b;
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    Rational tmp;
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) {
            tmp = ca * cb;
            r.add_term(ma * mb, tmp);
        }
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    if (c == 0) return {};
    MultiPoly r = *this;
    for (auto& [m, v] : r.t_) v *= c;
    return r;
}

MultiPoly MultiPoly::pow(int n) const {
    MultiPoly r(1), b = *this;
    while (n > 0) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

int MultiPoly::degree(const std::string& v) const {
    int id = var_id(v), d = 0;
    for (auto& [m, c] : t_) d = std::max(d, int(m.e[id]));
    return d;
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
}

MultiPoly MultiPoly::coefficient(const std::string& v, int k) const {
    int id = var_id(v);
    MultiPoly r;
    for (auto& [m, c] : t_)
        if (m.e[id] == k) {
            Monomial mm = m;
            mm.e[id] = 0;
            r.add_term(mm, c);
        }
    return r;
}

MultiPoly MultiPoly::derivative(const std::string& v) const {
    int id = var_id(v);
    MultiPoly r;
    for (auto& [m, c] : t_)
        if (m.e[id] > 0) {
            Monomial mm = m;
            mm.e[id]--;
            r.add_term(mm, c * int(m.e[id]));
        }
    return r;
}

MultiPoly MultiPoly::substitute(const std::string& v, const MultiPoly& value) const {
    int D = degree(v);
    MultiPoly r;
    for (int k = D; k >= 0; --k) r = r * value + coefficient(v, k);
    return r;
}

MultiPoly MultiPoly::substitute_cleared(const std::string& v, const MultiPoly& num, const MultiPoly& den) const {
    int D = degree(v);
    MultiPoly r;
    std::vector<MultiPoly> np(D + 1), dp(D + 1);
    np[0] = dp[0] = MultiPoly(1);
    for (int k = 1; k <= D; ++k) {
        np[k] = np[k - 1] * num;
        dp[k] = dp[k - 1] * den;
    }
    for (int k = 0; k <= D; ++k) r += coefficient(v, k) * np[k] * dp[D - k];
    return r;
}

MultiPoly MultiPoly::reduce_mod(const std::string& v, const MultiPoly& modulus) const {
    int m = modulus.degree(v);
    MultiPoly lead = modulus.coefficient(v, m);
    if (!(lead.is_constant() && lead.constant_term() == 1))
        fail(ErrorKind::InvalidArgument, "modulus must be monic in " + v);
    MultiPoly r = *this;
    for (int k = r.degree(v); k >= m && k > 0; k = r.degree(v)) {
        MultiPoly L = r.coefficient(v, k);
        if (L.is_zero()) break;
        r -= L * MultiPoly::var(v, k - m) * modulus;
    }
    return r;
}

MultiPoly MultiPoly::rename(const std::map<std::string, std::string>& names) const {
    std::vector<int> map(kMaxVars);
    for (int i = 0; i < kMaxVars; ++i) map[i] = i;
    for (auto& [from, to] : names) map[var_id(from)] = var_id(to);
    MultiPoly r;
    for (auto& [m, c] : t_) {
        Monomial mm;
        for (int i = 0; i < kMaxVars; ++i)
            if (m.e[i]) mm.e[map[i]] = uint8_t(mm.e[map[i]] + m.e[i]);
        r.add_term(mm, c);
    }
    return r;
}

std::complex<double> MultiPoly::evaluate(const std::map<std::string, std::complex<double>>& values) const {
    std::vector<std::complex<double>> val(kMaxVars, 0.0);
    std::vector<bool> have(kMaxVars, false);
    for (auto& [k, v] : values) {
        int id = var_id(k);
        val[id] = v;
        have[id] = true;
    }
    std::complex<double> r = 0;
    for (auto& [m, c] : t_) {
        std::complex<double> term = c.get_d();
        for (int i = 0; i < kMaxVars; ++i) {
            if (!m.e[i]) continue;
            if (!have[i]) fail(ErrorKind::InvalidArgument, "no value for variable " + var_name(i));
            for (int k = 0; k < m.e[i]; ++k) term *= val[i];
        }
        r += term;
    }
    return r;
}

std::set<std::string> MultiPoly::variables() const {
    std::set<std::string> out;
    for (auto& [m, c] : t_)
        for (int i = 0; i < kMaxVars; ++i)
            if (m.e[i]) out.insert(var_name(i));
    return out;
}

Monomial MultiPoly::monomial_content() const {
    Monomial g;
    if (t_.empty()) return g;
    g = t_.begin()->first;
    for (auto& [m, c] : t_)
        for (int i = 0; i < kMaxVars; ++i) g.e[i] = std::min(g.e[i], m.e[i]);
    return g;
}

MultiPoly MultiPoly::divide_monomial(const Monomial& d) const {
    MultiPoly r;
    for (auto& [m, c] : t_) {
        Monomial mm = m;
        for (int i = 0; i < kMaxVars; ++i) {
            if (mm.e[i] < d.e[i]) fail(ErrorKind::InvalidArgument, "monomial does not divide");
            mm.e[i] = uint8_t(mm.e[i] - d.e[i]);
        }
        r.t_.emplace(mm, c);
    }
    return r;
}

namespace {

struct NamedTerm {
    std::vector<std::pair<std::string, int>> factors;  // alphabetical
    int degree = 0;
    const Rational* coeff;
};

}  // namespace

// graded order, then lexicographic with variables taken alphabetically
std::string MultiPoly::to_string() const {
    if (t_.empty()) return "0";
    std::vector<NamedTerm> terms;
    for (auto& [m, c] : t_) {
        NamedTerm nt;
        nt.coeff = &c;
        for (int i = 0; i < kMaxVars; ++i)
            if (m.e[i]) nt.factors.emplace_back(var_name(i), int(m.e[i]));
        std::sort(nt.factors.begin(), nt.factors.end());
        nt.degree = m.degree();
        terms.push_back(std::move(nt));
    }
    std::sort(terms.begin(), terms.end(), [](const NamedTerm& a, const NamedTerm& b) {
        if (a.degree != b.degree) return a.degree > b.degree;
        size_t n = std::min(a.factors.size(), b.factors.size());
        for (size_t i = 0; i < n; ++i) {
            if (a.factors[i].first != b.factors[i].first) return a.factors[i].first < b.factors[i].first;
            if (a.factors[i].second != b.factors[i].second) return a.factors[i].second > b.factors[i].second;
        }
        return a.factors.size() < b.factors.size();
    });
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        const Rational& c = *terms[i].coeff;
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (i == 0) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        std::string mono;
        for (auto& [name, e] : terms[i].factors) {
            if (!mono.empty()) mono += "*";
            mono += name;
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) out += series::to_string(mag);
        else if (mag == 1) out += mono;
        else out += series::to_string(mag) + "*" + mono;
    }
    return out;
}

MultiPoly MultiPoly::parse(const std::string& text) {
    size_t i = 0;
    const std::string& s = text;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto read_int = [&]() -> std::string {
        size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i) fail(ErrorKind::ParseError, "expected integer in '" + text + "'");
        return s.substr(st, i - st);
    };
    MultiPoly result;
    skip();
    if (i == s.size()) fail(ErrorKind::ParseError, "empty polynomial");
    bool first = true;
    while (true) {
        skip();
        if (i >= s.size()) break;
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail(ErrorKind::ParseError, "expected + or - in '" + text + "'");
        }
        first = false;
        MultiPoly term(sign);
        bool need_factor = true;
        while (need_factor) {
            skip();
            if (i >= s.size()) fail(ErrorKind::ParseError, "dangling operator in '" + text + "'");
            if (std::isdigit(static_cast<unsigned char>(s[i]))) {
                std::string num = read_int();
                Rational q(num);
                skip();
                if (i < s.size() && s[i] == '/') {
                    ++i;
                    skip();
                    q /= Rational(read_int());
                }
                term = term.scaled(q);
            } else if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
                size_t st = i;
                while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
                std::string name = s.substr(st, i - st);
                int e = 1;
                skip();
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    skip();
                    e = std::stoi(read_int());
                }
                term *= MultiPoly::var(name, e);
            } else {
                fail(ErrorKind::ParseError, "unexpected character in '" + text + "'");
            }
            skip();
            need_factor = i < s.size() && s[i] == '*';
            if (need_factor) ++i;
        }
        result += term;
    }
    return result;
}

RatFunc::RatFunc(const MultiPoly& n, const MultiPoly& d) : num_(n), den_(d) {
    if (d.is_zero()) fail(ErrorKind::InvalidArgument, "zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly(1);
        return;
    }
    Monomial gn = num_.monomial_content(), gd = den_.monomial_content();
    Monomial g;
    for (int i = 0; i < kMaxVars; ++i) g.e[i] = std::min(gn.e[i], gd.e[i]);
    if (g.degree() > 0) {
        num_ = num_.divide_monomial(g);
        den_ = den_.divide_monomial(g);
    }
    Rational lead = den_.terms().rbegin()->second;
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
    if (num_ == den_) num_ = den_ = MultiPoly(1);
}

Rational RatFunc::constant_term() const { return num_.constant_term() / den_.constant_term(); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorKind::InvalidArgument, "division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string() const {
    if (den_.is_constant() && den_.constant_term() == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Series substitute_series(const Series& s, const std::string& var, const Series& value) {
    const int N = value.order();
    int D = 0;
    for (auto& c : s.coefficients()) D = std::max(D, c.degree(var));
    std::vector<Series> powers(D + 1);
    powers[0] = Series::constant(N, MultiPoly(1), value.var());
    for (int j = 1; j <= D; ++j) powers[j] = powers[j - 1] * value;
    Series r(N, value.var());
    for (int n = 0; n <= std::min(N, s.order()); ++n) {
        if (s[n].is_zero()) continue;
        for (int j = 0; j <= s[n].degree(var); ++j) {
            MultiPoly q = s[n].coefficient(var, j);
            if (q.is_zero()) continue;
            for (int k = 0; k + n <= N; ++k)
                if (!powers[j][k].is_zero()) r[k + n] += q * powers[j][k];
        }
    }
    return r;
}

Series derivative_coeffs(const Series& s, const std::string& var) {
    return s.map([&](const MultiPoly& c) { return c.derivative(var); });
}

std::string to_string(const Series& s) {
    std::ostringstream os;
    bool any = false;
    for (int k = 0; k <= s.order(); ++k) {
        if (s[k].is_zero()) continue;
        if (any) os << " + ";
        os << "(" << s[k].to_string() << ")";
        if (k > 0) os << "*" << s.var() << "^" << k;
        any = true;
    }
    if (!any) os << "0";
    os << " + O(" << s.var() << "^" << s.order() + 1 << ")";
    return os.str();
}

}  // namespace henon::series
