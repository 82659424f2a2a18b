#include "henon/rigidity.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>

namespace henon::rigidity {

using series::compose;
using series::inverse;
using series::pow_rational;
using series::reverse;
using series::substitute_series;

namespace {

MultiPoly V(const std::string& n, int k = 1) { return MultiPoly::var(n, k); }

Series one(int N, const std::string& var) { return Series::constant(N, MultiPoly(1), var); }

Series pow_int(const Series& s, int k) {
    Series r = one(s.order(), s.var());
    for (int i = 0; i < k; ++i) r = r * s;
    return r;
}

Series truncate(const Series& s, int N) { return s.truncated(N); }

}  // namespace

SymbolicPolynomial SymbolicPolynomial::parse(const std::string& text, const std::string& var) {
    MultiPoly p = MultiPoly::parse(text);
    int d = p.degree(var);
    if (d < 2) fail(ErrorKind::InvalidArgument, "polynomial degree must be at least 2");
    SymbolicPolynomial out;
    for (int k = 0; k <= d; ++k) out.coeffs.push_back(p.coefficient(var, k));
    if (out.coeffs.back() != MultiPoly(1)) fail(ErrorKind::InvalidArgument, "polynomial must be monic");
    return out;
}

SymbolicPolynomial SymbolicPolynomial::quadratic(const std::string& c) {
    return SymbolicPolynomial{{V(c), MultiPoly(0), MultiPoly(1)}};
}

MultiPoly SymbolicPolynomial::operator()(const MultiPoly& x) const {
    MultiPoly r;
    for (int k = degree(); k >= 0; --k) r = r * x + coeffs[k];
    return r;
}

SymbolicPolynomial SymbolicPolynomial::derivative() const {
    SymbolicPolynomial r;
    for (int k = 1; k <= degree(); ++k) r.coeffs.push_back(coeffs[k].scaled(k));
    if (r.coeffs.empty()) r.coeffs.push_back(MultiPoly(0));
    return r;
}

Series SymbolicPolynomial::q_over_zd(const Series& w) const {
    const int d = degree();
    Series acc(w.order(), w.var());
    for (int j = 0; j < d; ++j) {
        acc = acc * w;
        acc[0] += coeffs[j];
    }
    return acc * w;
}

std::string SymbolicPolynomial::to_string(const std::string& var) const {
    MultiPoly r;
    for (int k = 0; k <= degree(); ++k) r += coeffs[k] * V(var, k);
    return r.to_string();
}

Series phi_series(const SymbolicPolynomial& p, ChartSide side, int N) {
    if (N < 1) fail(ErrorKind::InvalidArgument, "series order must be positive");
    const int d = p.degree();
    const bool plus = side == ChartSide::plus;
    const std::string t = plus ? "u" : "v";
    const MultiPoly a = V("a");
    // plus: xi_k = 1/x_k, xi_k = xi_{k-1}^d / (1+s_k)
    // minus: zeta_k = 1/y_{-k}, zeta_k = a zeta_{k-1}^d / (1+s_k)
    Series w_prev2, w_prev = Series::monomial(N, 1, MultiPoly(1), t), t_prev;
    Series h = one(N, t);
    long dk = 1;
    for (int k = 1; dk <= N; ++k, dk *= d) {
        Series s = p.q_over_zd(w_prev);
        if (k == 1) {
            s = s - pow_int(w_prev, d).scaled(plus ? a * V("y") : V("x"));
        } else {
            Series cross = pow_int(w_prev2, d * d - 1) * pow_int(t_prev, d);
            s = s - cross.scaled(plus ? a : a.pow(d));
        }
        Series unit = one(N, t) + s;
        h = h * pow_rational(unit, Rational(-1, dk * d));
        Series tk = inverse(unit);
        Series next = pow_int(w_prev, d) * tk;
        if (!plus) next = next.scaled(a);
        w_prev2 = w_prev;
        w_prev = next;
        t_prev = tk;
    }
    return h;
}

ChartFunctions chart_functions(const SymbolicPolynomial& p, int N) {
    const MultiPoly a = V("a");
    Series hp = phi_series(p, ChartSide::plus, N);
    Series hm = phi_series(p, ChartSide::minus, N);
    hm = hm.map([](const MultiPoly& c) { return c.rename({{"x", "y"}}); });
    Series hm_u(N, "u");
    for (int k = 0; k <= N; ++k) hm_u[k] = hm[k];
    // 1/lambda = -1/(1 - u p(y))
    Series up = Series::monomial(N, 1, p(V("y")), "u");
    Series inv_lambda = -inverse(one(N, "u") - up);
    Series v = inv_lambda.shifted(1).scaled(a);
    ChartFunctions out;
    out.F = hp.shifted(1);
    out.G = compose(hm_u, v) * inv_lambda.shifted(1);
    return out;
}

Series reduced_tangency(const SymbolicPolynomial& p, int N) {
    const int M = N + 3;
    ChartFunctions cf = chart_functions(p, M);
    Series Fu = cf.F.derivative(), Gu = cf.G.derivative();
    Series Fy = series::derivative_coeffs(cf.F, "y"), Gy = series::derivative_coeffs(cf.G, "y");
    Series w = Fu * Gy - Fy * Gu;
    for (int k = 0; k < 2; ++k)
        if (!w[k].is_zero()) fail(ErrorKind::InvalidArgument, "tangency form not divisible by u^2");
    Series wt(N, "u");
    for (int k = 0; k <= N; ++k) wt[k] = w[k + 2];
    return wt;
}

namespace {

Series newton_locus(const Series& wt, const SymbolicPolynomial& p, const MultiPoly& c) {
    const int N = wt.order();
    if (!p.derivative()(c).is_zero()) fail(ErrorKind::NotSimpleCritical, "c is not a critical point of p");
    MultiPoly pc2 = p.derivative().derivative()(c);
    if (pc2.is_zero()) fail(ErrorKind::DegenerateCriticalPoint, "p''(c) = 0");
    if (!pc2.is_constant()) fail(ErrorKind::DegenerateCriticalPoint, "p''(c) must be a nonzero rational");
    Series wy = series::derivative_coeffs(wt, "y");
    Series Y = Series::constant(N, c, "u");
    for (int it = 0; it < 2 * N + 8; ++it) {
        Series r = substitute_series(wt, "y", Y);
        if (r == Series(N, "u")) return Y;
        Series j = substitute_series(wy, "y", Y);
        Y = Y - r * inverse(j);
    }
    fail(ErrorKind::NewtonDivergence, "formal Newton iteration did not settle");
}

}  // namespace

Series locus_series(const SymbolicPolynomial& p, const MultiPoly& c, int N) {
    return newton_locus(reduced_tangency(p, N), p, c);
}

ChartSeries chart_series(const SymbolicPolynomial& p, const MultiPoly& c, int N) {
    const int M = N + 3;
    ChartFunctions cf = chart_functions(p, M);
    ChartSeries out;
    out.d = p.degree();
    out.Y = locus_series(p, c, N);
    out.chi_plus = substitute_series(cf.F, "y", out.Y);
    if (out.d == 2) out.chi_minus = substitute_series(cf.G, "y", out.Y).scaled(V("a", 2));
    return out;
}

Series sigma_series(const SymbolicPolynomial& p, const MultiPoly& crit, int N) {
    if (p.degree() != 2) fail(ErrorKind::InvalidArgument, "sigma needs a quadratic map");
    ChartSeries cs = chart_series(p, crit, N);
    Series inv = reverse(cs.chi_plus);
    Series s = compose(cs.chi_minus, inv);
    Series out(N, "z");
    for (int k = 0; k <= N; ++k) out[k] = s[k];
    return out;
}

Series sigma_series(int N) {
    static std::mutex mu;
    static Series cache;
    std::lock_guard<std::mutex> lk(mu);
    if (cache.order() < N) cache = sigma_series(SymbolicPolynomial::quadratic("c"), MultiPoly(0), N);
    return truncate(cache, N);
}

DefectSeries rigidity_defect(int N) {
    Series s = sigma_series(N);
    DefectSeries out;
    out.D = Series(N, "z");
    MultiPoly beta = V("beta"), gamma = V("gamma"), bk(1);
    for (int k = 1; k <= N; ++k) {
        bk *= beta;
        out.D[k] = bk * s[k].rename({{"a", "a2"}, {"c", "c2"}}) - gamma * s[k].rename({{"a", "a1"}, {"c", "c1"}});
    }
    out.normalization = "D = sigma_g(beta z) - gamma sigma_f(z) with chi_- = a^2 phi_-^{-2}; no factor cleared";
    return out;
}

std::vector<MultiPoly> reference_display_coefficients() {
    return {
        MultiPoly::parse("gamma*a1^2 - beta*a2^2"),
        MultiPoly::parse("gamma*a1^2*c1 - beta^2*a2^2*c2"),
        MultiPoly::parse("gamma*a1^2*c1^2 - beta^3*a2^2*c2^2 + 1/2*gamma*a1^2*c1 - 1/2*gamma*a1^4*c1"
                         " + 1/2*beta^3*a2^4*c2 - 1/2*beta^3*a2^2*c2"),
    };
}

namespace {

using Subst = std::vector<std::pair<std::string, MultiPoly>>;

MultiPoly specialize(MultiPoly p, const Subst& s) {
    for (auto& [v, val] : s) p = p.substitute(v, val);
    return p;
}

const MultiPoly& cube_modulus() {
    static const MultiPoly m = MultiPoly::parse("beta^2 + beta + 1");
    return m;
}

// first degree <= n with a nonzero coefficient, 0 if none
int first_nonzero(const Series& D, int n, const Subst& s, bool mod_cube) {
    for (int k = 1; k <= n; ++k) {
        MultiPoly c = specialize(D[k], s);
        if (mod_cube) c = c.reduce_mod("beta", cube_modulus());
        if (!c.is_zero()) return k;
    }
    return 0;
}

struct RandomRational {
    std::mt19937_64 rng;
    explicit RandomRational(uint64_t seed) : rng(seed) {}
    Rational operator()() {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
        int a = 0;
        while (a == 0) a = num(rng);
        Rational q(a, den(rng));
        q.canonicalize();
        return q;
    }
    // avoids the listed values
    Rational avoiding(std::initializer_list<Rational> bad) {
        for (;;) {
            Rational q = (*this)();
            if (std::none_of(bad.begin(), bad.end(), [&](const Rational& b) { return b == q; })) return q;
        }
    }
    int sign() { return std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1; }
};

}  // namespace

PartialSolutionReport check_partial_solution(uint64_t seed) {
    const int N = 13;
    DefectSeries D = rigidity_defect(N);
    PartialSolutionReport r;
    MultiPoly a1 = V("a1"), a2 = V("a2"), beta = V("beta");
    // gamma = (a2^2/a1^2) beta, cleared by a1^2; c1 = c2 beta
    auto apply = [&](const MultiPoly& c) {
        return c.substitute_cleared("gamma", a2.pow(2) * beta, a1.pow(2)).substitute("c1", V("c2") * beta);
    };
    r.coefficient1_zero = apply(D.D[1]).is_zero();
    r.coefficient2_zero = apply(D.D[2]).is_zero();
    r.coefficient3 = apply(D.D[3]);

    Subst trivial = {{"a2", a1}, {"c2", V("c1")}, {"beta", MultiPoly(1)}, {"gamma", MultiPoly(1)}};
    r.trivial_solution_vanishes = first_nonzero(D.D, N, trivial, false) == 0;

    RandomRational rnd(seed);
    for (int i = 0; i < 5; ++i) {
        Rational A1 = rnd(), A2 = rnd.avoiding({A1, -A1}), C2 = rnd(), B = rnd.avoiding({1});
        Subst s = {{"a1", A1}, {"a2", A2}, {"c2", C2}, {"beta", B}};
        ++r.random_specializations;
        if (!specialize(r.coefficient3, s).is_zero()) ++r.random_nonzero;
    }
    return r;
}

std::vector<std::string> table_case_ids() { return {"beta_ratio", "a2_one", "a2_minus_one", "c1_zero"}; }

int table_case_degree(const std::string& id) {
    if (id == "beta_ratio") return 7;
    if (id == "a2_one" || id == "a2_minus_one") return 8;
    if (id == "c1_zero") return 13;
    fail(ErrorKind::InvalidArgument, "unknown table case '" + id + "'");
}

TableCaseReport verify_table_case(const std::string& id, uint64_t seed, int samples) {
    TableCaseReport r;
    r.case_id = id;
    r.n = table_case_degree(id);
    const int n = r.n;
    DefectSeries D = rigidity_defect(n);
    RandomRational rnd(seed);
    const MultiPoly beta = V("beta");

    auto record = [&](const Subst& s, bool mod_cube, const std::string& label) {
        ++r.violations_tested;
        int k = first_nonzero(D.D, n, s, mod_cube);
        if (k > 0) {
            ++r.violations_detected;
            r.deepest_detection = std::max(r.deepest_detection, k);
        } else {
            r.failures.push_back(label);
        }
    };

    if (id == "a2_one" || id == "a2_minus_one") {
        const int sg = id == "a2_one" ? 1 : -1;
        Subst sol = {{"a2", MultiPoly(sg)}, {"a1", MultiPoly(sg)}, {"c1", MultiPoly(0)},
                     {"c2", MultiPoly(0)},  {"gamma", beta}};
        r.solution_vanishes = first_nonzero(D.D, n, sol, true) == 0;
        Rational C = rnd();
        Subst triv = {{"a2", MultiPoly(sg)}, {"a1", MultiPoly(sg)}, {"c1", C},
                      {"c2", C},             {"beta", MultiPoly(1)}, {"gamma", MultiPoly(1)}};
        r.trivial_vanishes = first_nonzero(D.D, n, triv, false) == 0;
        // c1 != 0 with the partial solution and a1 = +-1, which already kills z, z^2, z^3
        for (int i = 0; i < samples; ++i) {
            Rational A1 = rnd.sign(), C1 = rnd(), B = rnd.avoiding({1});
            Rational A2 = sg;
            Rational G = A2 * A2 * B / (A1 * A1);
            Subst s = {{"a2", A2}, {"a1", A1}, {"c1", C1}, {"c2", Rational(C1 / B)}, {"beta", B}, {"gamma", G}};
            record(s, false, "a1=" + series::to_string(A1) + " c1=" + series::to_string(C1) +
                                 " beta=" + series::to_string(B));
        }
    } else if (id == "beta_ratio") {
        Rational A = rnd.avoiding({0, 1, -1}), C = rnd();
        Subst sol = {{"a1", A}, {"a2", A}, {"c1", MultiPoly(0)}, {"c2", MultiPoly(0)}, {"beta", MultiPoly(1)},
                     {"gamma", MultiPoly(1)}};
        r.solution_vanishes = first_nonzero(D.D, n, sol, false) == 0;
        Subst triv = {{"a1", A}, {"a2", A}, {"c1", C}, {"c2", C}, {"beta", MultiPoly(1)}, {"gamma", MultiPoly(1)}};
        r.trivial_vanishes = first_nonzero(D.D, n, triv, false) == 0;
        for (int i = 0; i < samples; ++i) {
            Rational A1 = rnd.avoiding({1, -1}), A2 = rnd.avoiding({1, -1, A1}), C1 = rnd();
            Rational B = (A1 * A1 - 1) / (A2 * A2 - 1);
            Rational G = A2 * A2 * B / (A1 * A1);
            Subst s = {{"a1", A1}, {"a2", A2}, {"c1", C1}, {"c2", Rational(C1 / B)}, {"beta", B}, {"gamma", G}};
            record(s, false, "a1=" + series::to_string(A1) + " a2=" + series::to_string(A2) +
                                 " c1=" + series::to_string(C1));
        }
    } else {
        Rational A = rnd();
        Subst sol = {{"a1", A}, {"a2", A}, {"c1", MultiPoly(0)}, {"c2", MultiPoly(0)}, {"gamma", beta}};
        r.solution_vanishes = first_nonzero(D.D, n, sol, true) == 0;
        Subst triv = {{"a1", A}, {"a2", A}, {"c1", MultiPoly(0)}, {"c2", MultiPoly(0)}, {"beta", MultiPoly(1)},
                      {"gamma", MultiPoly(1)}};
        r.trivial_vanishes = first_nonzero(D.D, n, triv, false) == 0;
        for (int i = 0; i < samples; ++i) {
            Rational A1 = rnd();
            switch (i % 4) {
                case 0: {  // a1 != a2, beta a primitive cube root, partial solution for gamma
                    Rational A2 = rnd.avoiding({A1});
                    Subst s = {{"a1", A1}, {"a2", A2}, {"c1", MultiPoly(0)}, {"c2", MultiPoly(0)},
                               {"gamma", beta.scaled(A2 * A2 / (A1 * A1))}};
                    record(s, true, "a1!=a2");
                    break;
                }
                case 1: {  // beta not a cube root
                    Rational B = rnd.avoiding({1});
                    Subst s = {{"a1", A1}, {"a2", A1}, {"c1", MultiPoly(0)}, {"c2", MultiPoly(0)},
                               {"beta", B},  {"gamma", B}};
                    record(s, false, "beta=" + series::to_string(B));
                    break;
                }
                case 2: {  // c2 != 0
                    Subst s = {{"a1", A1}, {"a2", A1}, {"c1", MultiPoly(0)}, {"c2", rnd()}, {"gamma", beta}};
                    record(s, true, "c2!=0");
                    break;
                }
                default: {  // gamma != beta
                    Subst s = {{"a1", A1}, {"a2", A1}, {"c1", MultiPoly(0)}, {"c2", MultiPoly(0)},
                               {"gamma", rnd()}};
                    record(s, true, "gamma!=beta");
                    break;
                }
            }
        }
    }
    return r;
}

bool cube_root_not_in_dyadic_group(int max_n) {
    MultiPoly b = V("beta");
    for (int n = 0; n <= max_n; ++n) {
        if ((b - MultiPoly(1)).reduce_mod("beta", cube_modulus()).is_zero()) return false;
        b = (b * b).reduce_mod("beta", cube_modulus());
    }
    return true;
}

std::string serialize(const Series& s) {
    std::ostringstream os;
    for (int k = 0; k <= s.order(); ++k) os << s.var() << "^" << k << ": " << s[k].to_string() << "\n";
    return os.str();
}

std::complex<double> evaluate(const Series& s, const std::map<std::string, std::complex<double>>& values,
                              std::complex<double> z) {
    std::complex<double> r = 0;
    for (int k = s.order(); k >= 0; --k) r = r * z + s[k].evaluate(values);
    return r;
}

}  // namespace henon::rigidity
