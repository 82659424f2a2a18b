#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "henon/locus.hpp"
#include "henon/rigidity.hpp"

using namespace henon;
using namespace henon::rigidity;
using series::RatFunc;

namespace {

MultiPoly P(const std::string& s) { return MultiPoly::parse(s); }

Series hand_h_plus_x2() {
    // (1+s1)^{-1/2} (1+s2)^{-1/4}, s1 = -a y u^2, s2 = -a u^3 + O(u^5)
    Series h(3, "u");
    h[0] = MultiPoly(1);
    h[2] = P("1/2*a*y");
    h[3] = P("1/4*a");
    return h;
}

}  // namespace

TEST_CASE("telescoping charts") {
    SymbolicPolynomial p = SymbolicPolynomial::parse("x^2");
    CHECK(phi_series(p, ChartSide::plus, 3) == hand_h_plus_x2());

    SymbolicPolynomial q = SymbolicPolynomial::quadratic();
    for (ChartSide side : {ChartSide::plus, ChartSide::minus}) {
        Series h = phi_series(q, side, 8);
        CHECK(h[0] == MultiPoly(1));
    }
    Series hp = phi_series(q, ChartSide::plus, 8);
    for (int k = 0; k < 2; ++k) CHECK(hp[k].degree("y") <= 0);
    CHECK(hp[2].degree("y") == 1);
    CHECK_THROWS_AS(SymbolicPolynomial::parse("2*x^2"), Error);
}

TEST_CASE("reduced tangency at u = 0 is -p'(y)") {
    SymbolicPolynomial q = SymbolicPolynomial::parse("x^3 + c*x + e");
    Series w = reduced_tangency(q, 4);
    CHECK(w[0] == -q.derivative()(P("y")));
}

TEST_CASE("locus graph at infinity") {
    SymbolicPolynomial q = SymbolicPolynomial::quadratic();
    Series Y = locus_series(q, MultiPoly(0), 8);
    CHECK(Y[0].is_zero());
    for (int k = 1; k <= 8; ++k) CHECK(Y[k].substitute("a", MultiPoly(0)).is_zero());
    CHECK(Y[1] == P("-1/4*a^2 + 1/4*a"));

    SymbolicPolynomial cubic = SymbolicPolynomial::parse("x^3 - 3*x");
    CHECK(locus_series(cubic, MultiPoly(1), 4)[0] == MultiPoly(1));
    CHECK_THROWS_AS(locus_series(q, MultiPoly(1), 4), Error);
    SymbolicPolynomial flat = SymbolicPolynomial::parse("x^4 + c");
    CHECK_THROWS_AS(locus_series(flat, MultiPoly(0), 4), Error);

    // numeric cross-checks against the Newton tracer
    Context ctx(HenonMap{Polynomial::parse("x2-1"), 0.01});
    std::map<std::string, std::complex<double>> vals{{"a", 0.01}, {"c", -1.0}};
    Series Y13 = locus_series(q, MultiPoly(0), 10);
    TangentAtInfinity t = tangent_at_infinity(ctx, 0.0);
    CHECK(std::abs(Y13[1].evaluate(vals) - t.slope) < 1e-5);
    for (double u : {1e-3, 1e-2}) {
        NewtonResult r = solve_locus_y(ctx, 1.0 / u, 0.0);
        CHECK(std::abs(evaluate(Y13, vals, u) - r.y) < 1e-6 * u * 1e3);
    }
}

TEST_CASE("transition map") {
    Series s = sigma_series(6);
    CHECK(s[0].is_zero());
    CHECK(s[1] == P("-a^2"));
    CHECK(s[2] == P("-a^2*c"));
    CHECK(s[3] == P("1/2*a^4*c - a^2*c^2 - 1/2*a^2*c"));
    for (int k = 1; k <= 6; ++k) CHECK(s[k].substitute("a", MultiPoly(0)).is_zero());
    ChartSeries cs = chart_series(SymbolicPolynomial::quadratic(), MultiPoly(0), 6);
    CHECK(cs.chi_plus[1] == MultiPoly(1));
    CHECK(cs.chi_minus[0].is_zero());
    CHECK(compose(cs.chi_minus, reverse(cs.chi_plus)) == s);
}

TEST_CASE("defect coefficients") {
    DefectSeries d = rigidity_defect(4);
    CHECK(d.D[0].is_zero());
    auto shown = reference_display_coefficients();
    REQUIRE(shown.size() == 3);
    CHECK(d.D[1].to_string() == "a1^2*gamma - a2^2*beta");
    CHECK(d.D[2] == P("a1^2*c1*gamma - a2^2*beta^2*c2"));
    CHECK(d.D[2].to_string() == "-a2^2*beta^2*c2 + a1^2*c1*gamma");
    for (int k = 1; k <= 3; ++k) CHECK(d.D[k].to_string() == shown[k - 1].to_string());
    CHECK_FALSE(d.normalization.empty());
}

TEST_CASE("partial solution") {
    PartialSolutionReport r = check_partial_solution(1);
    CHECK(r.coefficient1_zero);
    CHECK(r.coefficient2_zero);
    CHECK(r.trivial_solution_vanishes);
    CHECK(r.random_specializations == 5);
    CHECK(r.random_nonzero == 5);
    CHECK_FALSE(r.coefficient3.is_zero());

    // independent recomputation in rational-function mode
    DefectSeries d = rigidity_defect(3);
    RatFunc g(P("a2^2*beta"), P("a1^2"));
    auto sub = [&](const MultiPoly& c) {
        MultiPoly m = c.substitute("c1", P("c2*beta"));
        RatFunc acc;
        for (int k = 0; k <= m.degree("gamma"); ++k) {
            RatFunc term(m.coefficient("gamma", k), MultiPoly(1));
            for (int j = 0; j < k; ++j) term = term * g;
            acc += term;
        }
        return acc;
    };
    CHECK(sub(d.D[1]).is_zero());
    CHECK(sub(d.D[2]).is_zero());
    RatFunc c3 = sub(d.D[3]);
    CHECK_FALSE(c3.is_zero());
    CHECK(c3 == RatFunc(r.coefficient3, P("a1^2")));
}

TEST_CASE("table cases") {
    CHECK(table_case_ids().size() == 4);
    for (const auto& id : table_case_ids()) {
        TableCaseReport r = verify_table_case(id, 1, 25);
        INFO(id);
        CHECK(r.ok());
        CHECK(r.violations_tested == 25);
        CHECK(r.n == table_case_degree(id));
    }
    CHECK(table_case_degree("c1_zero") == 13);
    CHECK(table_case_degree("beta_ratio") == 7);
    CHECK_THROWS_AS(verify_table_case("nope"), Error);
}

TEST_CASE("cube roots of unity and the dyadic group") {
    CHECK(cube_root_not_in_dyadic_group(20));
    // direct check: beta^(2^n) cycles through beta, beta^2 = -beta - 1
    MultiPoly m = P("beta^2 + beta + 1"), b = P("beta");
    for (int n = 1; n <= 20; ++n) {
        b = (b * b).reduce_mod("beta", m);
        CHECK(b != MultiPoly(1));
    }
}

TEST_CASE("golden file") {
    std::ifstream in(HENON_GOLDEN_FILE);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    DefectSeries d = rigidity_defect(13);
    CHECK(serialize(d.D) == ss.str());
}
