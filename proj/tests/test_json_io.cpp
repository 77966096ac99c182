#include <doctest.h>

#include "pvi/json_io.hpp"

using namespace pvi;

TEST_CASE("complex parsing") {
    CHECK(parse_complex("1.5") == Complex(1.5, 0));
    CHECK(parse_complex("-2i") == Complex(0, -2));
    CHECK(parse_complex("3-0.25i") == Complex(3, -0.25));
    CHECK(parse_complex("1e-3+2j") == Complex(1e-3, 2));
    CHECK(parse_complex(" i ") == Complex(0, 1));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+"), std::invalid_argument);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("2/7") == Rational(2, 7));
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(parse_rational("12") == Rational(12));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK_FALSE(parse_rational("1e-3").has_value());
    CHECK_FALSE(parse_rational("1+2i").has_value());
    CHECK_FALSE(parse_rational("1/0").has_value());
}

TEST_CASE("scalar conversions") {
    CHECK(complex_from_json(Json(2.5)) == Complex(2.5));
    CHECK(complex_from_json(Json::array({1.0, -2.0})) == Complex(1, -2));
    CHECK(complex_from_json(Json("1-2i")) == Complex(1, -2));
    CHECK(complex_from_json(complex_to_json(Complex(0.1, 0.7))) == Complex(0.1, 0.7));
    const BigInt big("41473935220454921602871195774259272006");
    CHECK(big_to_json(big).is_string());
    CHECK(big_from_json(big_to_json(big)) == big);
    CHECK(big_from_json(Json(17)) == 17);
}

TEST_CASE("kappa from JSON") {
    const KappaPoint exact = kappa_from_json(Json::array({"1/3", "2/7", "1/5", 0}));
    CHECK(exact.exact.has_value());
    CHECK(to_json(exact).at("exact") == Json::array({"1/3", "2/7", "1/5", "0"}));
    const KappaPoint approx = kappa_from_json(Json::array({0.25, "2/7", "1/5", "1/11"}));
    CHECK_FALSE(approx.exact.has_value());
    CHECK(kappa_from_json(Json::array({0.0, 0.25, 0.25, 0.25, 0.25})).constraint_residual() < 1e-15);
    CHECK_THROWS_AS(kappa_from_json(Json::array({1, 2})), std::invalid_argument);
}

TEST_CASE("wall report round trip") {
    const KappaPoint k = KappaPoint::from_rationals({Rational(1, 2), Rational(-1, 4), Rational(3, 8), Rational(-5, 8)});
    const WallReport r = wall_membership(k, WallMode::Exact);
    const WallReport back = wall_report_from_json(to_json(r));
    CHECK(back.on_wall == r.on_wall);
    REQUIRE(back.witnesses.size() == r.witnesses.size());
    CHECK(back.witnesses[0].signs == r.witnesses[0].signs);
    CHECK(back.witnesses[0].m == r.witnesses[0].m);
    CHECK(to_json(back) == to_json(r));
}

TEST_CASE("count report round trip") {
    CountReport r;
    r.N = 2;
    r.closed_form = 22;
    r.found = 1;
    r.cycles = 1;
    r.orbit_closed = true;
    r.status = SolveStatus::Saturated;
    r.seeds = 10;
    r.converged = 7;
    r.escaped = 2;
    r.stalled = 1;
    r.new_per_batch = {1, 0};
    PeriodicCluster c;
    c.point.x = {Complex(0.5, 1), Complex(-1, 0), Complex(2, 0.25)};
    c.point.residual = 1e-13;
    c.point.on_surface = true;
    c.cn_residual = 2e-14;
    c.e2 = Complex(3, -1);
    c.minimal_period = 2;
    c.orbit = 0;
    c.hits = 7;
    r.clusters.push_back(c);
    const Json j = to_json(r);
    CHECK(j.at("status") == "saturated");
    CHECK(j.at("points").size() == 1);
    const CountReport back = count_report_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.clusters[0].point.x == c.point.x);
    CHECK(back.clusters[0].e2 == c.e2);
}

TEST_CASE("lattice and line round trips") {
    const LatticeEndo c = coxeter_star();
    CHECK(endo_from_json(to_json(c)) == c);
    const LatticeEndo big = matrix_power(c, 40);
    CHECK(endo_from_json(to_json(big)) == big);
    CHECK(poly_to_json(charpoly(c)).size() == 8);

    const EigenParams b({Complex(2), Complex(3), Complex(5), Complex(7)});
    const ProjectiveLine l = line_from_params(3, 6, b);
    const ProjectiveLine back = line_from_json(to_json(l));
    CHECK(back.f1 == l.f1);
    CHECK(back.f2 == l.f2);
    CHECK(back.label->str() == l.label->str());
    CHECK(back.slot->slot == 6);
    CHECK(to_json(tritangent_line(2)).at("label") == "F34");
}

TEST_CASE("parameter objects") {
    const ThetaPoint th = theta_from_json(Json::array({0.5, "1-2i", 0, 3}));
    CHECK(th.theta[1] == Complex(1, -2));
    CHECK(theta_from_json(to_json(th)).theta == th.theta);
    const EigenParams b = eigen_from_json(Json::array({2, 3, 5, 7}));
    CHECK(eigen_from_json(to_json(b)).b == b.b);
    CHECK_THROWS_AS(theta_from_json(Json::array({1, 2, 3})), std::invalid_argument);
}
