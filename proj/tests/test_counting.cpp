#include <doctest.h>

#include "pvi/counting.hpp"
#include "pvi/lattice.hpp"

using namespace pvi;

namespace {

const KappaPoint kKappa =
    KappaPoint::from_rationals({Rational(3, 17), Rational(-5, 23), Rational(7, 29), Rational(2, 31)});

SolverConfig small_config(long long seeds) {
    SolverConfig cfg;
    cfg.seeds = seeds;
    return cfg;
}

}  // namespace

TEST_CASE("Lefschetz numbers") {
    const long long expected[] = {2, 24, 74, 328};
    for (unsigned N = 1; N <= 4; ++N) {
        const LefschetzValue v = lefschetz_number(N);
        CHECK(v.from_traces == expected[N - 1]);
        CHECK(v.closed_form == expected[N - 1]);
        CHECK(v.closed_real == doctest::Approx(static_cast<double>(expected[N - 1])));
    }
    CHECK_THROWS_AS(lefschetz_number(0), std::invalid_argument);
}

TEST_CASE("periodic point counts") {
    const long long affine[] = {0, 22, 72, 326};
    for (unsigned N = 1; N <= 4; ++N) {
        CHECK(per_count_closed(N, Space::Affine) == affine[N - 1]);
        CHECK(per_count_closed(N, Space::Projective) == affine[N - 1] + 1);
    }
    CHECK(per_count_closed(10, Space::Affine) == 1860502);
    CHECK(per_count_closed(30, Space::Affine) == BigInt("6440026026380244502"));
    CHECK(per_kappa_closed(1) == 22);
    CHECK(per_kappa_closed(2) == 326);
    CHECK(per_kappa_closed(4) == 103686);
    CHECK(per_kappa_closed(10) == BigInt("3461452808006"));
    CHECK(per_kappa_closed(30) == BigInt("41473935220454921602871195774259272006"));
    // affine counts are the traces of (c*)^N
    for (unsigned N = 1; N <= 30; ++N) CHECK(per_count_closed(N, Space::Affine) == trace_power(coxeter_star(), N));
    CHECK(parse_space("projective") == Space::Projective);
    CHECK(to_string(Space::Affine) == "affine");
    CHECK_THROWS_AS(parse_space("torus"), std::invalid_argument);
}

TEST_CASE("sequences") {
    CHECK(s_sequence(0) == 2);
    CHECK(s_sequence(3) == 76);
    CHECK(c_sequence(1) == 18);
    CHECK(c_sequence(2) == 322);
    CHECK(surd_power_trace(2, 1, 3) == 76);
    CHECK(surd_power_trace(9, 4, 2) == 322);
}

TEST_CASE("zeta function coefficients") {
    const std::vector<long long> expected = {1, 22, 405, 7288, 130814, 2347420, 42122830, 755863640, 13563422855,
                                             243385747970, 4367380040891, 78369454988432, 1406282809751340};
    const auto z = zeta_coefficients(12);
    REQUIRE(z.size() == expected.size());
    for (std::size_t n = 0; n < expected.size(); ++n) CHECK(z[n] == expected[n]);
    CHECK(zeta_coefficients_exp(12) == z);
}

TEST_CASE("all count identities hold up to N = 30") {
    const VerifyReport r = verify_counts(30);
    CHECK(r.ok);
    CHECK(r.rows.size() == 30);
    CHECK(r.zeta_order == 12);
    CHECK(r.rows[1].per_kappa == 326);
}

TEST_CASE("solver configuration") {
    CHECK(SolverConfig::defaults_for(2).seeds == 20000);
    CHECK(SolverConfig::defaults_for(3).seeds == 200000);
    SolverConfig cfg;
    cfg.dedup_radius = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.batches = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("solver: no fixed points") {
    const CountReport r = solve_periodic(rh_params(kKappa), 1, small_config(2000), kappa_to_eigen(kKappa));
    CHECK(r.found == 0);
    CHECK(r.closed_form == 0);
    CHECK(r.status == SolveStatus::Complete);
    CHECK(r.escaped + r.stalled + r.converged + r.rejected == r.seeds);
}

TEST_CASE("solver: period 2") {
    const CountReport r = solve_periodic(rh_params(kKappa), 2, small_config(20000), kappa_to_eigen(kKappa));
    CHECK(r.found == 22);
    CHECK(r.cycles == 11);
    CHECK(r.orbit_closed);
    CHECK(r.multiplicity_flags == 0);
    CHECK(r.status == SolveStatus::Complete);
    for (const auto& c : r.clusters) {
        CHECK(c.point.on_surface);
        CHECK(c.cn_residual < 1e-10);
        CHECK(c.minimal_period == 2);
    }
}

TEST_CASE("solver: period 3") {
    const CountReport r = solve_periodic(rh_params(kKappa), 3, small_config(20000), kappa_to_eigen(kKappa));
    CHECK(r.found == 72);
    CHECK(r.cycles == 24);
    CHECK(r.status == SolveStatus::Complete);
}

TEST_CASE("solver results do not depend on the thread count") {
    SolverConfig a = small_config(3000), b = small_config(3000);
    b.threads = 3;
    const ThetaPoint th = rh_params(kKappa);
    const CountReport ra = solve_periodic(th, 2, a), rb = solve_periodic(th, 2, b);
    REQUIRE(ra.found == rb.found);
    CHECK(ra.new_per_batch == rb.new_per_batch);
    for (std::size_t n = 0; n < ra.clusters.size(); ++n) {
        CHECK(ra.clusters[n].point.x == rb.clusters[n].point.x);
        CHECK(ra.clusters[n].hits == rb.clusters[n].hits);
    }
    CHECK_FALSE(ra.warning.empty());
}

TEST_CASE("solver refuses nongeneric parameters") {
    const KappaPoint k = KappaPoint::from_rationals({Rational(1, 2), Rational(1, 3), Rational(0), Rational(1, 5)});
    CHECK_THROWS_WITH_AS(solve_periodic(rh_params(k), 2, small_config(100), kappa_to_eigen(k)),
                         "nongeneric parameters: the surface is singular", NongenericParameters);
}
