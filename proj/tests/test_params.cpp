#include <doctest.h>

#include <random>

#include "pvi/params.hpp"

using namespace pvi;

namespace {

KappaPoint sample_kappa() {
    return KappaPoint::from_rationals({Rational(1, 3), Rational(2, 7), Rational(1, 5), Rational(1, 11)});
}

}  // namespace

TEST_CASE("kappa_0 follows from the linear constraint") {
    const KappaPoint k = sample_kappa();
    CHECK(k[0].real() == doctest::Approx(0.045021645021645021645).epsilon(1e-15));
    CHECK(k.constraint_residual() < 1e-15);
    CHECK_THROWS_AS(KappaPoint::from_full({Complex(0.1), Complex(0.2), Complex(0.3), Complex(0.4), Complex(0.5)}),
                    std::invalid_argument);
    const KappaPoint f =
        KappaPoint::from_full({Complex(0.0), Complex(0.25), Complex(0.25), Complex(0.25), Complex(0.25)});
    CHECK(f.constraint_residual() < 1e-15);
}

TEST_CASE("traces and theta match the reference values") {
    const KappaPoint k = sample_kappa();
    const MonodromyTraces a = kappa_to_traces(k);
    const double a_ref[4] = {1.0, 1.2469796037174670611, 1.6180339887498948482, -1.9189859472289947798};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(a.a[i] - a_ref[i]) < 1e-14);

    const ThetaPoint th = rh_params(k);
    const double th_ref[4] = {0.098669434863741654913, -0.77490234726510522013, -1.8580048828324585873,
                              0.9836468619127191585};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(th.theta[i] - th_ref[i]) < 1e-13);
}

TEST_CASE("b-parameters reproduce the traces") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 0; n < 1000; ++n) {
        const KappaPoint k = KappaPoint::from_tail(
            {Complex(u(rng), 0.2 * u(rng)), Complex(u(rng), 0.2 * u(rng)), Complex(u(rng), 0.2 * u(rng)),
             Complex(u(rng), 0.2 * u(rng))});
        const MonodromyTraces direct = kappa_to_traces(k);
        const MonodromyTraces via_b = traces_from_eigen(kappa_to_eigen(k));
        for (int i = 0; i < 4; ++i) REQUIRE(std::abs(direct.a[i] - via_b.a[i]) < 1e-12 * (1 + std::abs(direct.a[i])));
    }
}

TEST_CASE("EigenParams rejects zero entries") {
    CHECK_THROWS_AS(EigenParams({Complex(1), Complex(0), Complex(2), Complex(3)}), std::invalid_argument);
}

TEST_CASE("discriminant at b = (2, 3, 5, 7)") {
    const EigenParams b({Complex(2), Complex(3), Complex(5), Complex(7)});
    const double ref = 156984606948820438272246784.0 / 223442335634765625.0;
    CHECK(std::abs(discriminant(b) - ref) < 1e-12 * ref);
    CHECK(discriminant_min_factor(b) == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("exact wall test") {
    SUBCASE("off the walls") {
        const WallReport r = wall_membership(sample_kappa(), WallMode::Exact);
        CHECK_FALSE(r.on_wall);
        CHECK(r.witnesses.empty());
    }
    SUBCASE("an integer kappa_i") {
        const KappaPoint k = KappaPoint::from_rationals({Rational(1, 2), Rational(1, 2), Rational(0), Rational(1, 3)});
        const WallReport r = wall_membership(k, WallMode::Exact);
        REQUIRE(r.on_wall);
        bool found = false;
        for (const auto& w : r.witnesses) {
            found |= w.kind == WallRelation::KappaInteger && w.index == 3 && w.m == 0;
        }
        CHECK(found);
    }
    SUBCASE("an odd signed sum") {
        const KappaPoint k =
            KappaPoint::from_rationals({Rational(1, 2), Rational(-1, 4), Rational(3, 8), Rational(-5, 8)});
        // only (+, -, -, -) gives an odd sum: 1/2 + 1/4 - 3/8 + 5/8 = 1
        const WallReport r = wall_membership(k, WallMode::Exact);
        REQUIRE(r.on_wall);
        REQUIRE(r.witnesses.size() == 1);
        CHECK(r.witnesses[0].kind == WallRelation::SignedSumOdd);
        CHECK(r.witnesses[0].signs == std::array<int, 4>{1, -1, -1, -1});
        CHECK(r.witnesses[0].m == 0);
    }
    SUBCASE("exact mode needs rationals") {
        const KappaPoint k = KappaPoint::from_tail({Complex(0.1), Complex(0.2), Complex(0.3), Complex(0.4)});
        CHECK_THROWS_AS(wall_membership(k, WallMode::Exact), std::invalid_argument);
    }
}

TEST_CASE("tolerant wall test agrees with the exact one on rationals") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 8);
    int on = 0;
    for (int n = 0; n < 500; ++n) {
        std::array<Rational, 4> q;
        for (auto& v : q) v = Rational(num(rng), den(rng));
        const KappaPoint k = KappaPoint::from_rationals(q);
        const bool exact = wall_membership(k, WallMode::Exact).on_wall;
        REQUIRE(exact == wall_membership(k, WallMode::Tolerant).on_wall);
        on += exact;
    }
    CHECK(on > 0);
    CHECK(on < 500);
}

TEST_CASE("walls are exactly where the discriminant vanishes (real kappa)") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> num(-30, 30);
    std::uniform_int_distribution<int> den(1, 6);
    for (int n = 0; n < 1000; ++n) {
        std::array<Rational, 4> q;
        for (auto& v : q) v = Rational(num(rng), den(rng));
        const KappaPoint k = KappaPoint::from_rationals(q);
        const bool on = wall_membership(k, WallMode::Exact).on_wall;
        const double minf = discriminant_min_factor(kappa_to_eigen(k));
        if (on) {
            REQUIRE(minf < 1e-12);
        } else {
            REQUIRE(minf > 1e-6);
        }
    }
}

TEST_CASE("tolerant mode handles complex kappa") {
    const KappaPoint off = KappaPoint::from_tail({Complex(0.3, 0.2), Complex(0.1, -0.1), Complex(0.7, 0.05), Complex(0.2)});
    CHECK_FALSE(wall_membership(off, WallMode::Tolerant).on_wall);
    const KappaPoint on = KappaPoint::from_tail({Complex(2.0, 1e-12), Complex(0.1, -0.1), Complex(0.7, 0.05), Complex(0.2)});
    CHECK(wall_membership(on, WallMode::Tolerant).on_wall);
    CHECK(to_string(WallRelation::KappaInteger) == "kappa_i_integer");
    CHECK(to_string(WallRelation::SignedSumOdd) == "signed_sum_odd");
}
