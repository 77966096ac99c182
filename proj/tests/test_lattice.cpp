#include <doctest.h>

#include <cmath>

#include "pvi/lattice.hpp"

using namespace pvi;

TEST_CASE("intersection form and line classes") {
    const auto labels = all_line_labels();
    REQUIRE(labels.size() == 27);
    for (const auto& a : labels) {
        CHECK(intersection(class_of(a), class_of(a)) == -1);
        // anticanonical degree 1: (L, 3E0 - sum E_a) = 1
        CohomClass k = CohomClass::basis(0) * 3;
        for (int b = 1; b <= 6; ++b) k = k - CohomClass::basis(b);
        CHECK(intersection(class_of(a), k) == 1);
        int meets = 0;
        for (const auto& b : labels) meets += !(a == b) && intersection(class_of(a), class_of(b)) == 1;
        CHECK(meets == 10);
    }
    CHECK(intersection(class_of(LineLabel::E(1)), class_of(LineLabel::G(2))) == 1);
    CHECK(intersection(class_of(LineLabel::E(1)), class_of(LineLabel::G(1))) == 0);
    CHECK(intersection(class_of(LineLabel::F(1, 2)), class_of(LineLabel::F(3, 4))) == 1);
    CHECK(intersection(class_of(LineLabel::F(1, 2)), class_of(LineLabel::F(1, 3))) == 0);
    CHECK(LineLabel::F(4, 2).str() == "F24");
    CHECK_THROWS_AS(LineLabel::F(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(LineLabel::E(7), std::invalid_argument);
    // the lines at infinity form a triangle
    for (int a = 1; a <= 3; ++a) {
        for (int b = a + 1; b <= 3; ++b) {
            CHECK(intersection(line_at_infinity_class(a), line_at_infinity_class(b)) == 1);
        }
    }
}

TEST_CASE("reconstructed involutions equal the golden matrices") {
    for (int i = 1; i <= 3; ++i) {
        CHECK(reconstruct_sigma_star(i) == printed_sigma_star(i));
        CHECK_NOTHROW(sigma_star(i));
    }
    CHECK(coxeter_star() == printed_coxeter_star());
    // sigma_1* sigma_2* sigma_3* is a different matrix: the order matters
    CHECK_FALSE(sigma_star(1) * sigma_star(2) * sigma_star(3) == printed_coxeter_star());
    CHECK_THROWS_AS(reconstruct_sigma_star(4), std::invalid_argument);
}

TEST_CASE("structure of sigma_i*") {
    for (int i = 1; i <= 3; ++i) {
        const LatticeEndo s = sigma_star(i);
        const int p = 2 * i - 1, q = 2 * i;
        // blows down L_i and is self-adjoint for the form
        CHECK((s * line_at_infinity_class(i)).is_zero());
        for (int a = 0; a < kLatticeRank; ++a) {
            for (int b = 0; b < kLatticeRank; ++b) {
                CHECK(intersection(s * CohomClass::basis(a), CohomClass::basis(b)) ==
                      intersection(CohomClass::basis(a), s * CohomClass::basis(b)));
            }
        }
        // exchanges E_r and G_s for the two other pairs
        for (int pair = 1; pair <= 3; ++pair) {
            if (pair == i) continue;
            CHECK(s * class_of(LineLabel::E(2 * pair - 1)) == class_of(LineLabel::G(2 * pair)));
            CHECK(s * class_of(LineLabel::E(2 * pair)) == class_of(LineLabel::G(2 * pair - 1)));
        }
        CHECK(s.entries[p][p] == -2);
        CHECK(s.entries[q][p] == -1);
        // sigma*^3 = sigma*, sigma*^2 - I has rank 1
        CHECK(s * s * s == s);
        const LatticeEndo d = s * s - LatticeEndo::identity();
        std::vector<CohomClass> cols;
        for (int b = 0; b < kLatticeRank; ++b) cols.push_back(d.column(b));
        CHECK(class_rank(cols) == 1);
        // charpoly x (x - 1)^2 (x + 1)^4
        const IntPoly expected = poly_mul(poly_mul(IntPoly{0, 1}, poly_pow({-1, 1}, 2)), poly_pow({1, 1}, 4));
        CHECK(charpoly(s) == expected);
    }
    const LatticeEndo sq = sigma_star(1) * sigma_star(1);
    const LatticeEndo expected_sq = LatticeEndo::from_rows({{
        {2, 1, 1, 0, 0, 0, 0},
        {-1, 0, -1, 0, 0, 0, 0},
        {-1, -1, 0, 0, 0, 0, 0},
        {0, 0, 0, 1, 0, 0, 0},
        {0, 0, 0, 0, 1, 0, 0},
        {0, 0, 0, 0, 0, 1, 0},
        {0, 0, 0, 0, 0, 0, 1},
    }});
    CHECK(sq == expected_sq);
}

TEST_CASE("characteristic polynomial of c*") {
    const IntPoly p = charpoly(coxeter_star());
    const IntPoly expected{0, -1, -8, -21, -24, -11, 0, 1};
    CHECK(p == expected);
    CHECK(p == poly_mul(poly_mul(IntPoly{0, 1}, poly_pow({1, 1}, 4)), IntPoly{-1, -4, 1}));
    CHECK(poly_to_string(p) == "x^7 - 11x^5 - 24x^4 - 21x^3 - 8x^2 - x");
    IntPoly rest = p;
    CHECK(strip_factor(rest, {0, 1}) == 1);
    CHECK(strip_factor(rest, {1, 1}) == 4);
    CHECK(strip_factor(rest, {-1, 1}) == 0);
    CHECK(rest == IntPoly{-1, -4, 1});
    CHECK(charpoly(LatticeEndo::identity()) == poly_pow({-1, 1}, 7));
}

TEST_CASE("spectral radius") {
    CHECK(std::abs(spectral_radius(coxeter_star()) - (2.0 + std::sqrt(5.0))) < 1e-12);
    CHECK(std::abs(spectral_radius(sigma_star(2)) - 1.0) < 1e-12);
    CHECK(std::abs(max_root_modulus({-2, 0, 1}) - std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("traces of powers of c*") {
    const LatticeEndo c = coxeter_star();
    const long long expected[] = {7, 0, 22, 72, 326, 1360, 5782, 24472};
    for (unsigned n = 0; n < 8; ++n) CHECK(trace_power(c, n) == expected[n]);
    CHECK(trace_power(c, 30) == BigInt("6440026026380244502"));
    CHECK(trace_power(c, 60) == BigInt("41473935220454921602871195774259272006"));
    CHECK(matrix_power(c, 5) == c * c * c * c * c);
}

TEST_CASE("kernel and eigenvectors of c*") {
    const LatticeEndo c = coxeter_star();
    CHECK((c * line_at_infinity_class(1)).is_zero());
    CHECK((sigma_star(2) * line_at_infinity_class(2)).is_zero());
    CHECK((sigma_star(3) * line_at_infinity_class(3)).is_zero());
    const EigenvectorReport r = eigenvector_checks();
    CHECK(r.ok);
    CHECK(r.checks.size() == 4 + 12 + 6 + 1);
    for (const auto& ch : r.checks) CHECK(ch.ok);
}
