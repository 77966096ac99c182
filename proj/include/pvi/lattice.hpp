#pragma once

// Exact arithmetic on H^2 of the compactified cubic surface, the rank-7
// Lorentz lattice with basis (E0, E1, ..., E6) and form diag(1, -1, ..., -1).
// Index convention: the lines at infinity are L_1 = F_12, L_2 = F_34,
// L_3 = F_56, and sigma_a blows down L_a.

#include <string>
#include <vector>

#include "pvi/numeric.hpp"

namespace pvi {

inline constexpr int kLatticeRank = 7;

struct CohomClass {
    std::array<BigInt, kLatticeRank> coeffs{};

    static CohomClass basis(int a);
    static CohomClass from_ints(const std::array<long long, kLatticeRank>& v);

    CohomClass operator+(const CohomClass& o) const;
    CohomClass operator-(const CohomClass& o) const;
    CohomClass operator-() const;
    CohomClass operator*(const BigInt& s) const;
    bool operator==(const CohomClass& o) const = default;
    bool is_zero() const;
    std::string str() const;
};

/// entries[a][b] is the E_a coefficient of the image of E_b, so column b
/// is the image of E_b.
struct LatticeEndo {
    std::array<std::array<BigInt, kLatticeRank>, kLatticeRank> entries{};

    static LatticeEndo identity();
    static LatticeEndo zero();
    static LatticeEndo from_rows(const std::array<std::array<long long, kLatticeRank>, kLatticeRank>& rows);

    LatticeEndo operator*(const LatticeEndo& o) const;
    LatticeEndo operator-(const LatticeEndo& o) const;
    CohomClass operator*(const CohomClass& v) const;
    bool operator==(const LatticeEndo& o) const = default;

    CohomClass column(int b) const;
    BigInt trace() const;
};

BigInt intersection(const CohomClass& u, const CohomClass& v);

struct LineLabel {
    enum class Kind { E, G, F };
    Kind kind = Kind::E;
    int a = 1;
    /// Second index, F only.
    int b = 0;

    static LineLabel E(int a);
    static LineLabel G(int a);
    /// Throws std::invalid_argument unless 1 <= a, b <= 6 and a != b.
    static LineLabel F(int a, int b);

    bool operator==(const LineLabel& o) const = default;
    std::string str() const;
};

CohomClass class_of(const LineLabel& label);

/// The 27 lines: E_1..E_6, F_ab (a < b), G_1..G_6.
std::vector<LineLabel> all_line_labels();

/// Class of the line at infinity L_a (a = 1, 2, 3).
CohomClass line_at_infinity_class(int a);

/// Golden copies of the printed matrices of sigma_1*, sigma_2*, sigma_3*, c*.
const LatticeEndo& printed_sigma_star(int i);
const LatticeEndo& printed_coxeter_star();

/// Rebuilds sigma_i* from the intersection data of the involution alone:
/// own-pair entries (-2, -1), the swapped columns G_q for each swapped pair,
/// the adjointness xi_ab = delta_a delta_b xi_ba and the blow-down relation
/// sigma_i* (E0 - E_p - E_q) = 0.
LatticeEndo reconstruct_sigma_star(int i);

/// Reconstructed matrix, checked against the golden copy. Throws
/// std::logic_error on disagreement.
LatticeEndo sigma_star(int i);

/// sigma_3* . sigma_2* . sigma_1* (pull-back of c = sigma_1 o sigma_2 o sigma_3),
/// checked against the golden copy.
LatticeEndo coxeter_star();

/// Integer polynomial, coefficients lowest degree first.
using IntPoly = std::vector<BigInt>;

/// det(xI - m), division-free (Samuelson-Berkowitz).
IntPoly charpoly(const LatticeEndo& m);

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_pow(const IntPoly& a, int n);
std::string poly_to_string(const IntPoly& p);
/// Strips the monic factor d as often as it divides p exactly; returns the
/// multiplicity and leaves the cofactor in p.
int strip_factor(IntPoly& p, const IntPoly& d);

/// Largest root modulus of p (square-free part, companion eigenvalues,
/// Newton polish).
double max_root_modulus(const IntPoly& p);
double spectral_radius(const LatticeEndo& m);

LatticeEndo matrix_power(const LatticeEndo& m, unsigned n);
BigInt trace_power(const LatticeEndo& m, unsigned n);

/// Rank over Q of a list of classes.
int class_rank(const std::vector<CohomClass>& vs);

struct LatticeCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct EigenvectorReport {
    std::vector<LatticeCheck> checks;
    bool ok = false;
};

/// The (-1)-eigenvectors V0 = 2E0 - sum E_a, E1 - E2, E3 - E4, E5 - E6 of c*
/// and their orthogonality to the lines at infinity. Throws std::logic_error
/// naming the first failing identity.
EigenvectorReport eigenvector_checks();

}  // namespace pvi
