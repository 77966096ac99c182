#pragma once

// Parameter spaces of the sixth Painleve equation and the maps between them:
//
//   kappa (5 entries, 2k0 + k1 + k2 + k3 + k4 = 1)
//     -> monodromy traces a      a_i = 2cos(pi k_i), a_4 = -2cos(pi k_4)
//     -> eigenvalues b           b_i = exp(i pi k_i), b_4 = -exp(i pi k_4)
//     -> cubic coefficients theta
//
// plus the discriminant of the cubic surface in b-coordinates and the
// affine Weyl group wall test.

#include <optional>
#include <stdexcept>
#include <vector>

#include "pvi/numeric.hpp"

namespace pvi {

struct KappaPoint {
    /// kappa[0] is kappa_0; kappa[1..4] are kappa_1..kappa_4.
    std::array<Complex, 5> kappa{};
    /// Exact kappa_1..kappa_4 when the point was built from rationals.
    std::optional<std::array<Rational, 4>> exact;

    /// Builds from all five entries; throws std::invalid_argument if the
    /// linear constraint is violated by more than 1e-12.
    static KappaPoint from_full(const std::array<Complex, 5>& k);
    /// kappa_0 is reconstructed from the constraint.
    static KappaPoint from_tail(const std::array<Complex, 4>& k1to4);
    static KappaPoint from_rationals(const std::array<Rational, 4>& k1to4);

    const Complex& operator[](std::size_t i) const { return kappa[i]; }
    double constraint_residual() const;
};

struct MonodromyTraces {
    std::array<Complex, 4> a{};
};

struct EigenParams {
    std::array<Complex, 4> b{};

    EigenParams() : b{Complex(1), Complex(1), Complex(1), Complex(1)} {}
    /// Throws std::invalid_argument on a zero entry.
    explicit EigenParams(const std::array<Complex, 4>& values);
};

struct ThetaPoint {
    std::array<Complex, 4> theta{};
};

enum class WallRelation { KappaInteger, SignedSumOdd };

struct WallWitness {
    WallRelation kind = WallRelation::KappaInteger;
    /// kappa index 1..4 for KappaInteger, 0 otherwise.
    int index = 0;
    /// Signs of (kappa_1, ..., kappa_4) for SignedSumOdd; signs[0] is always +1.
    std::array<int, 4> signs{1, 1, 1, 1};
    long long m = 0;
    double residual = 0.0;
};

struct WallReport {
    bool on_wall = false;
    std::vector<WallWitness> witnesses;
};

enum class WallMode { Exact, Tolerant };

inline constexpr double kDefaultWallTol = 1e-9;

MonodromyTraces kappa_to_traces(const KappaPoint& kappa);
EigenParams kappa_to_eigen(const KappaPoint& kappa);
MonodromyTraces traces_from_eigen(const EigenParams& b);
ThetaPoint traces_to_theta(const MonodromyTraces& a);
ThetaPoint rh_params(const KappaPoint& kappa);

/// Product of (b_l - 1/b_l)^2 over l and of (b^eps - 1) over the 16 sign
/// patterns eps.
Complex discriminant(const EigenParams& b);

/// Smallest modulus among the 20 factors of the discriminant. Zero exactly
/// when the discriminant vanishes, but scale-free, so it is the quantity to
/// threshold when deciding general position.
double discriminant_min_factor(const EigenParams& b);

/// Throws std::invalid_argument("exact mode requires rational κ") in exact
/// mode when kappa carries no rational representation.
WallReport wall_membership(const KappaPoint& kappa, WallMode mode,
                           double tol = kDefaultWallTol);

std::string to_string(WallRelation r);

}  // namespace pvi
