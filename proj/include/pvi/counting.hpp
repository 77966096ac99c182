#pragma once

// Periodic-point counts for the Coxeter map c: exact closed forms via
// integer recurrences and lattice traces, the dynamical zeta function, and
// a multistart solver that finds the periodic points numerically.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvi/numeric.hpp"
#include "pvi/params.hpp"
#include "pvi/surface.hpp"

namespace pvi {

enum class Space { Affine, Projective };

std::string to_string(Space s);
Space parse_space(const std::string& s);

/// s_0 = 2, s_1 = 4, s_{n+2} = 4 s_{n+1} + s_n, i.e. (2+sqrt5)^n + (2-sqrt5)^n.
BigInt s_sequence(unsigned n);
/// C_0 = 2, C_1 = 18, C_{n+2} = 18 C_{n+1} - C_n, i.e. (9+4sqrt5)^n + (9-4sqrt5)^n.
BigInt c_sequence(unsigned n);
/// 2u where (u0 + v0 sqrt5)^n = u + v sqrt5, computed in Z[sqrt5].
BigInt surd_power_trace(long long u0, long long v0, unsigned n);

struct LefschetzValue {
    /// 1 + trace((c*)^N) + 1.
    BigInt from_traces;
    /// s_N + 4(-1)^N + 2.
    BigInt closed_form;
    /// Floating evaluation of the closed form.
    double closed_real = 0.0;
};

/// Throws std::invalid_argument for N < 1.
LefschetzValue lefschetz_number(unsigned N);

BigInt per_count_closed(unsigned N, Space space);

/// C_N + 4.
BigInt per_kappa_closed(unsigned N);

/// Taylor coefficients z^0..z^order of 1/((1-z)^4 (1-18z+z^2)), checked
/// against exp(sum per_kappa_closed(N) z^N / N). Throws std::logic_error if
/// the two disagree.
std::vector<BigInt> zeta_coefficients(unsigned order);

/// The same coefficients from the exponential recurrence alone.
std::vector<BigInt> zeta_coefficients_exp(unsigned order);

struct VerifyRow {
    unsigned N = 0;
    BigInt lefschetz_traces;
    BigInt lefschetz_closed;
    BigInt per_kappa;
    BigInt per_2n_affine;
    BigInt surd_form;
    BigInt c_n;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    unsigned zeta_order = 0;
    bool ok = false;
};

/// Thrown by verify_counts at the first N where an identity fails.
struct CountMismatch : std::runtime_error {
    unsigned N;
    CountMismatch(unsigned n, const std::string& what);
};

VerifyReport verify_counts(unsigned n_max);

// ---- numerical solver ----------------------------------------------------

struct SolverConfig {
    long long seeds = 20000;
    std::uint64_t rng_seed = 1;
    int newton_max_iter = 100;
    double newton_tol = 1e-10;
    /// Relative to 1 + |x|.
    double dedup_radius = 1e-6;
    double surface_tol = kSurfaceTol;
    int saturation_batches = 5;
    double escape_radius = kEscapeRadius;
    int batches = 10;
    /// Seeds are uniform in [-seed_box, seed_box]^2 per complex coordinate.
    double seed_box = 10.0;
    /// |e2(I - D c^N)| below this flags a possibly multiple root.
    double multiplicity_tol = 1e-6;
    int threads = 1;

    /// Defaults with 20000 seeds for N <= 2 and 200000 beyond.
    static SolverConfig defaults_for(unsigned N);
    /// Throws std::invalid_argument naming the first non-positive field.
    void validate() const;
};

struct PeriodicCluster {
    AffinePoint point;
    /// |c^N(x) - x| / (1 + |x|).
    double cn_residual = 0.0;
    /// Sum of principal 2x2 minors of I - D c^N. The full determinant
    /// vanishes because c preserves every level set of f; e2 is the
    /// determinant along the surface.
    Complex e2{};
    bool multiplicity_flag = false;
    int minimal_period = 0;
    int orbit = -1;
    long long hits = 0;
};

enum class SolveStatus { Complete, Saturated, Partial };

std::string to_string(SolveStatus s);

struct CountReport {
    unsigned N = 0;
    BigInt closed_form;
    long long found = 0;
    std::vector<PeriodicCluster> clusters;
    long long cycles = 0;
    bool orbit_closed = false;
    long long multiplicity_flags = 0;
    SolveStatus status = SolveStatus::Partial;

    long long seeds = 0;
    long long converged = 0;
    long long escaped = 0;
    long long stalled = 0;
    long long rejected = 0;
    /// New clusters contributed by each batch, in seed order.
    std::vector<long long> new_per_batch;
    std::string warning;
};

/// Refusal for parameters on the discriminant locus.
struct NongenericParameters : std::domain_error {
    NongenericParameters();
};

/// Finds the points of S(theta) of period dividing N. Unknowns are the
/// orbit sequence s_0..s_{3N-1} of coordinates (x = (s_2, s_1, s_0)) under
/// the three involutions, closed up cyclically, together with f(x) = 0.
/// With b supplied, refuses nongeneric parameters; without it a warning is
/// recorded instead.
CountReport solve_periodic(const ThetaPoint& theta, unsigned N, const SolverConfig& cfg,
                           const std::optional<EigenParams>& b = std::nullopt);

}  // namespace pvi
