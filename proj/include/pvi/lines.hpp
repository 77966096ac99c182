#pragma once

// The 27 lines on the projective closure
//
//   F(X) = X1 X2 X3 + X0 (X1^2 + X2^2 + X3^2) - X0^2 (theta1 X1 + theta2 X2 + theta3 X3) + theta4 X0^3
//
// in b-coordinates: the triangle L_1, L_2, L_3 at infinity and, for each
// group i, eight lines L_i(p, q; r, s) cut out by
//
//   X_i - (pq + 1/(pq)) X0,   X_j + pq X_k - {p (s + 1/s) + q (r + 1/r)} X0.

#include <optional>
#include <string>
#include <vector>

#include "pvi/lattice.hpp"
#include "pvi/numeric.hpp"
#include "pvi/params.hpp"

namespace pvi {

using ProjVec = std::array<Complex, 4>;

struct ProjectivePoint {
    ProjVec X{};

    /// Scales so the largest-modulus coordinate is exactly 1. Throws
    /// std::invalid_argument on the zero vector.
    static ProjectivePoint from(const ProjVec& v);

    /// Distance between normalized representatives.
    double distance(const ProjectivePoint& o) const;
};

Complex homogeneous_cubic(const ProjVec& X, const ThetaPoint& theta);

/// Which group (1..3) and slot (1..8) of the eight-line table produced a line.
struct LineSlot {
    int group = 1;
    int slot = 1;
};

struct ProjectiveLine {
    ProjVec f1{};
    ProjVec f2{};
    std::optional<LineLabel> label;
    std::optional<LineSlot> slot;

    /// Throws std::invalid_argument("degenerate line") unless the two forms
    /// have rank 2 after normalization.
    static ProjectiveLine make(const ProjVec& f1, const ProjVec& f2);
};

struct SpecialPoint {
    std::string name;
    ProjectivePoint coords;
};

/// p1, p2, p3, q1, q2, q3; throws std::invalid_argument on other names.
SpecialPoint special_point(const std::string& name);
std::vector<SpecialPoint> special_points();

/// X0 = X_i = 0.
ProjectiveLine tritangent_line(int i);

/// L_i(p, q; r, s) with no label attached.
ProjectiveLine line_from_args(int i, Complex p, Complex q, Complex r, Complex s);

/// Slot order within group i (cyclic (i, j, k)):
///   1 (b_i, b_4; b_j, b_k)      2 (1/b_i, 1/b_4; b_j, b_k)
///   3 (b_j, b_k; b_i, b_4)      4 (1/b_j, 1/b_k; b_i, b_4)
///   5 (1/b_i, b_4; b_j, b_k)    6 (b_i, 1/b_4; b_j, b_k)
///   7 (1/b_j, b_k; b_i, b_4)    8 (b_j, 1/b_k; b_i, b_4)
/// Consecutive odd/even slots form the four intersecting pairs.
ProjectiveLine line_from_params(int i, int slot, const EigenParams& b);

/// Label metadata: slots 1..4 of group i are E_p, G_q, E_q, G_p with
/// (p, q) = (2i-1, 2i); slots 5..8 are F_{j2 k2}, F_{j1 k1}, F_{j1 k2},
/// F_{j2 k1} for the index pairs (j1, j2), (k1, k2) of the other groups.
/// This is the only F assignment under which all 27 x 27 incidences agree
/// with the lattice intersection numbers.
LineLabel slot_label(int i, int slot);

/// The 24 table lines, group-major, followed by L_1, L_2, L_3.
std::vector<ProjectiveLine> all_lines(const EigenParams& b);

/// Two spanning points of the line, orthonormal.
std::array<ProjVec, 2> line_basis(const ProjectiveLine& line);

/// Points with X0 = 1 on an affine line, at free parameter values t.
/// Throws std::invalid_argument for a line contained in X0 = 0.
std::vector<Vec3<Complex>> affine_points(const ProjectiveLine& line, const std::vector<double>& ts);

struct SurfaceCheck {
    bool on_surface = false;
    double max_residual = 0.0;
};

/// Samples the line at four finite points and one point at infinity; the
/// residual at X is |F(X)| / (1 + |X|^3).
SurfaceCheck line_on_surface(const ProjectiveLine& line, const ThetaPoint& theta, double tol = 1e-8);

enum class IntersectionKind { Point, Disjoint, Equal };

struct LineIntersection {
    IntersectionKind kind = IntersectionKind::Disjoint;
    std::optional<ProjectivePoint> point;
};

LineIntersection lines_intersection(const ProjectiveLine& a, const ProjectiveLine& b,
                                    double rank_tol = 1e-9);

std::string to_string(IntersectionKind k);

struct SwapCheck {
    int sigma = 1;
    LineLabel source;
    LineLabel target;
    double residual = 0.0;
};

struct QuadraticCheck {
    int sigma = 1;
    std::array<Complex, 2> roots{};
    /// Residual of both roots against E_i and against sigma_i(E_i).
    double residual = 0.0;
    /// The point of sigma_i(E_i) on E_j and its determinant b_j b_k - b_i b_4.
    Vec3<Complex> ej_point{};
    Complex determinant{};
    double ej_residual = 0.0;
};

struct SigmaLineReport {
    std::vector<SwapCheck> swaps;
    std::vector<QuadraticCheck> quadratics;
    double max_residual = 0.0;
    bool ok = false;
};

inline constexpr double kGeneralPositionTol = 1e-9;

/// Each sigma_i exchanges the E/G pairs of the two other groups and meets
/// E_i in two points and E_j in one. Throws std::invalid_argument("lines
/// not in general position") near the discriminant locus.
SigmaLineReport verify_sigma_line_action(const EigenParams& b, double tol = 1e-8);

}  // namespace pvi
