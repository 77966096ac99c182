#pragma once

// The affine cubic surface
//
//   f(x, theta) = x1 x2 x3 + x1^2 + x2^2 + x3^2 - theta1 x1 - theta2 x2 - theta3 x3 + theta4
//
// with the involutions sigma_i, the braid maps g_i (which also permute
// theta) and the Coxeter map c = sigma_1 o sigma_2 o sigma_3.
//
// The polynomial maps are templates so that the same code runs over
// complex doubles (solver, sampling) and over exact rationals (identity
// checks).

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pvi/numeric.hpp"
#include "pvi/params.hpp"

namespace pvi {

inline constexpr double kEscapeRadius = 1e8;
inline constexpr double kSurfaceTol = 1e-9;

/// 0-based indices of the cyclic triple (i, j, k) starting at i in 1..3.
struct CyclicTriple {
    int i, j, k;
};

inline CyclicTriple cyclic_triple(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("generator index must be 1, 2 or 3");
    return {i - 1, i % 3, (i + 1) % 3};
}

template <class T>
T cubic_eval(const Vec3<T>& x, const Vec4<T>& th) {
    return x[0] * x[1] * x[2] + x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - th[0] * x[0] -
           th[1] * x[1] - th[2] * x[2] + th[3];
}

template <class T>
Vec3<T> cubic_gradient(const Vec3<T>& x, const Vec4<T>& th) {
    return {x[1] * x[2] + T(2) * x[0] - th[0], x[0] * x[2] + T(2) * x[1] - th[1],
            x[0] * x[1] + T(2) * x[2] - th[2]};
}

/// x_i -> theta_i - x_i - x_j x_k, the other two coordinates fixed.
template <class T>
Vec3<T> sigma_apply(int i, Vec3<T> x, const Vec4<T>& th) {
    const auto [a, b, c] = cyclic_triple(i);
    x[a] = th[a] - x[a] - x[b] * x[c];
    return x;
}

/// One braid generator g_i^{sign}, updating both x and theta in place.
template <class T>
void g_apply_inplace(int i, int sign, Vec3<T>& x, Vec4<T>& th) {
    const auto [a, b, c] = cyclic_triple(i);
    if (sign == 1) {
        const T xa = x[a];
        x[a] = th[b] - x[b] - x[c] * xa;
        x[b] = xa;
        std::swap(th[a], th[b]);
    } else if (sign == -1) {
        std::swap(th[a], th[b]);
        const T xa_new = x[b];
        x[b] = th[b] - x[a] - x[c] * xa_new;
        x[a] = xa_new;
    } else {
        throw std::invalid_argument("braid generator power must be +1 or -1");
    }
}

struct GeneratorLetter {
    enum class Kind { Sigma, G };
    Kind kind = Kind::Sigma;
    int index = 1;
    int power = 1;

    bool operator==(const GeneratorLetter&) const = default;
};

/// Letters in composition order: letters.front() is applied last.
struct GroupWord {
    std::vector<GeneratorLetter> letters;

    /// Parses "s1 s2 s3" or "g1^2 g2^-2 g1^-2 g2^2". Exponents expand to
    /// repeated letters. Throws std::invalid_argument on malformed tokens.
    static GroupWord parse(const std::string& text);
    static GroupWord coxeter();

    std::string str() const;
    GroupWord inverse() const;
    GroupWord operator*(const GroupWord& rhs) const;
    GroupWord power(int n) const;
    bool empty() const { return letters.empty(); }
};

/// Applies the word right-to-left with theta tracking; no escape handling.
template <class T>
void word_apply_inplace(const GroupWord& w, Vec3<T>& x, Vec4<T>& th) {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->kind == GeneratorLetter::Kind::Sigma) {
            x = sigma_apply(it->index, x, th);
        } else {
            g_apply_inplace(it->index, it->power, x, th);
        }
    }
}

/// sigma_3 first, then sigma_2, then sigma_1.
template <class T>
Vec3<T> coxeter_apply_raw(Vec3<T> x, const Vec4<T>& th) {
    x = sigma_apply(3, x, th);
    x = sigma_apply(2, x, th);
    return sigma_apply(1, x, th);
}

template <class T>
Vec3<T> coxeter_inverse_raw(Vec3<T> x, const Vec4<T>& th) {
    x = sigma_apply(1, x, th);
    x = sigma_apply(2, x, th);
    return sigma_apply(3, x, th);
}

// ---- complex-double interface ------------------------------------------

struct AffinePoint {
    Vec3<Complex> x{};
    double residual = 0.0;
    bool on_surface = false;
};

/// Surface tolerance scaled by the cubic growth of f.
double scaled_surface_tol(const Vec3<Complex>& x, double surface_tol = kSurfaceTol);

AffinePoint make_point(const Vec3<Complex>& x, const ThetaPoint& theta,
                       double surface_tol = kSurfaceTol);

enum class MapStatus { Ok, Escaped };

struct MapResult {
    AffinePoint point;
    ThetaPoint theta;
    MapStatus status = MapStatus::Ok;
};

Complex cubic_eval(const Vec3<Complex>& x, const ThetaPoint& theta);
Vec3<Complex> cubic_gradient(const Vec3<Complex>& x, const ThetaPoint& theta);
Vec3<Complex> sigma_apply(int i, const Vec3<Complex>& x, const ThetaPoint& theta);

MapResult g_apply(int i, int sign, const Vec3<Complex>& x, const ThetaPoint& theta,
                  double escape_radius = kEscapeRadius);
MapResult word_apply(const GroupWord& w, const Vec3<Complex>& x, const ThetaPoint& theta,
                     double escape_radius = kEscapeRadius);
MapResult coxeter_apply(const Vec3<Complex>& x, const ThetaPoint& theta,
                        double escape_radius = kEscapeRadius);

/// x, w(x), ..., w^steps(x), stopping at the first escape.
std::vector<MapResult> orbit(const GroupWord& w, const Vec3<Complex>& x, const ThetaPoint& theta,
                             int steps, double escape_radius = kEscapeRadius);

Eigen::Matrix3cd sigma_jacobian(int i, const Vec3<Complex>& x);

/// D(c^N) at x by the chain rule. Throws std::runtime_error if the orbit
/// leaves the escape radius.
Eigen::Matrix3cd coxeter_jacobian(const Vec3<Complex>& x, const ThetaPoint& theta, int n,
                                  double escape_radius = kEscapeRadius);

std::string to_string(MapStatus s);

}  // namespace pvi
