#include "pvi/params.hpp"

#include <cmath>
#include <limits>

namespace pvi {

namespace {

constexpr double kConstraintTol = 1e-12;

Complex kappa0_from_tail(const std::array<Complex, 4>& k) {
    return (1.0 - (k[0] + k[1] + k[2] + k[3])) / 2.0;
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

}  // namespace

KappaPoint KappaPoint::from_full(const std::array<Complex, 5>& k) {
    KappaPoint p;
    p.kappa = k;
    if (p.constraint_residual() > kConstraintTol) {
        throw std::invalid_argument("kappa violates 2k0 + k1 + k2 + k3 + k4 = 1");
    }
    return p;
}

KappaPoint KappaPoint::from_tail(const std::array<Complex, 4>& k) {
    KappaPoint p;
    p.kappa = {kappa0_from_tail(k), k[0], k[1], k[2], k[3]};
    return p;
}

KappaPoint KappaPoint::from_rationals(const std::array<Rational, 4>& k) {
    std::array<Complex, 4> approx;
    for (std::size_t i = 0; i < 4; ++i) approx[i] = Complex(static_cast<double>(k[i]), 0.0);
    KappaPoint p = from_tail(approx);
    const Rational k0 = (Rational(1) - (k[0] + k[1] + k[2] + k[3])) / 2;
    p.kappa[0] = Complex(static_cast<double>(k0), 0.0);
    p.exact = k;
    return p;
}

double KappaPoint::constraint_residual() const {
    return std::abs(2.0 * kappa[0] + kappa[1] + kappa[2] + kappa[3] + kappa[4] - 1.0);
}

EigenParams::EigenParams(const std::array<Complex, 4>& values) : b(values) {
    for (const auto& v : b) {
        if (v == Complex(0.0, 0.0)) throw std::invalid_argument("eigen parameter b_l must be nonzero");
    }
}

MonodromyTraces kappa_to_traces(const KappaPoint& kappa) {
    MonodromyTraces t;
    for (std::size_t i = 0; i < 3; ++i) t.a[i] = 2.0 * std::cos(kPi * kappa[i + 1]);
    t.a[3] = -2.0 * std::cos(kPi * kappa[4]);
    return t;
}

EigenParams kappa_to_eigen(const KappaPoint& kappa) {
    const Complex ipi(0.0, kPi);
    std::array<Complex, 4> b;
    for (std::size_t i = 0; i < 3; ++i) b[i] = std::exp(ipi * kappa[i + 1]);
    b[3] = -std::exp(ipi * kappa[4]);
    return EigenParams(b);
}

MonodromyTraces traces_from_eigen(const EigenParams& b) {
    MonodromyTraces t;
    for (std::size_t i = 0; i < 4; ++i) {
        if (b.b[i] == Complex(0.0, 0.0)) throw std::invalid_argument("eigen parameter b_l must be nonzero");
        t.a[i] = b.b[i] + 1.0 / b.b[i];
    }
    return t;
}

ThetaPoint traces_to_theta(const MonodromyTraces& tr) {
    const auto& a = tr.a;
    ThetaPoint th;
    th.theta[0] = a[0] * a[3] + a[1] * a[2];
    th.theta[1] = a[1] * a[3] + a[2] * a[0];
    th.theta[2] = a[2] * a[3] + a[0] * a[1];
    th.theta[3] = a[0] * a[1] * a[2] * a[3] + a[0] * a[0] + a[1] * a[1] + a[2] * a[2] +
                  a[3] * a[3] - 4.0;
    return th;
}

ThetaPoint rh_params(const KappaPoint& kappa) { return traces_to_theta(kappa_to_traces(kappa)); }

namespace {

// Visits the 20 factors of the discriminant: four (b_l - 1/b_l) (each
// squared in the product) followed by the 16 factors (b^eps - 1).
template <class Fn>
void for_each_discriminant_factor(const EigenParams& p, Fn&& fn) {
    const auto& b = p.b;
    for (const auto& v : b) {
        if (v == Complex(0.0, 0.0)) throw std::invalid_argument("eigen parameter b_l must be nonzero");
    }
    for (const auto& v : b) fn(v - 1.0 / v, 2);
    for (int mask = 0; mask < 16; ++mask) {
        Complex prod(1.0, 0.0);
        for (int l = 0; l < 4; ++l) prod *= (mask >> l) & 1 ? 1.0 / b[l] : b[l];
        fn(prod - 1.0, 1);
    }
}

}  // namespace

Complex discriminant(const EigenParams& b) {
    Complex d(1.0, 0.0);
    for_each_discriminant_factor(b, [&](Complex f, int power) {
        for (int p = 0; p < power; ++p) d *= f;
    });
    return d;
}

double discriminant_min_factor(const EigenParams& b) {
    double m = std::numeric_limits<double>::infinity();
    for_each_discriminant_factor(b, [&](Complex f, int) { m = std::min(m, std::abs(f)); });
    return m;
}

namespace {

constexpr std::array<std::array<int, 4>, 8> kSignPatterns = {{
    {1, 1, 1, 1},
    {1, 1, 1, -1},
    {1, 1, -1, 1},
    {1, 1, -1, -1},
    {1, -1, 1, 1},
    {1, -1, 1, -1},
    {1, -1, -1, 1},
    {1, -1, -1, -1},
}};

WallReport exact_walls(const std::array<Rational, 4>& k) {
    WallReport report;
    for (int i = 0; i < 4; ++i) {
        if (is_integer(k[i])) {
            WallWitness w;
            w.kind = WallRelation::KappaInteger;
            w.index = i + 1;
            w.m = static_cast<long long>(boost::multiprecision::numerator(k[i]));
            report.witnesses.push_back(w);
        }
    }
    for (const auto& signs : kSignPatterns) {
        Rational sum = 0;
        for (int i = 0; i < 4; ++i) sum += signs[i] * k[i];
        if (!is_integer(sum)) continue;
        const BigInt n = boost::multiprecision::numerator(sum);
        if (boost::multiprecision::abs(n) % 2 != 1) continue;
        WallWitness w;
        w.kind = WallRelation::SignedSumOdd;
        w.signs = signs;
        w.m = static_cast<long long>(BigInt((n - 1) / 2));
        report.witnesses.push_back(w);
    }
    report.on_wall = !report.witnesses.empty();
    return report;
}

WallReport tolerant_walls(const KappaPoint& kappa, double tol) {
    double magnitude = 0.0;
    for (int i = 1; i <= 4; ++i) magnitude += std::abs(kappa[i]);
    const long long bound = static_cast<long long>(std::ceil(magnitude + tol)) + 1;

    WallReport report;
    for (int i = 1; i <= 4; ++i) {
        for (long long m = -bound; m <= bound; ++m) {
            const double r = std::abs(kappa[i] - static_cast<double>(m));
            if (r <= tol) {
                WallWitness w;
                w.kind = WallRelation::KappaInteger;
                w.index = i;
                w.m = m;
                w.residual = r;
                report.witnesses.push_back(w);
            }
        }
    }
    for (const auto& signs : kSignPatterns) {
        Complex sum(0.0, 0.0);
        for (int i = 0; i < 4; ++i) sum += static_cast<double>(signs[i]) * kappa[i + 1];
        for (long long m = -bound; m <= bound; ++m) {
            const double r = std::abs(sum - static_cast<double>(2 * m + 1));
            if (r <= tol) {
                WallWitness w;
                w.kind = WallRelation::SignedSumOdd;
                w.signs = signs;
                w.m = m;
                w.residual = r;
                report.witnesses.push_back(w);
            }
        }
    }
    report.on_wall = !report.witnesses.empty();
    return report;
}

}  // namespace

WallReport wall_membership(const KappaPoint& kappa, WallMode mode, double tol) {
    if (mode == WallMode::Exact) {
        if (!kappa.exact) throw std::invalid_argument("exact mode requires rational κ");
        return exact_walls(*kappa.exact);
    }
    return tolerant_walls(kappa, tol);
}

std::string to_string(WallRelation r) {
    return r == WallRelation::KappaInteger ? "kappa_i_integer" : "signed_sum_odd";
}

}  // namespace pvi
