#include "pvi/counting.hpp"

#include <cmath>
#include <random>
#include <thread>

#include <Eigen/Dense>

#include "pvi/lattice.hpp"

namespace pvi {

std::string to_string(Space s) { return s == Space::Affine ? "affine" : "projective"; }

Space parse_space(const std::string& s) {
    if (s == "affine") return Space::Affine;
    if (s == "projective") return Space::Projective;
    throw std::invalid_argument("space must be 'affine' or 'projective'");
}

// ---- exact counts ----------------------------------------------------------

namespace {

BigInt linear_recurrence(unsigned n, long long s0, long long s1, long long p, long long q) {
    // s_{k+2} = p s_{k+1} + q s_k
    BigInt a = s0, b = s1;
    if (n == 0) return a;
    for (unsigned k = 1; k < n; ++k) {
        BigInt c = p * b + q * a;
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

BigInt sign_term(unsigned N) { return N % 2 == 0 ? BigInt(4) : BigInt(-4); }

void require_positive(unsigned N) {
    if (N < 1) throw std::invalid_argument("N must be at least 1");
}

}  // namespace

BigInt s_sequence(unsigned n) { return linear_recurrence(n, 2, 4, 4, 1); }

BigInt c_sequence(unsigned n) { return linear_recurrence(n, 2, 18, 18, -1); }

BigInt surd_power_trace(long long u0, long long v0, unsigned n) {
    BigInt u = 1, v = 0;
    for (unsigned k = 0; k < n; ++k) {
        BigInt nu = u * u0 + 5 * v * v0;
        BigInt nv = u * v0 + v * u0;
        u = std::move(nu);
        v = std::move(nv);
    }
    return 2 * u;
}

LefschetzValue lefschetz_number(unsigned N) {
    require_positive(N);
    LefschetzValue out;
    out.from_traces = 1 + trace_power(coxeter_star(), N) + 1;
    out.closed_form = s_sequence(N) + sign_term(N) + 2;
    const double r5 = std::sqrt(5.0);
    out.closed_real = std::pow(2.0 + r5, N) + std::pow(2.0 - r5, N) + (N % 2 == 0 ? 4.0 : -4.0) + 2.0;
    return out;
}

BigInt per_count_closed(unsigned N, Space space) {
    require_positive(N);
    BigInt v = s_sequence(N) + sign_term(N);
    return space == Space::Projective ? v + 1 : v;
}

BigInt per_kappa_closed(unsigned N) {
    require_positive(N);
    return c_sequence(N) + 4;
}

namespace {

std::vector<Rational> zeta_series(unsigned order) {
    // denominator (1 - z)^4 (1 - 18 z + z^2), constant term 1
    const IntPoly den = poly_mul(poly_pow(IntPoly{1, -1}, 4), IntPoly{1, -18, 1});
    std::vector<Rational> z(order + 1);
    z[0] = 1;
    for (unsigned n = 1; n <= order; ++n) {
        Rational acc = 0;
        for (unsigned k = 1; k <= n && k < den.size(); ++k) acc -= Rational(den[k]) * z[n - k];
        z[n] = acc;
    }
    return z;
}

std::vector<Rational> zeta_series_exp(unsigned order) {
    std::vector<Rational> z(order + 1);
    z[0] = 1;
    for (unsigned n = 1; n <= order; ++n) {
        Rational acc = 0;
        for (unsigned k = 1; k <= n; ++k) acc += Rational(per_kappa_closed(k)) * z[n - k];
        z[n] = acc / n;
    }
    return z;
}

std::vector<BigInt> to_integers(const std::vector<Rational>& v, const char* what) {
    std::vector<BigInt> out;
    for (const auto& r : v) {
        if (boost::multiprecision::denominator(r) != 1) {
            throw std::logic_error(std::string(what) + " produced a non-integer coefficient");
        }
        out.push_back(boost::multiprecision::numerator(r));
    }
    return out;
}

}  // namespace

std::vector<BigInt> zeta_coefficients_exp(unsigned order) {
    return to_integers(zeta_series_exp(order), "exponential recurrence");
}

std::vector<BigInt> zeta_coefficients(unsigned order) {
    if (order < 1) throw std::invalid_argument("order must be at least 1");
    const auto a = zeta_series(order);
    const auto b = zeta_series_exp(order);
    for (unsigned n = 0; n <= order; ++n) {
        if (a[n] != b[n]) {
            throw std::logic_error("zeta coefficient " + std::to_string(n) +
                                   " differs between the rational form and the exponential form");
        }
    }
    return to_integers(a, "rational series");
}

CountMismatch::CountMismatch(unsigned n, const std::string& what)
    : std::runtime_error("identity failed at N=" + std::to_string(n) + ": " + what), N(n) {}

VerifyReport verify_counts(unsigned n_max) {
    require_positive(n_max);
    VerifyReport report;
    const LatticeEndo c = coxeter_star();
    LatticeEndo power = LatticeEndo::identity();
    for (unsigned N = 1; N <= n_max; ++N) {
        power = power * c;
        VerifyRow row;
        row.N = N;
        row.lefschetz_traces = 1 + power.trace() + 1;
        row.lefschetz_closed = s_sequence(N) + sign_term(N) + 2;
        row.per_kappa = per_kappa_closed(N);
        row.per_2n_affine = per_count_closed(2 * N, Space::Affine);
        row.surd_form = surd_power_trace(9, 4, N) + 4;
        row.c_n = c_sequence(N);

        auto fail = [&](const std::string& what) { throw CountMismatch(N, what); };
        if (row.lefschetz_traces != row.lefschetz_closed) fail("Lefschetz number from traces vs closed form");
        if (s_sequence(N) != surd_power_trace(2, 1, N)) fail("s_N recurrence vs (2+sqrt5)^N + (2-sqrt5)^N");
        if (row.per_kappa != row.per_2n_affine) fail("per_kappa_closed(N) vs per_count_closed(2N, affine)");
        if (row.per_kappa != row.surd_form) fail("C_N recurrence vs (9+4sqrt5)^N + (9-4sqrt5)^N + 4");
        if (row.per_kappa - 4 - row.c_n != 0) fail("per_kappa_closed(N) - 4 - C_N");
        if (per_count_closed(N, Space::Projective) - per_count_closed(N, Space::Affine) != 1) {
            fail("projective minus affine count");
        }
        if (row.lefschetz_closed - per_count_closed(N, Space::Projective) != 1) {
            fail("Lefschetz number minus projective count");
        }
        report.rows.push_back(std::move(row));
    }

    report.zeta_order = std::min(n_max, 12U);
    const auto a = zeta_series(report.zeta_order);
    const auto b = zeta_series_exp(report.zeta_order);
    for (unsigned n = 1; n <= report.zeta_order; ++n) {
        if (a[n] != b[n]) throw CountMismatch(n, "zeta coefficient, rational vs exponential form");
    }
    report.ok = true;
    return report;
}

// ---- numerical solver ----------------------------------------------------

SolverConfig SolverConfig::defaults_for(unsigned N) {
    SolverConfig cfg;
    cfg.seeds = N <= 2 ? 20000 : 200000;
    return cfg;
}

void SolverConfig::validate() const {
    auto need = [](bool ok, const char* name) {
        if (!ok) throw std::invalid_argument(std::string(name) + " must be positive");
    };
    need(seeds > 0, "seeds");
    need(newton_max_iter > 0, "newton_max_iter");
    need(newton_tol > 0, "newton_tol");
    need(dedup_radius > 0, "dedup_radius");
    need(surface_tol > 0, "surface_tol");
    need(saturation_batches > 0, "saturation_batches");
    need(escape_radius > 0, "escape_radius");
    need(batches > 0, "batches");
    need(seed_box > 0, "seed_box");
    need(multiplicity_tol > 0, "multiplicity_tol");
    need(threads > 0, "threads");
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Complete: return "complete";
        case SolveStatus::Saturated: return "saturated";
        case SolveStatus::Partial: return "partial";
    }
    return "unknown";
}

NongenericParameters::NongenericParameters()
    : std::domain_error("nongeneric parameters: the surface is singular") {}

namespace {

enum class Outcome { Converged, Escaped, Stalled, Rejected };

struct SeedResult {
    Outcome outcome = Outcome::Stalled;
    Vec3<Complex> x{};
};

class OrbitSystem {
public:
    OrbitSystem(const ThetaPoint& theta, unsigned N) : th_(theta.theta), m_(3 * static_cast<int>(N)) {}

    int size() const { return m_; }

    // r_n = s_{n+3} + s_n + s_{n+1} s_{n+2} - theta_{tau(n)}, plus f(s_2, s_1, s_0)
    void residual(const Eigen::VectorXcd& s, Eigen::VectorXcd& r) const {
        r.resize(m_ + 1);
        for (int n = 0; n < m_; ++n) {
            r(n) = s(at(n + 3)) + s(n) + s(at(n + 1)) * s(at(n + 2)) - th_[tau(n)];
        }
        r(m_) = cubic_eval(point(s), th_);
    }

    void jacobian(const Eigen::VectorXcd& s, Eigen::MatrixXcd& J) const {
        J.setZero(m_ + 1, m_);
        for (int n = 0; n < m_; ++n) {
            J(n, at(n + 3)) += 1.0;
            J(n, n) += 1.0;
            J(n, at(n + 1)) += s(at(n + 2));
            J(n, at(n + 2)) += s(at(n + 1));
        }
        const Vec3<Complex> g = cubic_gradient(point(s), th_);
        J(m_, 2) = g[0];
        J(m_, 1) = g[1];
        J(m_, 0) = g[2];
    }

    static Vec3<Complex> point(const Eigen::VectorXcd& s) { return {s(2), s(1), s(0)}; }

private:
    int at(int n) const { return n % m_; }
    // n = 0, 1, 2 (mod 3) step x3, x2, x1
    static int tau(int n) { return 2 - n % 3; }

    Vec4<Complex> th_;
    int m_;
};

double inf_norm(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

bool finite(const Eigen::VectorXcd& v) {
    for (int k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v(k).real()) || !std::isfinite(v(k).imag())) return false;
    }
    return true;
}

Vec3<Complex> iterate_coxeter(Vec3<Complex> x, const Vec4<Complex>& th, unsigned n) {
    for (unsigned k = 0; k < n; ++k) x = coxeter_apply_raw(x, th);
    return x;
}

double relative_gap(const Vec3<Complex>& a, const Vec3<Complex>& b) {
    return max_abs_diff(a, b) / (1.0 + max_abs(b));
}

SeedResult run_seed(const OrbitSystem& sys, const ThetaPoint& theta, unsigned N, const SolverConfig& cfg,
                    long long index) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed), static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> box(-cfg.seed_box, cfg.seed_box);

    const int m = sys.size();
    Eigen::VectorXcd s(m);
    for (int k = 0; k < m; ++k) s(k) = Complex(box(rng), box(rng));
    if (index % 2 == 1) {
        // start on the surface: solve f = 0 for x1 = s_2
        const auto& t = theta.theta;
        const Complex x2 = s(1), x3 = s(0);
        const Complex bq = x2 * x3 - t[0];
        const Complex cq = x2 * x2 + x3 * x3 - t[1] * x2 - t[2] * x3 + t[3];
        const Complex disc = std::sqrt(bq * bq - 4.0 * cq);
        s(2) = (rng() & 1U) ? (-bq + disc) / 2.0 : (-bq - disc) / 2.0;
    }

    Eigen::VectorXcd r, trial_r;
    Eigen::MatrixXcd J;
    SeedResult out;
    bool converged = false;
    int polish = 0;
    for (int it = 0; it < cfg.newton_max_iter + 3; ++it) {
        if (!finite(s) || inf_norm(s) > cfg.escape_radius) {
            out.outcome = Outcome::Escaped;
            return out;
        }
        sys.residual(s, r);
        const double rn = inf_norm(r);
        const double scale = 1.0 + inf_norm(s) * inf_norm(s);
        if (!converged && rn < cfg.newton_tol * scale) converged = true;
        if (converged && (polish++ >= 3 || rn == 0.0)) break;
        if (!converged && it >= cfg.newton_max_iter) break;

        sys.jacobian(s, J);
        const Eigen::VectorXcd dx = J.colPivHouseholderQr().solve(-r);
        Eigen::VectorXcd trial = s + dx;
        if (!converged) {
            // halve the step while the residual grows; keep the full step otherwise
            double lambda = 1.0;
            for (int h = 0; h < 5; ++h) {
                if (!finite(trial)) break;
                sys.residual(trial, trial_r);
                if (inf_norm(trial_r) <= rn) break;
                lambda *= 0.5;
                trial = s + lambda * dx;
            }
            if (!finite(trial) || inf_norm(trial) > cfg.escape_radius) trial = s + dx;
        }
        s = trial;
    }
    if (!converged) {
        out.outcome = Outcome::Stalled;
        return out;
    }

    out.x = OrbitSystem::point(s);
    const double surf = std::abs(cubic_eval(out.x, theta.theta));
    const double gap = relative_gap(iterate_coxeter(out.x, theta.theta, N), out.x);
    out.outcome = (surf < scaled_surface_tol(out.x, cfg.surface_tol) && gap < cfg.newton_tol)
                      ? Outcome::Converged
                      : Outcome::Rejected;
    return out;
}

Complex second_minor_sum(const Eigen::Matrix3cd& a) {
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
           a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
}

}  // namespace

CountReport solve_periodic(const ThetaPoint& theta, unsigned N, const SolverConfig& cfg,
                           const std::optional<EigenParams>& b) {
    if (N < 1) throw std::invalid_argument("N must be at least 1");
    cfg.validate();
    CountReport report;
    report.N = N;
    report.closed_form = per_count_closed(N, Space::Affine);
    report.seeds = cfg.seeds;
    if (b) {
        if (discriminant_min_factor(*b) < 1e-9) throw NongenericParameters();
    } else {
        report.warning = "genericity not checked: no b-parameters supplied";
    }

    const OrbitSystem sys(theta, N);
    auto same = [&](const Vec3<Complex>& x, const Vec3<Complex>& rep) {
        return relative_gap(x, rep) < cfg.dedup_radius;
    };
    auto find_cluster = [&](const Vec3<Complex>& x) -> int {
        for (std::size_t c = 0; c < report.clusters.size(); ++c) {
            if (same(x, report.clusters[c].point.x)) return static_cast<int>(c);
        }
        return -1;
    };

    const long long per_batch = (cfg.seeds + cfg.batches - 1) / cfg.batches;
    std::vector<SeedResult> results;
    for (long long start = 0; start < cfg.seeds; start += per_batch) {
        const long long count = std::min(per_batch, cfg.seeds - start);
        results.assign(count, SeedResult{});
        const int nthreads = static_cast<int>(std::min<long long>(cfg.threads, count));
        auto work = [&](int t) {
            for (long long k = t; k < count; k += nthreads) results[k] = run_seed(sys, theta, N, cfg, start + k);
        };
        if (nthreads <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }

        // merge in seed order so the cluster list is schedule-independent
        long long fresh = 0;
        for (const auto& res : results) {
            switch (res.outcome) {
                case Outcome::Escaped: ++report.escaped; continue;
                case Outcome::Stalled: ++report.stalled; continue;
                case Outcome::Rejected: ++report.rejected; continue;
                case Outcome::Converged: ++report.converged; break;
            }
            const int c = find_cluster(res.x);
            if (c >= 0) {
                ++report.clusters[c].hits;
                continue;
            }
            PeriodicCluster cl;
            cl.point = make_point(res.x, theta, cfg.surface_tol);
            cl.hits = 1;
            report.clusters.push_back(cl);
            ++fresh;
        }
        report.new_per_batch.push_back(fresh);
    }
    report.found = static_cast<long long>(report.clusters.size());

    // periods, multiplicity and orbits
    std::vector<int> next(report.clusters.size(), -1);
    report.orbit_closed = true;
    for (std::size_t c = 0; c < report.clusters.size(); ++c) {
        auto& cl = report.clusters[c];
        const Vec3<Complex>& x = cl.point.x;
        cl.cn_residual = relative_gap(iterate_coxeter(x, theta.theta, N), x);
        for (unsigned d = 1; d <= N; ++d) {
            if (N % d == 0 && same(iterate_coxeter(x, theta.theta, d), x)) {
                cl.minimal_period = static_cast<int>(d);
                break;
            }
        }
        const Eigen::Matrix3cd a = Eigen::Matrix3cd::Identity() - coxeter_jacobian(x, theta, static_cast<int>(N),
                                                                                      cfg.escape_radius);
        cl.e2 = second_minor_sum(a);
        const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
        cl.multiplicity_flag = std::abs(cl.e2) < cfg.multiplicity_tol * scale * scale;
        if (cl.multiplicity_flag) ++report.multiplicity_flags;

        next[c] = find_cluster(coxeter_apply_raw(x, theta.theta));
        if (next[c] < 0) report.orbit_closed = false;
    }
    if (report.orbit_closed) {
        int orbit = 0;
        for (std::size_t c = 0; c < report.clusters.size(); ++c) {
            if (report.clusters[c].orbit >= 0) continue;
            int k = static_cast<int>(c);
            while (report.clusters[k].orbit < 0) {
                report.clusters[k].orbit = orbit;
                k = next[k];
            }
            ++orbit;
        }
        report.cycles = orbit;
    }

    int quiet = 0;
    for (auto it = report.new_per_batch.rbegin(); it != report.new_per_batch.rend() && *it == 0; ++it) ++quiet;
    const bool saturated = quiet >= cfg.saturation_batches;
    if (report.escaped == report.seeds || !saturated) {
        report.status = SolveStatus::Partial;
    } else if (BigInt(report.found) == report.closed_form && report.orbit_closed && report.multiplicity_flags == 0) {
        report.status = SolveStatus::Complete;
    } else {
        report.status = SolveStatus::Saturated;
    }
    return report;
}

}  // namespace pvi
