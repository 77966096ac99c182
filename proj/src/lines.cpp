#include "pvi/lines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "pvi/surface.hpp"

namespace pvi {

namespace {

double norm_inf(const ProjVec& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

ProjVec scaled(const ProjVec& v) {
    const double m = norm_inf(v);
    ProjVec r = v;
    for (auto& c : r) c /= m;
    return r;
}

Complex apply_form(const ProjVec& f, const ProjVec& X) {
    Complex s = 0.0;
    for (int a = 0; a < 4; ++a) s += f[a] * X[a];
    return s;
}

ProjVec affine_lift(const Vec3<Complex>& x) { return {Complex(1.0), x[0], x[1], x[2]}; }

// |f(1, x)| relative to the size of the form and of the point
double affine_form_residual(const ProjVec& f, const Vec3<Complex>& x) {
    return std::abs(apply_form(f, affine_lift(x))) / (norm_inf(f) * (1.0 + max_abs(x)));
}

double affine_line_residual(const ProjectiveLine& line, const Vec3<Complex>& x) {
    return std::max(affine_form_residual(line.f1, x), affine_form_residual(line.f2, x));
}

}  // namespace

// ---- points ----------------------------------------------------------------

ProjectivePoint ProjectivePoint::from(const ProjVec& v) {
    int best = 0;
    for (int a = 1; a < 4; ++a) {
        if (std::abs(v[a]) > std::abs(v[best])) best = a;
    }
    if (std::abs(v[best]) == 0.0) throw std::invalid_argument("projective point cannot be zero");
    ProjectivePoint p;
    const Complex s = v[best];
    for (int a = 0; a < 4; ++a) p.X[a] = v[a] / s;
    p.X[best] = 1.0;
    return p;
}

double ProjectivePoint::distance(const ProjectivePoint& o) const {
    // representatives normalized at different coordinates are compared after
    // rescaling o to this point's pivot
    int best = 0;
    for (int a = 1; a < 4; ++a) {
        if (std::abs(X[a]) > std::abs(X[best])) best = a;
    }
    if (std::abs(o.X[best]) == 0.0) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int a = 0; a < 4; ++a) d = std::max(d, std::abs(X[a] - o.X[a] / o.X[best]));
    return d;
}

Complex homogeneous_cubic(const ProjVec& X, const ThetaPoint& theta) {
    const auto& t = theta.theta;
    const Complex x0 = X[0];
    return X[1] * X[2] * X[3] + x0 * (X[1] * X[1] + X[2] * X[2] + X[3] * X[3]) -
           x0 * x0 * (t[0] * X[1] + t[1] * X[2] + t[2] * X[3]) + t[3] * x0 * x0 * x0;
}

SpecialPoint special_point(const std::string& name) {
    static const std::vector<std::pair<std::string, ProjVec>> table = {
        {"p1", {0.0, 1.0, 0.0, 0.0}}, {"p2", {0.0, 0.0, 1.0, 0.0}}, {"p3", {0.0, 0.0, 0.0, 1.0}},
        {"q1", {0.0, 0.0, 1.0, 1.0}}, {"q2", {0.0, 1.0, 0.0, 1.0}}, {"q3", {0.0, 1.0, 1.0, 0.0}},
    };
    for (const auto& [n, v] : table) {
        if (n == name) return {n, ProjectivePoint::from(v)};
    }
    throw std::invalid_argument("unknown special point '" + name + "'");
}

std::vector<SpecialPoint> special_points() {
    std::vector<SpecialPoint> out;
    for (const char* n : {"p1", "p2", "p3", "q1", "q2", "q3"}) out.push_back(special_point(n));
    return out;
}

// ---- lines -----------------------------------------------------------------

ProjectiveLine ProjectiveLine::make(const ProjVec& f1, const ProjVec& f2) {
    if (norm_inf(f1) == 0.0 || norm_inf(f2) == 0.0) throw std::invalid_argument("degenerate line");
    const ProjVec g1 = scaled(f1);
    const ProjVec g2 = scaled(f2);
    double best = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int c = a + 1; c < 4; ++c) best = std::max(best, std::abs(g1[a] * g2[c] - g1[c] * g2[a]));
    }
    if (best <= 1e-12) throw std::invalid_argument("degenerate line");
    ProjectiveLine line;
    line.f1 = f1;
    line.f2 = f2;
    return line;
}

ProjectiveLine tritangent_line(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("tritangent line index must be 1, 2 or 3");
    ProjVec f1{}, f2{};
    f1[0] = 1.0;
    f2[i] = 1.0;
    ProjectiveLine line = ProjectiveLine::make(f1, f2);
    line.label = LineLabel::F(2 * i - 1, 2 * i);
    return line;
}

ProjectiveLine line_from_args(int i, Complex p, Complex q, Complex r, Complex s) {
    const auto [ii, jj, kk] = cyclic_triple(i);
    if (p == 0.0 || q == 0.0 || r == 0.0 || s == 0.0) {
        throw std::invalid_argument("line parameters must be nonzero");
    }
    const Complex pq = p * q;
    ProjVec f1{}, f2{};
    f1[0] = -(pq + 1.0 / pq);
    f1[1 + ii] = 1.0;
    f2[0] = -(p * (s + 1.0 / s) + q * (r + 1.0 / r));
    f2[1 + jj] = 1.0;
    f2[1 + kk] = pq;
    return ProjectiveLine::make(f1, f2);
}

LineLabel slot_label(int i, int slot) {
    const auto [ii, jj, kk] = cyclic_triple(i);
    const int p = 2 * ii + 1, q = 2 * ii + 2;
    const int j1 = 2 * jj + 1, j2 = 2 * jj + 2;
    const int k1 = 2 * kk + 1, k2 = 2 * kk + 2;
    switch (slot) {
        case 1: return LineLabel::E(p);
        case 2: return LineLabel::G(q);
        case 3: return LineLabel::E(q);
        case 4: return LineLabel::G(p);
        case 5: return LineLabel::F(j2, k2);
        case 6: return LineLabel::F(j1, k1);
        case 7: return LineLabel::F(j1, k2);
        case 8: return LineLabel::F(j2, k1);
        default: throw std::invalid_argument("slot must be in 1..8");
    }
}

ProjectiveLine line_from_params(int i, int slot, const EigenParams& b) {
    const auto [ii, jj, kk] = cyclic_triple(i);
    const Complex bi = b.b[ii], bj = b.b[jj], bk = b.b[kk], b4 = b.b[3];
    for (const auto& v : b.b) {
        if (v == 0.0) throw std::invalid_argument("b entries must be nonzero");
    }
    ProjectiveLine line;
    switch (slot) {
        case 1: line = line_from_args(i, bi, b4, bj, bk); break;
        case 2: line = line_from_args(i, 1.0 / bi, 1.0 / b4, bj, bk); break;
        case 3: line = line_from_args(i, bj, bk, bi, b4); break;
        case 4: line = line_from_args(i, 1.0 / bj, 1.0 / bk, bi, b4); break;
        case 5: line = line_from_args(i, 1.0 / bi, b4, bj, bk); break;
        case 6: line = line_from_args(i, bi, 1.0 / b4, bj, bk); break;
        case 7: line = line_from_args(i, 1.0 / bj, bk, bi, b4); break;
        case 8: line = line_from_args(i, bj, 1.0 / bk, bi, b4); break;
        default: throw std::invalid_argument("slot must be in 1..8");
    }
    line.label = slot_label(i, slot);
    line.slot = LineSlot{i, slot};
    return line;
}

std::vector<ProjectiveLine> all_lines(const EigenParams& b) {
    std::vector<ProjectiveLine> out;
    for (int i = 1; i <= 3; ++i) {
        for (int s = 1; s <= 8; ++s) out.push_back(line_from_params(i, s, b));
    }
    for (int i = 1; i <= 3; ++i) out.push_back(tritangent_line(i));
    return out;
}

std::array<ProjVec, 2> line_basis(const ProjectiveLine& line) {
    Eigen::Matrix<Complex, 2, 4> m;
    const ProjVec g1 = scaled(line.f1), g2 = scaled(line.f2);
    for (int a = 0; a < 4; ++a) {
        m(0, a) = g1[a];
        m(1, a) = g2[a];
    }
    Eigen::JacobiSVD<Eigen::Matrix<Complex, 2, 4>> svd(m, Eigen::ComputeFullV);
    std::array<ProjVec, 2> out;
    for (int c = 0; c < 2; ++c) {
        for (int a = 0; a < 4; ++a) out[c][a] = svd.matrixV()(a, 2 + c);
    }
    return out;
}

std::vector<Vec3<Complex>> affine_points(const ProjectiveLine& line, const std::vector<double>& ts) {
    const auto [P, Q] = line_basis(line);
    // A has X0 = 1, D lies at infinity
    ProjVec A{}, D{};
    if (std::abs(P[0]) >= std::abs(Q[0])) {
        if (std::abs(P[0]) < 1e-12) throw std::invalid_argument("line lies at infinity");
        for (int a = 0; a < 4; ++a) {
            A[a] = P[a] / P[0];
            D[a] = Q[a] - Q[0] * A[a];
        }
    } else {
        for (int a = 0; a < 4; ++a) {
            A[a] = Q[a] / Q[0];
            D[a] = P[a] - P[0] * A[a];
        }
    }
    std::vector<Vec3<Complex>> out;
    for (double t : ts) out.push_back({A[1] + t * D[1], A[2] + t * D[2], A[3] + t * D[3]});
    return out;
}

SurfaceCheck line_on_surface(const ProjectiveLine& line, const ThetaPoint& theta, double tol) {
    const auto [P, Q] = line_basis(line);
    SurfaceCheck out;
    for (double t : {0.0, 1.0, -1.0, 2.0, 0.5}) {
        ProjVec X;
        // t = 0.5 stands for the pure second spanning point
        for (int a = 0; a < 4; ++a) X[a] = t == 0.5 ? Q[a] : P[a] + t * Q[a];
        const double n = norm_inf(X);
        out.max_residual = std::max(out.max_residual, std::abs(homogeneous_cubic(X, theta)) / (1.0 + n * n * n));
    }
    out.on_surface = out.max_residual <= tol;
    return out;
}

LineIntersection lines_intersection(const ProjectiveLine& a, const ProjectiveLine& b, double rank_tol) {
    Eigen::Matrix4cd m;
    const std::array<ProjVec, 4> rows = {scaled(a.f1), scaled(a.f2), scaled(b.f1), scaled(b.f2)};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) m(r, c) = rows[r][c];
    }
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int r = 0; r < 4; ++r) {
        if (sv(r) > rank_tol * sv(0)) ++rank;
    }
    LineIntersection out;
    if (rank == 4) {
        out.kind = IntersectionKind::Disjoint;
    } else if (rank == 3) {
        out.kind = IntersectionKind::Point;
        ProjVec v;
        for (int c = 0; c < 4; ++c) v[c] = svd.matrixV()(c, 3);
        out.point = ProjectivePoint::from(v);
    } else {
        out.kind = IntersectionKind::Equal;
    }
    return out;
}

std::string to_string(IntersectionKind k) {
    switch (k) {
        case IntersectionKind::Point: return "point";
        case IntersectionKind::Disjoint: return "disjoint";
        case IntersectionKind::Equal: return "equal";
    }
    return "unknown";
}

// ---- sigma_i and the lines -----------------------------------------------

SigmaLineReport verify_sigma_line_action(const EigenParams& b, double tol) {
    if (discriminant_min_factor(b) < kGeneralPositionTol) {
        throw std::invalid_argument("lines not in general position");
    }
    const ThetaPoint theta = traces_to_theta(traces_from_eigen(b));
    const MonodromyTraces traces = traces_from_eigen(b);
    const std::vector<double> ts = {0.0, 1.0, -1.0};

    SigmaLineReport report;
    for (int i = 1; i <= 3; ++i) {
        const auto [ii, jj, kk] = cyclic_triple(i);
        // sigma_i exchanges slots 1 <-> 2 and 3 <-> 4 in the other two groups
        for (int g : {jj + 1, kk + 1}) {
            for (auto [from, to] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{3, 4}, std::pair{4, 3}}) {
                const ProjectiveLine src = line_from_params(g, from, b);
                const ProjectiveLine dst = line_from_params(g, to, b);
                double res = 0.0;
                for (const auto& x : affine_points(src, ts)) {
                    res = std::max(res, affine_line_residual(dst, sigma_apply(i, x, theta)));
                }
                report.swaps.push_back({i, *src.label, *dst.label, res});
                report.max_residual = std::max(report.max_residual, res);
            }
        }

        // sigma_i(E_i) against E_i (slot 1) and E_j (slot 3) of group i
        const Complex bi = b.b[ii], bj = b.b[jj], bk = b.b[kk], b4 = b.b[3];
        const Complex ai = traces.a[ii], aj = traces.a[jj], ak = traces.a[kk];
        const Complex th_i = theta.theta[ii];
        const Complex beta = bi * b4;
        const Complex e = beta + 1.0 / beta;
        const Complex d = ak * bi + aj * b4;

        QuadraticCheck qc;
        qc.sigma = i;
        const Complex disc = std::sqrt(d * d - 4.0 * beta * (th_i - 2.0 * e));
        qc.roots = {(d + disc) / (2.0 * beta), (d - disc) / (2.0 * beta)};
        const ProjectiveLine ei = line_from_params(i, 1, b);
        for (const Complex& xk : qc.roots) {
            Vec3<Complex> y{};
            y[ii] = e;
            y[kk] = xk;
            y[jj] = d - beta * xk;
            // y on E_i, and sigma_i(y) on E_i means y on sigma_i(E_i)
            qc.residual = std::max({qc.residual, affine_line_residual(ei, y),
                                    affine_line_residual(ei, sigma_apply(i, y, theta))});
        }

        const Complex beta2 = bj * bk;
        const Complex e2 = beta2 + 1.0 / beta2;
        const Complex d2 = traces.a[3] * bj + ai * bk;
        qc.determinant = beta2 - beta;
        // y_j + beta y_k = d and y_j + beta2 y_k = d2
        const Complex yk = (d2 - d) / qc.determinant;
        Vec3<Complex> y{};
        y[ii] = e2;
        y[kk] = yk;
        y[jj] = d - beta * yk;
        qc.ej_point = y;
        const ProjectiveLine ej = line_from_params(i, 3, b);
        qc.ej_residual = std::max(affine_line_residual(ej, y), affine_line_residual(ei, sigma_apply(i, y, theta)));

        report.max_residual = std::max({report.max_residual, qc.residual, qc.ej_residual});
        report.quadratics.push_back(qc);
    }
    report.ok = report.max_residual < tol;
    return report;
}

}  // namespace pvi
