#include "pvi/lattice.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace pvi {

// ---- classes and endomorphisms ------------------------------------------

CohomClass CohomClass::basis(int a) {
    if (a < 0 || a >= kLatticeRank) throw std::invalid_argument("basis index out of range");
    CohomClass c;
    c.coeffs[a] = 1;
    return c;
}

CohomClass CohomClass::from_ints(const std::array<long long, kLatticeRank>& v) {
    CohomClass c;
    for (int a = 0; a < kLatticeRank; ++a) c.coeffs[a] = v[a];
    return c;
}

CohomClass CohomClass::operator+(const CohomClass& o) const {
    CohomClass r;
    for (int a = 0; a < kLatticeRank; ++a) r.coeffs[a] = coeffs[a] + o.coeffs[a];
    return r;
}

CohomClass CohomClass::operator-(const CohomClass& o) const {
    CohomClass r;
    for (int a = 0; a < kLatticeRank; ++a) r.coeffs[a] = coeffs[a] - o.coeffs[a];
    return r;
}

CohomClass CohomClass::operator-() const { return CohomClass{} - *this; }

CohomClass CohomClass::operator*(const BigInt& s) const {
    CohomClass r;
    for (int a = 0; a < kLatticeRank; ++a) r.coeffs[a] = coeffs[a] * s;
    return r;
}

bool CohomClass::is_zero() const {
    for (const auto& c : coeffs) {
        if (c != 0) return false;
    }
    return true;
}

std::string CohomClass::str() const {
    std::string s = "(";
    for (int a = 0; a < kLatticeRank; ++a) {
        if (a) s += ",";
        s += coeffs[a].str();
    }
    return s + ")";
}

LatticeEndo LatticeEndo::identity() {
    LatticeEndo m;
    for (int a = 0; a < kLatticeRank; ++a) m.entries[a][a] = 1;
    return m;
}

LatticeEndo LatticeEndo::zero() { return LatticeEndo{}; }

LatticeEndo LatticeEndo::from_rows(
    const std::array<std::array<long long, kLatticeRank>, kLatticeRank>& rows) {
    LatticeEndo m;
    for (int a = 0; a < kLatticeRank; ++a) {
        for (int b = 0; b < kLatticeRank; ++b) m.entries[a][b] = rows[a][b];
    }
    return m;
}

LatticeEndo LatticeEndo::operator*(const LatticeEndo& o) const {
    LatticeEndo r;
    for (int a = 0; a < kLatticeRank; ++a) {
        for (int b = 0; b < kLatticeRank; ++b) {
            BigInt s = 0;
            for (int c = 0; c < kLatticeRank; ++c) s += entries[a][c] * o.entries[c][b];
            r.entries[a][b] = s;
        }
    }
    return r;
}

LatticeEndo LatticeEndo::operator-(const LatticeEndo& o) const {
    LatticeEndo r;
    for (int a = 0; a < kLatticeRank; ++a) {
        for (int b = 0; b < kLatticeRank; ++b) r.entries[a][b] = entries[a][b] - o.entries[a][b];
    }
    return r;
}

CohomClass LatticeEndo::operator*(const CohomClass& v) const {
    CohomClass r;
    for (int a = 0; a < kLatticeRank; ++a) {
        BigInt s = 0;
        for (int b = 0; b < kLatticeRank; ++b) s += entries[a][b] * v.coeffs[b];
        r.coeffs[a] = s;
    }
    return r;
}

CohomClass LatticeEndo::column(int b) const {
    CohomClass c;
    for (int a = 0; a < kLatticeRank; ++a) c.coeffs[a] = entries[a][b];
    return c;
}

BigInt LatticeEndo::trace() const {
    BigInt t = 0;
    for (int a = 0; a < kLatticeRank; ++a) t += entries[a][a];
    return t;
}

BigInt intersection(const CohomClass& u, const CohomClass& v) {
    BigInt s = u.coeffs[0] * v.coeffs[0];
    for (int a = 1; a < kLatticeRank; ++a) s -= u.coeffs[a] * v.coeffs[a];
    return s;
}

// ---- the 27 lines -------------------------------------------------------

namespace {

void check_line_index(int a) {
    if (a < 1 || a > 6) throw std::invalid_argument("line index must be in 1..6");
}

}  // namespace

LineLabel LineLabel::E(int a) {
    check_line_index(a);
    return {Kind::E, a, 0};
}

LineLabel LineLabel::G(int a) {
    check_line_index(a);
    return {Kind::G, a, 0};
}

LineLabel LineLabel::F(int a, int b) {
    check_line_index(a);
    check_line_index(b);
    if (a == b) throw std::invalid_argument("F_ab needs distinct indices");
    return {Kind::F, std::min(a, b), std::max(a, b)};
}

std::string LineLabel::str() const {
    switch (kind) {
        case Kind::E: return "E" + std::to_string(a);
        case Kind::G: return "G" + std::to_string(a);
        case Kind::F: return "F" + std::to_string(a) + std::to_string(b);
    }
    return {};
}

CohomClass class_of(const LineLabel& label) {
    switch (label.kind) {
        case LineLabel::Kind::E:
            return CohomClass::basis(label.a);
        case LineLabel::Kind::F:
            return CohomClass::basis(0) - CohomClass::basis(label.a) - CohomClass::basis(label.b);
        case LineLabel::Kind::G: {
            CohomClass c = CohomClass::basis(0) * 2;
            for (int b = 1; b <= 6; ++b) {
                if (b != label.a) c = c - CohomClass::basis(b);
            }
            return c;
        }
    }
    throw std::logic_error("unknown line kind");
}

std::vector<LineLabel> all_line_labels() {
    std::vector<LineLabel> out;
    for (int a = 1; a <= 6; ++a) out.push_back(LineLabel::E(a));
    for (int a = 1; a <= 6; ++a) {
        for (int b = a + 1; b <= 6; ++b) out.push_back(LineLabel::F(a, b));
    }
    for (int a = 1; a <= 6; ++a) out.push_back(LineLabel::G(a));
    return out;
}

CohomClass line_at_infinity_class(int a) {
    if (a < 1 || a > 3) throw std::invalid_argument("line at infinity index must be 1, 2 or 3");
    return class_of(LineLabel::F(2 * a - 1, 2 * a));
}

// ---- involutions and the Coxeter map ---------------------------------------

const LatticeEndo& printed_sigma_star(int i) {
    static const LatticeEndo s1 = LatticeEndo::from_rows({{
        {6, 3, 3, 2, 2, 2, 2},
        {-3, -2, -1, -1, -1, -1, -1},
        {-3, -1, -2, -1, -1, -1, -1},
        {-2, -1, -1, -1, 0, -1, -1},
        {-2, -1, -1, 0, -1, -1, -1},
        {-2, -1, -1, -1, -1, -1, 0},
        {-2, -1, -1, -1, -1, 0, -1},
    }});
    static const LatticeEndo s2 = LatticeEndo::from_rows({{
        {6, 2, 2, 3, 3, 2, 2},
        {-2, -1, 0, -1, -1, -1, -1},
        {-2, 0, -1, -1, -1, -1, -1},
        {-3, -1, -1, -2, -1, -1, -1},
        {-3, -1, -1, -1, -2, -1, -1},
        {-2, -1, -1, -1, -1, -1, 0},
        {-2, -1, -1, -1, -1, 0, -1},
    }});
    static const LatticeEndo s3 = LatticeEndo::from_rows({{
        {6, 2, 2, 2, 2, 3, 3},
        {-2, -1, 0, -1, -1, -1, -1},
        {-2, 0, -1, -1, -1, -1, -1},
        {-2, -1, -1, -1, 0, -1, -1},
        {-2, -1, -1, 0, -1, -1, -1},
        {-3, -1, -1, -1, -1, -2, -1},
        {-3, -1, -1, -1, -1, -1, -2},
    }});
    switch (i) {
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        default: throw std::invalid_argument("involution index must be 1, 2 or 3");
    }
}

const LatticeEndo& printed_coxeter_star() {
    static const LatticeEndo c = LatticeEndo::from_rows({{
        {12, 6, 6, 4, 4, 3, 3},
        {-3, -2, -1, -1, -1, -1, -1},
        {-3, -1, -2, -1, -1, -1, -1},
        {-4, -2, -2, -2, -1, -1, -1},
        {-4, -2, -2, -1, -2, -1, -1},
        {-6, -3, -3, -2, -2, -2, -1},
        {-6, -3, -3, -2, -2, -1, -2},
    }});
    return c;
}

LatticeEndo reconstruct_sigma_star(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("involution index must be 1, 2 or 3");
    // delta_a = (E_a, E_a)
    auto delta = [](int a) { return a == 0 ? 1 : -1; };
    const int p = 2 * i - 1;
    const int q = 2 * i;

    LatticeEndo m;
    std::array<std::array<bool, kLatticeRank>, kLatticeRank> known{};
    auto set = [&](int a, int b, const BigInt& v) {
        m.entries[a][b] = v;
        known[a][b] = true;
    };

    // (sigma* E_p, E_p) = 2 and (sigma* E_p, E_q) = 1
    set(p, p, delta(p) * 2);
    set(q, q, delta(q) * 2);
    set(p, q, delta(p) * 1);
    set(q, p, delta(q) * 1);

    // sigma exchanges E_r and G_s within each swapped pair {r, s}
    for (int pair = 1; pair <= 3; ++pair) {
        if (pair == i) continue;
        const int r = 2 * pair - 1;
        const int s = 2 * pair;
        const CohomClass gr = class_of(LineLabel::G(s));
        const CohomClass gs = class_of(LineLabel::G(r));
        for (int a = 0; a < kLatticeRank; ++a) {
            set(a, r, gr.coeffs[a]);
            set(a, s, gs.coeffs[a]);
        }
    }

    // adjointness xi_ab = delta_a delta_b xi_ba fills rows r of columns p, q
    for (int a = 1; a < kLatticeRank; ++a) {
        for (int b : {p, q}) {
            if (!known[a][b] && known[b][a]) set(a, b, delta(a) * delta(b) * m.entries[b][a]);
        }
    }

    // blow-down of L_i = E0 - E_p - E_q: column 0 is column p plus column q
    for (int a = 1; a < kLatticeRank; ++a) {
        if (!known[a][p] || !known[a][q]) throw std::logic_error("sigma* reconstruction incomplete");
        set(a, 0, m.entries[a][p] + m.entries[a][q]);
    }
    // first row by adjointness from the first column, then the corner
    for (int b = 1; b < kLatticeRank; ++b) {
        if (!known[0][b]) set(0, b, delta(0) * delta(b) * m.entries[b][0]);
    }
    set(0, 0, m.entries[0][p] + m.entries[0][q]);

    for (int a = 0; a < kLatticeRank; ++a) {
        for (int b = 0; b < kLatticeRank; ++b) {
            if (!known[a][b]) throw std::logic_error("sigma* reconstruction left an entry undetermined");
        }
    }
    return m;
}

LatticeEndo sigma_star(int i) {
    LatticeEndo m = reconstruct_sigma_star(i);
    if (!(m == printed_sigma_star(i))) {
        throw std::logic_error("reconstructed sigma_" + std::to_string(i) +
                               "* differs from the golden matrix");
    }
    return m;
}

LatticeEndo coxeter_star() {
    LatticeEndo c = sigma_star(3) * sigma_star(2) * sigma_star(1);
    if (!(c == printed_coxeter_star())) {
        throw std::logic_error("sigma_3* sigma_2* sigma_1* differs from the golden c*");
    }
    return c;
}

// ---- polynomials -----------------------------------------------------------

IntPoly charpoly(const LatticeEndo& m) {
    const int n = kLatticeRank;
    using Mat = std::vector<std::vector<BigInt>>;
    Mat a(n, std::vector<BigInt>(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a[r][c] = m.entries[r][c];
    }

    // highest degree first during the recursion
    std::vector<BigInt> p{1};
    for (int k = 0; k < n; ++k) {
        // leading block A_k, column C = a[0..k-1][k], row R = a[k][0..k-1];
        // Toeplitz first column (1, -a_kk, -R C, -R A_k C, ...)
        std::vector<BigInt> first(k + 2);
        first[0] = 1;
        first[1] = -a[k][k];
        for (int t = 2; t <= k + 1; ++t) {
            // -R A^{t-2} C
            std::vector<BigInt> u(k);
            for (int r = 0; r < k; ++r) u[r] = a[r][k];
            for (int e = 0; e < t - 2; ++e) {
                std::vector<BigInt> w(k);
                for (int r = 0; r < k; ++r) {
                    BigInt acc = 0;
                    for (int c = 0; c < k; ++c) acc += a[r][c] * u[c];
                    w[r] = acc;
                }
                u = std::move(w);
            }
            BigInt s = 0;
            for (int r = 0; r < k; ++r) s += a[k][r] * u[r];
            first[t] = -s;
        }
        // lower-triangular Toeplitz (k+2) x (k+1) times p
        std::vector<BigInt> next(k + 2);
        for (int r = 0; r < k + 2; ++r) {
            BigInt acc = 0;
            for (int c = 0; c <= std::min(r, k); ++c) acc += first[r - c] * p[c];
            next[r] = acc;
        }
        p = std::move(next);
    }
    return IntPoly(p.rbegin(), p.rend());
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

IntPoly poly_pow(const IntPoly& a, int n) {
    IntPoly r{1};
    for (int e = 0; e < n; ++e) r = poly_mul(r, a);
    return r;
}

std::string poly_to_string(const IntPoly& p) {
    std::string out;
    for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d) {
        const BigInt& c = p[d];
        if (c == 0) continue;
        const BigInt mag = c < 0 ? BigInt(-c) : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mag != 1 || d == 0) out += mag.str();
        if (d >= 1) out += "x";
        if (d >= 2) out += "^" + std::to_string(d);
    }
    return out.empty() ? "0" : out;
}

namespace {

void trim(IntPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor; returns false if the remainder is nonzero.
bool divide_monic(const IntPoly& p, const IntPoly& d, IntPoly& quotient) {
    IntPoly r = p;
    trim(r);
    const std::size_t dd = d.size() - 1;
    if (r.size() - 1 < dd) return false;
    quotient.assign(r.size() - dd, 0);
    for (std::size_t k = r.size(); k-- > dd;) {
        const BigInt coef = r[k];
        quotient[k - dd] = coef;
        for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= coef * d[j];
    }
    for (const auto& c : r) {
        if (c != 0) return false;
    }
    return true;
}

using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rat_mod(RatPoly a, const RatPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
        trim(a);
    }
    return a;
}

RatPoly rat_div(RatPoly a, const RatPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {};
    RatPoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
        trim(a);
    }
    return q;
}

RatPoly square_free_part(const IntPoly& p) {
    RatPoly a(p.begin(), p.end());
    trim(a);
    RatPoly da;
    for (std::size_t k = 1; k < a.size(); ++k) da.push_back(a[k] * static_cast<long long>(k));
    trim(da);
    if (da.empty()) return a;
    RatPoly g = a, h = da;
    while (!h.empty()) {
        RatPoly r = rat_mod(g, h);
        g = std::move(h);
        h = std::move(r);
    }
    return rat_div(a, g);
}

}  // namespace

int strip_factor(IntPoly& p, const IntPoly& d) {
    if (d.empty() || d.back() != 1) throw std::invalid_argument("strip_factor needs a monic divisor");
    int mult = 0;
    IntPoly q;
    while (p.size() >= d.size() && divide_monic(p, d, q)) {
        p = q;
        ++mult;
    }
    return mult;
}

double max_root_modulus(const IntPoly& p) {
    const RatPoly sf = square_free_part(p);
    if (sf.size() < 2) throw std::invalid_argument("polynomial has no roots");
    const int n = static_cast<int>(sf.size()) - 1;
    std::vector<std::complex<long double>> coef(sf.size());
    for (std::size_t k = 0; k < sf.size(); ++k) coef[k] = static_cast<long double>(sf[k] / sf.back());

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 1; r < n; ++r) companion(r, r - 1) = 1.0;
    for (int r = 0; r < n; ++r) companion(r, n - 1) = -static_cast<std::complex<double>>(coef[r]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);

    long double best = 0.0L;
    for (int r = 0; r < n; ++r) {
        std::complex<long double> z = solver.eigenvalues()[r];
        for (int it = 0; it < 8; ++it) {
            std::complex<long double> val = 0.0L, der = 0.0L;
            for (int k = n; k >= 0; --k) {
                der = der * z + val;
                val = val * z + coef[k];
            }
            if (std::abs(der) == 0.0L) break;
            z -= val / der;
        }
        best = std::max(best, std::abs(z));
    }
    return static_cast<double>(best);
}

double spectral_radius(const LatticeEndo& m) { return max_root_modulus(charpoly(m)); }

LatticeEndo matrix_power(const LatticeEndo& m, unsigned n) {
    LatticeEndo result = LatticeEndo::identity();
    LatticeEndo base = m;
    while (n) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n) base = base * base;
    }
    return result;
}

BigInt trace_power(const LatticeEndo& m, unsigned n) { return matrix_power(m, n).trace(); }

int class_rank(const std::vector<CohomClass>& vs) {
    std::vector<std::array<Rational, kLatticeRank>> rows;
    for (const auto& v : vs) {
        std::array<Rational, kLatticeRank> r;
        for (int a = 0; a < kLatticeRank; ++a) r[a] = v.coeffs[a];
        rows.push_back(r);
    }
    int rank = 0;
    for (int col = 0; col < kLatticeRank && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Rational f = rows[r][col] / rows[rank][col];
            for (int a = 0; a < kLatticeRank; ++a) rows[r][a] -= f * rows[rank][a];
        }
        ++rank;
    }
    return rank;
}

EigenvectorReport eigenvector_checks() {
    const LatticeEndo c = coxeter_star();
    const CohomClass e0 = CohomClass::basis(0);
    CohomClass v0 = e0 * 2;
    for (int a = 1; a <= 6; ++a) v0 = v0 - CohomClass::basis(a);
    const std::vector<std::pair<std::string, CohomClass>> vs = {
        {"V0", v0},
        {"Vi", CohomClass::basis(1) - CohomClass::basis(2)},
        {"Vj", CohomClass::basis(3) - CohomClass::basis(4)},
        {"Vk", CohomClass::basis(5) - CohomClass::basis(6)},
    };
    const std::array<std::string, 3> line_names = {"Li", "Lj", "Lk"};

    EigenvectorReport report;
    auto record = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
        if (!ok) throw std::logic_error("eigenvector check failed: " + report.checks.back().name + " " +
                                        report.checks.back().detail);
    };

    std::vector<CohomClass> span;
    for (const auto& [name, v] : vs) {
        const CohomClass image = c * v;
        record("c*" + name + " = -" + name, image == -v, "image " + image.str());
        span.push_back(v);
    }
    for (const auto& [name, v] : vs) {
        for (int b = 1; b <= 3; ++b) {
            const BigInt ip = intersection(v, line_at_infinity_class(b));
            record("(" + name + "," + line_names[b - 1] + ") = 0", ip == 0, "value " + ip.str());
        }
    }
    for (std::size_t s = 0; s < vs.size(); ++s) {
        for (std::size_t t = s + 1; t < vs.size(); ++t) {
            const BigInt ip = intersection(vs[s].second, vs[t].second);
            record("(" + vs[s].first + "," + vs[t].first + ") = 0", ip == 0, "value " + ip.str());
        }
    }
    const int rank = class_rank(span);
    record("rank span(V) = 4", rank == 4, "rank " + std::to_string(rank));
    report.ok = true;
    return report;
}

}  // namespace pvi
