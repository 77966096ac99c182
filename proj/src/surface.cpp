#include "pvi/surface.hpp"

#include <cmath>
#include <regex>
#include <sstream>

namespace pvi {

double scaled_surface_tol(const Vec3<Complex>& x, double surface_tol) {
    const double r = max_abs(x);
    return surface_tol * (1.0 + r * r * r);
}

Complex cubic_eval(const Vec3<Complex>& x, const ThetaPoint& theta) {
    return cubic_eval<Complex>(x, theta.theta);
}

Vec3<Complex> cubic_gradient(const Vec3<Complex>& x, const ThetaPoint& theta) {
    return cubic_gradient<Complex>(x, theta.theta);
}

Vec3<Complex> sigma_apply(int i, const Vec3<Complex>& x, const ThetaPoint& theta) {
    return sigma_apply<Complex>(i, x, theta.theta);
}

AffinePoint make_point(const Vec3<Complex>& x, const ThetaPoint& theta, double surface_tol) {
    AffinePoint p;
    p.x = x;
    p.residual = std::abs(cubic_eval(x, theta));
    p.on_surface = p.residual <= scaled_surface_tol(x, surface_tol);
    return p;
}

namespace {

bool escaped(const Vec3<Complex>& x, double radius) {
    for (const auto& c : x) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > radius) return true;
    }
    return false;
}

MapResult finish(const Vec3<Complex>& x, const Vec4<Complex>& th, bool esc) {
    MapResult r;
    r.theta.theta = th;
    r.point = make_point(x, r.theta);
    r.status = esc ? MapStatus::Escaped : MapStatus::Ok;
    return r;
}

}  // namespace

MapResult g_apply(int i, int sign, const Vec3<Complex>& x, const ThetaPoint& theta,
                  double escape_radius) {
    Vec3<Complex> y = x;
    Vec4<Complex> th = theta.theta;
    g_apply_inplace(i, sign, y, th);
    return finish(y, th, escaped(y, escape_radius));
}

MapResult word_apply(const GroupWord& w, const Vec3<Complex>& x, const ThetaPoint& theta,
                     double escape_radius) {
    Vec3<Complex> y = x;
    Vec4<Complex> th = theta.theta;
    bool esc = false;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->kind == GeneratorLetter::Kind::Sigma) {
            y = sigma_apply<Complex>(it->index, y, th);
        } else {
            g_apply_inplace(it->index, it->power, y, th);
        }
        if (escaped(y, escape_radius)) {
            esc = true;
            break;
        }
    }
    return finish(y, th, esc);
}

MapResult coxeter_apply(const Vec3<Complex>& x, const ThetaPoint& theta, double escape_radius) {
    return word_apply(GroupWord::coxeter(), x, theta, escape_radius);
}

std::vector<MapResult> orbit(const GroupWord& w, const Vec3<Complex>& x, const ThetaPoint& theta,
                             int steps, double escape_radius) {
    std::vector<MapResult> out;
    MapResult cur = finish(x, theta.theta, escaped(x, escape_radius));
    out.push_back(cur);
    for (int s = 0; s < steps && cur.status == MapStatus::Ok; ++s) {
        cur = word_apply(w, cur.point.x, cur.theta, escape_radius);
        out.push_back(cur);
    }
    return out;
}

Eigen::Matrix3cd sigma_jacobian(int i, const Vec3<Complex>& x) {
    const auto [a, b, c] = cyclic_triple(i);
    Eigen::Matrix3cd J = Eigen::Matrix3cd::Identity();
    J(a, a) = -1.0;
    J(a, b) = -x[c];
    J(a, c) = -x[b];
    return J;
}

Eigen::Matrix3cd coxeter_jacobian(const Vec3<Complex>& x, const ThetaPoint& theta, int n,
                                  double escape_radius) {
    if (n < 0) throw std::invalid_argument("iterate count must be nonnegative");
    Eigen::Matrix3cd J = Eigen::Matrix3cd::Identity();
    Vec3<Complex> y = x;
    for (int step = 0; step < n; ++step) {
        for (int i : {3, 2, 1}) {
            J = sigma_jacobian(i, y) * J;
            y = sigma_apply<Complex>(i, y, theta.theta);
        }
        if (escaped(y, escape_radius)) {
            throw std::runtime_error("orbit escaped before the Jacobian was complete");
        }
    }
    return J;
}

std::string to_string(MapStatus s) { return s == MapStatus::Ok ? "ok" : "escaped"; }

// ---- words -------------------------------------------------------------

GroupWord GroupWord::parse(const std::string& text) {
    static const std::regex token(R"(^([sSgG])([123])(?:\^(-?\d+))?$)");
    GroupWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::smatch m;
        if (!std::regex_match(tok, m, token)) {
            throw std::invalid_argument("malformed word token '" + tok + "'");
        }
        GeneratorLetter letter;
        letter.kind = (m[1] == "s" || m[1] == "S") ? GeneratorLetter::Kind::Sigma
                                                     : GeneratorLetter::Kind::G;
        letter.index = std::stoi(m[2]);
        const int exponent = m[3].matched ? std::stoi(m[3]) : 1;
        letter.power = letter.kind == GeneratorLetter::Kind::G && exponent < 0 ? -1 : 1;
        for (int r = 0; r < std::abs(exponent); ++r) w.letters.push_back(letter);
    }
    return w;
}

GroupWord GroupWord::coxeter() {
    using K = GeneratorLetter::Kind;
    return GroupWord{{{K::Sigma, 1, 1}, {K::Sigma, 2, 1}, {K::Sigma, 3, 1}}};
}

std::string GroupWord::str() const {
    std::string out;
    for (const auto& l : letters) {
        if (!out.empty()) out += ' ';
        out += l.kind == GeneratorLetter::Kind::Sigma ? 's' : 'g';
        out += std::to_string(l.index);
        if (l.kind == GeneratorLetter::Kind::G && l.power == -1) out += "^-1";
    }
    return out;
}

GroupWord GroupWord::inverse() const {
    GroupWord inv;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        GeneratorLetter l = *it;
        if (l.kind == GeneratorLetter::Kind::G) l.power = -l.power;
        inv.letters.push_back(l);
    }
    return inv;
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
    GroupWord out = *this;
    out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return out;
}

GroupWord GroupWord::power(int n) const {
    if (n < 0) return inverse().power(-n);
    GroupWord out;
    for (int r = 0; r < n; ++r) out = out * *this;
    return out;
}

}  // namespace pvi
