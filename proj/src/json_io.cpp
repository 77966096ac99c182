#include "pvi/json_io.hpp"

#include <cctype>
#include <limits>
#include <regex>
#include <stdexcept>

namespace pvi {

namespace {

const std::string kNum = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";

double to_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

Json complex_array(const std::array<Complex, 4>& v) {
    Json j = Json::array();
    for (const auto& z : v) j.push_back(complex_to_json(z));
    return j;
}

std::array<Complex, 4> complex4_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 4) {
        throw std::invalid_argument(std::string(what) + " needs exactly 4 entries");
    }
    std::array<Complex, 4> out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = complex_from_json(j[k]);
    return out;
}

}  // namespace

Complex parse_complex(const std::string& raw) {
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    }
    static const std::regex real_only("^[+-]?" + kNum + "$");
    static const std::regex imag_only("^([+-]?)(" + kNum + ")?[ij]$");
    static const std::regex both("^([+-]?" + kNum + ")([+-])(" + kNum + ")?[ij]$");
    std::smatch m;
    if (std::regex_match(text, real_only)) return {to_double(text), 0.0};
    if (std::regex_match(text, m, imag_only)) {
        const double mag = m[2].matched ? to_double(m[2].str()) : 1.0;
        return {0.0, m[1].str() == "-" ? -mag : mag};
    }
    if (std::regex_match(text, m, both)) {
        const double mag = m[3].matched ? to_double(m[3].str()) : 1.0;
        return {to_double(m[1].str()), m[2].str() == "-" ? -mag : mag};
    }
    throw std::invalid_argument("malformed complex number '" + raw + "'");
}

std::optional<Rational> parse_rational(const std::string& raw) {
    static const std::regex frac(R"(^([+-]?\d+)/(\d+)$)");
    static const std::regex dec(R"(^([+-]?)(\d*)(?:\.(\d*))?$)");
    std::smatch m;
    if (std::regex_match(raw, m, frac)) {
        const BigInt den(m[2].str());
        if (den == 0) return std::nullopt;
        std::string num = m[1].str();
        if (!num.empty() && num[0] == '+') num.erase(0, 1);
        return Rational(BigInt(num), den);
    }
    if (std::regex_match(raw, m, dec)) {
        const std::string ip = m[2].str();
        const std::string fp = m[3].matched ? m[3].str() : "";
        if (ip.empty() && fp.empty()) return std::nullopt;
        BigInt num(ip.empty() ? "0" : ip);
        BigInt den = 1;
        for (char c : fp) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        if (m[1].str() == "-") num = -num;
        return Rational(num, den);
    }
    return std::nullopt;
}

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (auto r = parse_rational(s)) return {static_cast<double>(*r), 0.0};
        return parse_complex(s);
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::invalid_argument("expected a number, [re, im] pair or complex string, got " + j.dump());
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json big_to_json(const BigInt& v) { return v.str(); }

BigInt big_from_json(const Json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    throw std::invalid_argument("expected an integer or integer string, got " + j.dump());
}

// ---- parameters --------------------------------------------------------------

KappaPoint kappa_from_json(const Json& j) {
    if (!j.is_array() || (j.size() != 4 && j.size() != 5)) {
        throw std::invalid_argument("kappa needs 4 entries (kappa_1..kappa_4) or 5 (kappa_0..kappa_4)");
    }
    if (j.size() == 4) {
        std::array<Rational, 4> exact;
        bool all_exact = true;
        for (std::size_t k = 0; k < 4; ++k) {
            std::optional<Rational> r;
            if (j[k].is_string()) r = parse_rational(j[k].get<std::string>());
            if (j[k].is_number_integer()) r = Rational(j[k].get<long long>());
            if (!r) {
                all_exact = false;
                break;
            }
            exact[k] = *r;
        }
        if (all_exact) return KappaPoint::from_rationals(exact);
        return KappaPoint::from_tail(complex4_from_json(j, "kappa"));
    }
    std::array<Complex, 5> full;
    for (std::size_t k = 0; k < 5; ++k) full[k] = complex_from_json(j[k]);
    return KappaPoint::from_full(full);
}

Json to_json(const KappaPoint& k) {
    Json j;
    j["kappa"] = Json::array();
    for (const auto& z : k.kappa) j["kappa"].push_back(complex_to_json(z));
    if (k.exact) {
        j["exact"] = Json::array();
        for (const auto& r : *k.exact) j["exact"].push_back(to_string(r));
    } else {
        j["exact"] = nullptr;
    }
    return j;
}

Json to_json(const MonodromyTraces& a) { return {{"a", complex_array(a.a)}}; }
Json to_json(const EigenParams& b) { return {{"b", complex_array(b.b)}}; }
Json to_json(const ThetaPoint& t) { return {{"theta", complex_array(t.theta)}}; }

ThetaPoint theta_from_json(const Json& j) {
    const Json& arr = j.is_object() ? j.at("theta") : j;
    return ThetaPoint{complex4_from_json(arr, "theta")};
}

EigenParams eigen_from_json(const Json& j) {
    const Json& arr = j.is_object() ? j.at("b") : j;
    return EigenParams(complex4_from_json(arr, "b"));
}

Json to_json(const WallReport& r) {
    Json w = Json::array();
    for (const auto& x : r.witnesses) {
        w.push_back({{"kind", to_string(x.kind)},
                     {"index", x.index},
                     {"signs", x.signs},
                     {"m", x.m},
                     {"residual", x.residual}});
    }
    return {{"on_wall", r.on_wall}, {"witnesses", w}};
}

WallReport wall_report_from_json(const Json& j) {
    WallReport r;
    r.on_wall = j.at("on_wall").get<bool>();
    for (const auto& x : j.at("witnesses")) {
        WallWitness w;
        const std::string kind = x.at("kind").get<std::string>();
        if (kind == to_string(WallRelation::KappaInteger)) {
            w.kind = WallRelation::KappaInteger;
        } else if (kind == to_string(WallRelation::SignedSumOdd)) {
            w.kind = WallRelation::SignedSumOdd;
        } else {
            throw std::invalid_argument("unknown wall relation '" + kind + "'");
        }
        w.index = x.at("index").get<int>();
        w.signs = x.at("signs").get<std::array<int, 4>>();
        w.m = x.at("m").get<long long>();
        w.residual = x.at("residual").get<double>();
        r.witnesses.push_back(w);
    }
    return r;
}

// ---- points and counts -----------------------------------------------------

Vec3<Complex> vec3_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("a point needs exactly 3 coordinates");
    return {complex_from_json(j[0]), complex_from_json(j[1]), complex_from_json(j[2])};
}

Json to_json(const AffinePoint& p) {
    Json x = Json::array();
    for (const auto& z : p.x) x.push_back(complex_to_json(z));
    return {{"x", x}, {"residual", p.residual}, {"on_surface", p.on_surface}};
}

AffinePoint affine_point_from_json(const Json& j) {
    AffinePoint p;
    p.x = vec3_from_json(j.at("x"));
    p.residual = j.at("residual").get<double>();
    p.on_surface = j.value("on_surface", false);
    return p;
}

Json to_json(const CountReport& r) {
    Json clusters = Json::array();
    Json points = Json::array();
    for (const auto& c : r.clusters) {
        points.push_back(to_json(c.point));
        clusters.push_back({{"representative", to_json(c.point)},
                            {"cn_residual", c.cn_residual},
                            {"multiplicity_estimate", complex_to_json(c.e2)},
                            {"multiplicity_flag", c.multiplicity_flag},
                            {"minimal_period", c.minimal_period},
                            {"orbit", c.orbit},
                            {"hits", c.hits}});
    }
    return {{"N", r.N},
            {"closed_form", big_to_json(r.closed_form)},
            {"found", r.found},
            {"status", to_string(r.status)},
            {"cycles", r.cycles},
            {"orbit_closed", r.orbit_closed},
            {"multiplicity_flags", r.multiplicity_flags},
            {"seeds", r.seeds},
            {"converged", r.converged},
            {"escaped", r.escaped},
            {"stalled", r.stalled},
            {"rejected", r.rejected},
            {"new_per_batch", r.new_per_batch},
            {"warning", r.warning},
            {"points", points},
            {"clusters", clusters}};
}

CountReport count_report_from_json(const Json& j) {
    CountReport r;
    r.N = j.at("N").get<unsigned>();
    r.closed_form = big_from_json(j.at("closed_form"));
    r.found = j.at("found").get<long long>();
    const std::string status = j.at("status").get<std::string>();
    if (status == "complete") {
        r.status = SolveStatus::Complete;
    } else if (status == "saturated") {
        r.status = SolveStatus::Saturated;
    } else if (status == "partial") {
        r.status = SolveStatus::Partial;
    } else {
        throw std::invalid_argument("unknown status '" + status + "'");
    }
    r.cycles = j.at("cycles").get<long long>();
    r.orbit_closed = j.at("orbit_closed").get<bool>();
    r.multiplicity_flags = j.at("multiplicity_flags").get<long long>();
    r.seeds = j.at("seeds").get<long long>();
    r.converged = j.at("converged").get<long long>();
    r.escaped = j.at("escaped").get<long long>();
    r.stalled = j.at("stalled").get<long long>();
    r.rejected = j.at("rejected").get<long long>();
    r.new_per_batch = j.at("new_per_batch").get<std::vector<long long>>();
    r.warning = j.value("warning", "");
    for (const auto& c : j.at("clusters")) {
        PeriodicCluster cl;
        cl.point = affine_point_from_json(c.at("representative"));
        cl.cn_residual = c.at("cn_residual").get<double>();
        cl.e2 = complex_from_json(c.at("multiplicity_estimate"));
        cl.multiplicity_flag = c.at("multiplicity_flag").get<bool>();
        cl.minimal_period = c.at("minimal_period").get<int>();
        cl.orbit = c.at("orbit").get<int>();
        cl.hits = c.at("hits").get<long long>();
        r.clusters.push_back(cl);
    }
    return r;
}

// ---- lattice -------------------------------------------------------------------

Json to_json(const LatticeEndo& m) {
    Json rows = Json::array();
    for (const auto& row : m.entries) {
        Json r = Json::array();
        for (const auto& v : row) {
            if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
                r.push_back(static_cast<long long>(v));
            } else {
                r.push_back(v.str());
            }
        }
        rows.push_back(r);
    }
    return rows;
}

LatticeEndo endo_from_json(const Json& j) {
    if (!j.is_array() || j.size() != kLatticeRank) throw std::invalid_argument("matrix needs 7 rows");
    LatticeEndo m;
    for (int a = 0; a < kLatticeRank; ++a) {
        if (!j[a].is_array() || j[a].size() != kLatticeRank) throw std::invalid_argument("matrix rows need 7 entries");
        for (int b = 0; b < kLatticeRank; ++b) m.entries[a][b] = big_from_json(j[a][b]);
    }
    return m;
}

Json poly_to_json(const IntPoly& p) {
    Json j = Json::array();
    for (const auto& c : p) j.push_back(c.str());
    return j;
}

// ---- lines -------------------------------------------------------------------

Json to_json(const ProjectiveLine& l) {
    Json f1 = Json::array(), f2 = Json::array();
    for (int a = 0; a < 4; ++a) {
        f1.push_back(complex_to_json(l.f1[a]));
        f2.push_back(complex_to_json(l.f2[a]));
    }
    Json j = {{"f1", f1}, {"f2", f2}};
    j["label"] = l.label ? Json(l.label->str()) : Json(nullptr);
    if (l.slot) {
        j["group"] = l.slot->group;
        j["slot"] = l.slot->slot;
    }
    return j;
}

namespace {

LineLabel label_from_string(const std::string& s) {
    static const std::regex re(R"(^([EGF])([1-6])([1-6])?$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw std::invalid_argument("malformed line label '" + s + "'");
    const int a = std::stoi(m[2].str());
    const char kind = m[1].str()[0];
    if (kind == 'F') {
        if (!m[3].matched) throw std::invalid_argument("F labels need two indices");
        return LineLabel::F(a, std::stoi(m[3].str()));
    }
    if (m[3].matched) throw std::invalid_argument("E and G labels take one index");
    return kind == 'E' ? LineLabel::E(a) : LineLabel::G(a);
}

}  // namespace

ProjectiveLine line_from_json(const Json& j) {
    ProjVec f1, f2;
    for (int a = 0; a < 4; ++a) {
        f1[a] = complex_from_json(j.at("f1").at(a));
        f2[a] = complex_from_json(j.at("f2").at(a));
    }
    ProjectiveLine l = ProjectiveLine::make(f1, f2);
    if (j.contains("label") && j["label"].is_string()) l.label = label_from_string(j["label"].get<std::string>());
    if (j.contains("group") && j.contains("slot")) l.slot = LineSlot{j["group"].get<int>(), j["slot"].get<int>()};
    return l;
}

Json to_json(const SigmaLineReport& r) {
    Json swaps = Json::array();
    for (const auto& s : r.swaps) {
        swaps.push_back({{"sigma", s.sigma},
                         {"source", s.source.str()},
                         {"target", s.target.str()},
                         {"residual", s.residual}});
    }
    Json quads = Json::array();
    for (const auto& q : r.quadratics) {
        Json ej = Json::array();
        for (const auto& z : q.ej_point) ej.push_back(complex_to_json(z));
        quads.push_back({{"sigma", q.sigma},
                         {"roots", Json::array({complex_to_json(q.roots[0]), complex_to_json(q.roots[1])})},
                         {"residual", q.residual},
                         {"ej_point", ej},
                         {"determinant", complex_to_json(q.determinant)},
                         {"ej_residual", q.ej_residual}});
    }
    return {{"swaps", swaps}, {"quadratics", quads}, {"max_residual", r.max_residual}, {"ok", r.ok}};
}

Json to_json(const VerifyReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"N", row.N},
                        {"lefschetz_traces", big_to_json(row.lefschetz_traces)},
                        {"lefschetz_closed", big_to_json(row.lefschetz_closed)},
                        {"per_kappa", big_to_json(row.per_kappa)},
                        {"per_2n_affine", big_to_json(row.per_2n_affine)},
                        {"surd_form", big_to_json(row.surd_form)},
                        {"c_n", big_to_json(row.c_n)}});
    }
    return {{"rows", rows}, {"zeta_order", r.zeta_order}, {"ok", r.ok}};
}

}  // namespace pvi
