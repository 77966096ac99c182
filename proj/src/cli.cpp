#include "pvi/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace pvi {

OutputFormat parse_output_format(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "pretty") return OutputFormat::Pretty;
    throw std::invalid_argument("output must be json, csv or pretty");
}

namespace {

std::string cell(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

void pretty(const Json& v, const std::string& indent, std::ostream& os) {
    for (auto it = v.begin(); it != v.end(); ++it) {
        const Json& x = it.value();
        os << indent;
        if (v.is_object()) os << it.key() << ":";
        const bool nested = (x.is_object() && !x.empty()) ||
                            (x.is_array() && !x.empty() && (x[0].is_object() || x.size() > 8));
        if (nested) {
            os << (v.is_object() ? "\n" : "-\n");
            pretty(x, indent + "  ", os);
        } else {
            os << (v.is_object() ? " " : "- ") << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
        }
    }
}

}  // namespace

std::string render(const Json& doc, OutputFormat fmt, const std::string& table_key) {
    std::ostringstream os;
    switch (fmt) {
        case OutputFormat::Json:
            os << doc.dump() << "\n";
            break;
        case OutputFormat::Pretty:
            if (doc.is_structured()) {
                pretty(doc, "", os);
            } else {
                os << (doc.is_string() ? doc.get<std::string>() : doc.dump()) << "\n";
            }
            break;
        case OutputFormat::Csv: {
            const Json* table = nullptr;
            if (!table_key.empty() && doc.contains(table_key)) table = &doc.at(table_key);
            if (table && table->is_array() && !table->empty() && (*table)[0].is_object()) {
                std::vector<std::string> keys;
                for (auto it = (*table)[0].begin(); it != (*table)[0].end(); ++it) keys.push_back(it.key());
                for (std::size_t k = 0; k < keys.size(); ++k) os << (k ? "," : "") << keys[k];
                os << "\n";
                for (const auto& row : *table) {
                    for (std::size_t k = 0; k < keys.size(); ++k) {
                        os << (k ? "," : "") << (row.contains(keys[k]) ? cell(row.at(keys[k])) : "");
                    }
                    os << "\n";
                }
            } else {
                os << "key,value\n";
                for (auto it = doc.begin(); it != doc.end(); ++it) os << it.key() << "," << cell(it.value()) << "\n";
            }
            break;
        }
    }
    return os.str();
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

namespace {

// ---- argument helpers ------------------------------------------------------

/// JSON array text, or a bare comma-separated list of number strings.
Json parse_list(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') {
        try {
            return Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument(std::string("malformed JSON list: ") + e.what());
        }
    }
    Json arr = Json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) arr.push_back(item);
    return arr;
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Result {
    Json doc;
    std::string table_key;
    int code = exit_code::ok;
};

WallReport walls_for(const KappaPoint& k, const std::string& mode, double tol) {
    if (mode == "exact") return wall_membership(k, WallMode::Exact, tol);
    if (mode == "tolerant") return wall_membership(k, WallMode::Tolerant, tol);
    if (mode == "auto") return wall_membership(k, k.exact ? WallMode::Exact : WallMode::Tolerant, tol);
    throw std::invalid_argument("wall mode must be exact, tolerant or auto");
}

std::string factored_text(const IntPoly& p) {
    IntPoly rest = p;
    const int m0 = strip_factor(rest, {0, 1});
    const int mp = strip_factor(rest, {-1, 1});
    const int mm = strip_factor(rest, {1, 1});
    std::string out;
    auto power = [](int m) { return m > 1 ? "^" + std::to_string(m) : std::string(); };
    if (m0) out += "x" + power(m0);
    if (mp) out += "(x - 1)" + power(mp);
    if (mm) out += "(x + 1)" + power(mm);
    if (rest.size() > 1) out += "(" + poly_to_string(rest) + ")";
    return out.empty() ? poly_to_string(p) : out;
}

// ---- subcommand state ------------------------------------------------------

struct Options {
    std::string output = "json";
    std::uint64_t rng = 1;
    std::string config;

    std::string kappa, theta, b, x, word = "s1 s2 s3";
    std::string wall_mode = "auto";
    double wall_tol = kDefaultWallTol;
    double line_tol = 1e-8;

    bool matrices = false, charpoly = false, spectral = false, eigen = false;
    unsigned trace = 0;

    int steps = 10;
    double escape = kEscapeRadius;

    unsigned N = 1;
    std::string space = "affine";
    unsigned order = 12;
    unsigned nmax = 20;

    long long seeds = 0;
    int batches = 10, max_iter = 100, saturation = 5, threads = 1;
    double newton_tol = 1e-10, dedup = 1e-6, surface_tol = kSurfaceTol, box = 10.0, mult_tol = 1e-6;
};

KappaPoint need_kappa(const Options& o) { return kappa_from_json(parse_list(o.kappa)); }

EigenParams b_from_options(const Options& o) {
    if (!o.kappa.empty()) return kappa_to_eigen(need_kappa(o));
    if (!o.b.empty()) return eigen_from_json(parse_list(o.b));
    throw CLI::ValidationError("--kappa or --b", "one of them is required");
}

// ---- handlers ----------------------------------------------------------------

Result run_params(const Options& o) {
    if (o.kappa.empty()) throw CLI::ValidationError("--kappa", "required");
    const KappaPoint k = need_kappa(o);
    const WallReport walls = walls_for(k, o.wall_mode, o.wall_tol);
    Json doc = to_json(k);
    doc["a"] = to_json(kappa_to_traces(k))["a"];
    doc["b"] = to_json(kappa_to_eigen(k))["b"];
    doc["theta"] = to_json(rh_params(k))["theta"];
    doc["wall"] = to_json(walls);
    return {doc, "", exit_code::ok};
}

Result run_disc(const Options& o) {
    const EigenParams b = b_from_options(o);
    const double minf = discriminant_min_factor(b);
    Json doc = to_json(b);
    doc["discriminant"] = complex_to_json(discriminant(b));
    doc["min_factor"] = minf;
    doc["general_position"] = minf >= kGeneralPositionTol;
    return {doc, "", exit_code::ok};
}

Result run_lattice(const Options& o) {
    const bool all = !o.matrices && !o.charpoly && !o.spectral && !o.eigen && o.trace == 0;
    Json doc = Json::object();
    Result res;
    try {
        const LatticeEndo c = coxeter_star();
        if (all || o.matrices) {
            doc["matrices"] = {{"sigma1", to_json(sigma_star(1))},
                               {"sigma2", to_json(sigma_star(2))},
                               {"sigma3", to_json(sigma_star(3))},
                               {"c", to_json(c)}};
        }
        if (all || o.charpoly) {
            const IntPoly p = charpoly(c);
            doc["charpoly"] = {{"text", poly_to_string(p)},
                               {"factored", factored_text(p)},
                               {"coefficients", poly_to_json(p)}};
        }
        if (all || o.spectral) {
            const double rho = spectral_radius(c);
            doc["spectral_radius"] = {{"value", rho}, {"error", std::abs(rho - (2.0 + std::sqrt(5.0)))}};
        }
        if (all || o.eigen) {
            const EigenvectorReport rep = eigenvector_checks();
            Json checks = Json::array();
            for (const auto& ch : rep.checks) checks.push_back({{"name", ch.name}, {"ok", ch.ok}});
            doc["eigenvectors"] = {{"ok", rep.ok}, {"checks", checks}};
        }
        if (o.trace > 0) doc["trace"] = {{"N", o.trace}, {"value", trace_power(c, o.trace).str()}};
    } catch (const std::logic_error& e) {
        throw Failure(e.what());
    }
    res.doc = doc;
    return res;
}

Result run_lines(const Options& o) {
    const EigenParams b = b_from_options(o);
    const ThetaPoint theta = o.kappa.empty() ? traces_to_theta(traces_from_eigen(b)) : rh_params(need_kappa(o));
    SigmaLineReport sigma;
    try {
        sigma = verify_sigma_line_action(b, o.line_tol);
    } catch (const std::invalid_argument& e) {
        throw Failure(e.what());
    }
    const auto lines = all_lines(b);
    Json arr = Json::array();
    bool all_on = true;
    for (const auto& l : lines) {
        const SurfaceCheck chk = line_on_surface(l, theta, o.line_tol);
        all_on = all_on && chk.on_surface;
        Json j = to_json(l);
        j["residual"] = chk.max_residual;
        j["on_surface"] = chk.on_surface;
        arr.push_back(j);
    }
    long long mismatches = 0, coincident = 0;
    for (std::size_t a = 0; a < lines.size(); ++a) {
        for (std::size_t c = a + 1; c < lines.size(); ++c) {
            const auto hit = lines_intersection(lines[a], lines[c]);
            if (hit.kind == IntersectionKind::Equal) ++coincident;
            const bool meets = hit.kind == IntersectionKind::Point;
            if (meets != (intersection(class_of(*lines[a].label), class_of(*lines[c].label)) == 1)) ++mismatches;
        }
    }
    const bool ok = all_on && sigma.ok && mismatches == 0 && coincident == 0;
    Json doc = {{"lines", arr},
                {"sigma", to_json(sigma)},
                {"incidence", {{"pairs", lines.size() * (lines.size() - 1) / 2},
                               {"mismatches", mismatches},
                               {"coincident", coincident}}},
                {"ok", ok}};
    return {doc, "lines", ok ? exit_code::ok : exit_code::failure};
}

Result run_orbit(const Options& o) {
    if (o.x.empty()) throw CLI::ValidationError("--x", "required");
    ThetaPoint theta;
    if (!o.theta.empty()) {
        theta = theta_from_json(parse_list(o.theta));
    } else if (!o.kappa.empty()) {
        theta = rh_params(need_kappa(o));
    } else {
        throw CLI::ValidationError("--theta or --kappa", "one of them is required");
    }
    const GroupWord w = GroupWord::parse(o.word);
    const Vec3<Complex> x = vec3_from_json(parse_list(o.x));
    Json steps = Json::array();
    int n = 0;
    for (const auto& r : orbit(w, x, theta, o.steps, o.escape)) {
        Json j = to_json(r.point);
        j["n"] = n++;
        j["theta"] = to_json(r.theta)["theta"];
        j["status"] = to_string(r.status);
        steps.push_back(j);
    }
    return {{{"word", w.str()}, {"steps", steps}}, "steps", exit_code::ok};
}

Result run_count(const Options& o) {
    const Space space = parse_space(o.space);
    const LefschetzValue lf = lefschetz_number(o.N);
    Json doc = {{"N", o.N},
                {"space", to_string(space)},
                {"count", per_count_closed(o.N, space).str()},
                {"lefschetz", lf.from_traces.str()},
                {"lefschetz_closed", lf.closed_form.str()},
                {"lefschetz_real", lf.closed_real}};
    return {doc, "", lf.from_traces == lf.closed_form ? exit_code::ok : exit_code::failure};
}

Result run_count_kappa(const Options& o) {
    const BigInt v = per_kappa_closed(o.N);
    const bool ok = v == per_count_closed(2 * o.N, Space::Affine);
    return {{{"N", o.N}, {"count", v.str()}, {"c_n", c_sequence(o.N).str()}, {"matches_period_2n", ok}},
            "",
            ok ? exit_code::ok : exit_code::failure};
}

Result run_zeta(const Options& o) {
    std::vector<BigInt> z;
    try {
        z = zeta_coefficients(o.order);
    } catch (const std::logic_error& e) {
        throw Failure(e.what());
    }
    Json coeffs = Json::array();
    for (const auto& c : z) coeffs.push_back(c.str());
    Json rows = Json::array();
    for (std::size_t n = 0; n < z.size(); ++n) rows.push_back({{"n", n}, {"coefficient", z[n].str()}});
    return {{{"order", o.order}, {"coefficients", coeffs}, {"table", rows}}, "table", exit_code::ok};
}

Result run_solve(const Options& o) {
    ThetaPoint theta;
    std::optional<EigenParams> b;
    if (!o.kappa.empty()) {
        const KappaPoint k = need_kappa(o);
        if (walls_for(k, o.wall_mode, o.wall_tol).on_wall) throw NongenericParameters();
        theta = rh_params(k);
        b = kappa_to_eigen(k);
    } else if (!o.theta.empty()) {
        theta = theta_from_json(parse_list(o.theta));
        if (!o.b.empty()) b = eigen_from_json(parse_list(o.b));
    } else {
        throw CLI::ValidationError("--theta or --kappa", "one of them is required");
    }
    SolverConfig cfg = SolverConfig::defaults_for(o.N);
    if (o.seeds > 0) cfg.seeds = o.seeds;
    cfg.rng_seed = o.rng;
    cfg.batches = o.batches;
    cfg.newton_max_iter = o.max_iter;
    cfg.newton_tol = o.newton_tol;
    cfg.dedup_radius = o.dedup;
    cfg.surface_tol = o.surface_tol;
    cfg.saturation_batches = o.saturation;
    cfg.escape_radius = o.escape;
    cfg.seed_box = o.box;
    cfg.multiplicity_tol = o.mult_tol;
    cfg.threads = o.threads;
    const CountReport rep = solve_periodic(theta, o.N, cfg, b);
    return {to_json(rep), "points", rep.status == SolveStatus::Complete ? exit_code::ok : exit_code::failure};
}

Result run_verify(const Options& o) {
    try {
        return {to_json(verify_counts(o.nmax)), "rows", exit_code::ok};
    } catch (const CountMismatch& e) {
        throw Failure(e.what());
    }
}

// ---- command-line assembly -------------------------------------------------

void add_kappa(CLI::App* sub, Options& o) {
    sub->add_option("--kappa", o.kappa,
                    "kappa_1..kappa_4 (or kappa_0..kappa_4): JSON list or comma list; quoted p/q strings are exact");
}

void add_wall(CLI::App* sub, Options& o) {
    sub->add_option("--wall-mode", o.wall_mode, "exact, tolerant or auto")->capture_default_str();
    sub->add_option("--wall-tol", o.wall_tol, "tolerance of the tolerant wall test")->capture_default_str();
}

struct Command {
    CLI::App* app;
    std::function<Result(const Options&)> run;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Periodic points of the Coxeter map on the cubic surface", "pvi"};
    app.fallthrough();
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--output", o.output, "json, csv or pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    app.add_option("--rng", o.rng, "seed of the solver's random starts")->capture_default_str();
    app.add_option("--config", o.config, "key=value file applied before the flags");

    std::map<std::string, Command> commands;
    auto sub = [&](const std::string& name, const std::string& help, std::function<Result(const Options&)> fn) {
        CLI::App* s = app.add_subcommand(name, help);
        s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        commands[name] = {s, std::move(fn)};
        return s;
    };

    CLI::App* s = sub("params", "kappa -> traces a, eigenvalues b, cubic coefficients theta, wall report", run_params);
    add_kappa(s, o);
    add_wall(s, o);

    s = sub("disc", "discriminant of the cubic surface in b-coordinates", run_disc);
    add_kappa(s, o);
    s->add_option("--b", o.b, "b_1..b_4 as a list");

    s = sub("lattice", "sigma_i*, c*, charpoly, spectral radius, eigenvector checks", run_lattice);
    s->add_flag("--matrices", o.matrices, "print the four matrices");
    s->add_flag("--charpoly", o.charpoly, "characteristic polynomial of c*");
    s->add_flag("--spectral", o.spectral, "spectral radius of c*");
    s->add_flag("--eigen", o.eigen, "(-1)-eigenvector and orthogonality checks");
    s->add_option("--trace", o.trace, "trace of (c*)^N");

    s = sub("lines", "the 27 lines, their incidences and the sigma_i line swaps", run_lines);
    add_kappa(s, o);
    s->add_option("--b", o.b, "b_1..b_4 as a list");
    s->add_option("--tol", o.line_tol, "residual tolerance")->capture_default_str();

    s = sub("orbit", "iterate a word in sigma_i and g_i", run_orbit);
    add_kappa(s, o);
    s->add_option("--theta", o.theta, "theta_1..theta_4 as a list");
    s->add_option("--x", o.x, "starting point x_1..x_3 as a list");
    s->add_option("--word", o.word, "e.g. 's1 s2 s3' or 'g1^2 g2^-2'")->capture_default_str();
    s->add_option("--steps", o.steps, "number of iterations")->capture_default_str();
    s->add_option("--escape", o.escape, "escape radius")->capture_default_str();

    s = sub("count", "closed-form number of period-N points of c", run_count);
    s->add_option("--N", o.N, "period")->required()->check(CLI::PositiveNumber);
    s->add_option("--space", o.space, "affine or projective")
        ->check(CLI::IsMember({"affine", "projective"}))
        ->capture_default_str();

    s = sub("count-kappa", "closed-form number of period-N points of the monodromy action", run_count_kappa);
    s->add_option("--N", o.N, "period")->required()->check(CLI::PositiveNumber);

    s = sub("zeta", "Taylor coefficients of the dynamical zeta function", run_zeta);
    s->add_option("--order", o.order, "highest power of z")->capture_default_str()->check(CLI::PositiveNumber);

    s = sub("solve", "find the period-N points numerically", run_solve);
    add_kappa(s, o);
    add_wall(s, o);
    s->add_option("--theta", o.theta, "theta_1..theta_4 as a list");
    s->add_option("--b", o.b, "b-parameters matching theta, enables the genericity check");
    s->add_option("--N", o.N, "period")->required()->check(CLI::PositiveNumber);
    s->add_option("--seeds", o.seeds, "random starts (default 20000 for N <= 2, 200000 otherwise)");
    s->add_option("--batches", o.batches, "seed batches")->capture_default_str();
    s->add_option("--newton-tol", o.newton_tol, "convergence tolerance")->capture_default_str();
    s->add_option("--max-iter", o.max_iter, "Gauss-Newton iterations per seed")->capture_default_str();
    s->add_option("--dedup", o.dedup, "relative dedup radius")->capture_default_str();
    s->add_option("--surface-tol", o.surface_tol, "surface residual tolerance")->capture_default_str();
    s->add_option("--saturation", o.saturation, "quiet trailing batches required")->capture_default_str();
    s->add_option("--escape", o.escape, "escape radius")->capture_default_str();
    s->add_option("--box", o.box, "half-width of the seed box")->capture_default_str();
    s->add_option("--mult-tol", o.mult_tol, "multiplicity flag threshold")->capture_default_str();
    s->add_option("--threads", o.threads, "worker threads")->capture_default_str();

    s = sub("verify", "exact identities between the counts for N = 1..nmax", run_verify);
    s->add_option("--nmax", o.nmax, "largest N")->capture_default_str()->check(CLI::PositiveNumber);

    // config values go right after the subcommand so explicit flags win
    std::vector<std::string> argv = args;
    try {
        std::string config_path;
        for (std::size_t k = 0; k < argv.size(); ++k) {
            if (argv[k] == "--config" && k + 1 < argv.size()) config_path = argv[k + 1];
            if (argv[k].rfind("--config=", 0) == 0) config_path = argv[k].substr(9);
        }
        if (!config_path.empty()) {
            std::size_t at = 0;
            CLI::App* target = nullptr;
            for (std::size_t k = 0; k < argv.size(); ++k) {
                if (commands.count(argv[k])) {
                    at = k + 1;
                    target = commands[argv[k]].app;
                    break;
                }
            }
            std::vector<std::string> injected;
            for (const auto& [key, value] : read_config(config_path)) {
                const std::string flag = "--" + key;
                if (key == "config") continue;
                const bool known_here = app.get_option_no_throw(flag) || (target && target->get_option_no_throw(flag));
                bool known_elsewhere = false;
                for (const auto& [name, cmd] : commands) known_elsewhere |= cmd.app->get_option_no_throw(flag) != nullptr;
                if (known_here) {
                    injected.push_back(flag + "=" + value);
                } else if (!known_elsewhere) {
                    err << "error: unknown config key '" << key << "'\n";
                    return exit_code::usage;
                }
            }
            argv.insert(argv.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
        }
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_code::ok;
        }
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    const OutputFormat fmt = parse_output_format(o.output);
    for (const auto& [name, cmd] : commands) {
        if (!cmd.app->parsed()) continue;
        try {
            const Result r = cmd.run(o);
            out << render(r.doc, fmt, r.table_key);
            return r.code;
        } catch (const CLI::ValidationError& e) {
            err << "error: " << e.what() << "\n";
            return exit_code::usage;
        } catch (const Failure& e) {
            err << "error: " << e.what() << "\n";
            return exit_code::failure;
        } catch (const NongenericParameters& e) {
            err << "error: " << e.what() << "\n";
            return exit_code::failure;
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << "\n";
            return exit_code::usage;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return exit_code::failure;
        }
    }
    err << "error: no subcommand\n";
    return exit_code::usage;
}

}  // namespace pvi
