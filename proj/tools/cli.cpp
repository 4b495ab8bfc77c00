#include "pointlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "pointlab/channels.hpp"
#include "pointlab/kernels.hpp"
#include "pointlab/pointcore.hpp"
#include "pointlab/qmemory.hpp"
#include "pointlab/verify.hpp"

namespace pointlab::cli {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- output

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    ordered_json meta = ordered_json::object();

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
        rows.push_back(std::move(row));
    }
};

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) os << format_double(v);
                    else if constexpr (std::is_same_v<T, long long>) os << v;
                    else os << csv_escape(v);
                },
                row[i]);
        }
        os << "\n";
    }
}

void write_json(const Table& t, std::ostream& os) {
    ordered_json doc;
    doc["command"] = t.command;
    doc["meta"] = t.meta;
    doc["rows"] = ordered_json::array();
    for (const auto& row : t.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        obj[t.columns[i]] = std::isfinite(v) ? ordered_json(v == 0.0 ? 0.0 : v) : ordered_json(nullptr);
                    } else {
                        obj[t.columns[i]] = v;
                    }
                },
                row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------- config

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw ConfigError(std::string("'") + what + "' must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(std::string("'") + what + "' must be finite");
    return v;
}

double number_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? number(j.at(key), key) : fallback;
}

cplx complex_value(const json& j, const char* what) {
    if (j.is_number()) return {number(j, what), 0.0};
    if (j.is_array() && j.size() == 2) return {number(j[0], what), number(j[1], what)};
    throw ConfigError(std::string("'") + what + "' must be a number or [re, im]");
}

Couplings parse_couplings(const json& j) {
    Couplings g;
    if (j.is_array() && j.size() == 3) {
        g = {number(j[0], "g1"), number(j[1], "g2"), number(j[2], "g3")};
    } else if (j.is_object()) {
        g = {number_or(j, "g1", 0.0), number_or(j, "g2", 0.0), number_or(j, "g3", 0.0)};
    } else {
        throw ConfigError("'couplings' must be [g1, g2, g3] or {\"g1\":..,\"g2\":..,\"g3\":..}");
    }
    return g;
}

std::vector<double> parse_grid(const json& j) {
    std::vector<double> v;
    if (j.is_array()) {
        for (const auto& x : j) v.push_back(number(x, "grid value"));
    } else if (j.is_object() && j.contains("values")) {
        for (const auto& x : field(j, "values")) v.push_back(number(x, "grid value"));
    } else if (j.is_object()) {
        const double lo = number(field(j, "start"), "start");
        const double hi = number(field(j, "stop"), "stop");
        const json& cnt = field(j, "count");
        if (!cnt.is_number_integer() || cnt.get<long long>() < 1) throw ConfigError("'count' must be a positive integer");
        const auto n = static_cast<std::size_t>(cnt.get<long long>());
        const std::string spacing = j.value("spacing", "linear");
        if (spacing == "linear") v = verify::linspace(lo, hi, n);
        else if (spacing == "log") {
            if (!(lo > 0.0 && hi > 0.0)) throw ConfigError("log spacing needs positive bounds");
            v = verify::logspace(lo, hi, n);
        } else throw ConfigError("'spacing' must be linear or log");
    } else {
        throw ConfigError("'grid' must be a list, {values: [...]}, or {start, stop, count}");
    }
    if (v.empty()) throw ConfigError("grid is empty");
    for (double x : v) {
        if (!(x > 0.0)) throw ConfigError("grid values must be > 0");
    }
    return v;
}

Eigen::MatrixXcd parse_matrix(const json& j, const char* what) {
    if (j.is_number()) return Eigen::MatrixXcd::Constant(1, 1, complex_value(j, what));
    if (!j.is_array() || j.empty()) throw ConfigError(std::string("'") + what + "' must be a number or a square matrix");
    const auto n = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ConfigError(std::string("'") + what + "' must be square");
        }
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_value(row[static_cast<std::size_t>(c)], what);
    }
    return m;
}

channels::SiteArray parse_sites(const json& cfg) {
    const json& sites = field(cfg, "sites");
    if (!sites.is_array()) throw ConfigError("'sites' must be a list");
    if (sites.empty()) {
        const json& n = cfg.contains("channels") ? cfg.at("channels") : json(1);
        if (!n.is_number_integer() || n.get<long long>() < 1) throw ConfigError("'channels' must be a positive integer");
        return channels::SiteArray(static_cast<Eigen::Index>(n.get<long long>()));
    }
    std::vector<channels::Site> out;
    for (const json& s : sites) {
        channels::Site site;
        site.position = number(field(s, "position"), "position");
        if (s.contains("couplings")) {
            site.couplings = channels::MatrixCouplings::scalar(parse_couplings(s.at("couplings")));
        } else {
            site.couplings.c1 = parse_matrix(field(s, "c1"), "c1");
            const auto n = site.couplings.c1.rows();
            site.couplings.c2 = s.contains("c2") ? parse_matrix(s.at("c2"), "c2") : Eigen::MatrixXcd::Zero(n, n);
            site.couplings.c3 = s.contains("c3") ? parse_matrix(s.at("c3"), "c3") : Eigen::MatrixXcd::Zero(n, n);
        }
        out.push_back(std::move(site));
    }
    try {
        return channels::SiteArray(std::move(out));
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

qmemory::MemoryState parse_state(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(std::string("'") + what + "' must be [a1, a2]");
    try {
        return qmemory::MemoryState(complex_value(j[0], what), complex_value(j[1], what));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("'") + what + "': " + e.what());
    }
}

json load_config(const std::string& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    const json& schema = field(cfg, "schema");
    if (!schema.is_number_integer() || schema.get<long long>() != 1) throw ConfigError("unsupported schema (expected 1)");
    if (cfg.contains("command") && cfg.at("command") != command) {
        throw ConfigError("config targets '" + cfg.at("command").get<std::string>() + "', not '" + command + "'");
    }
    return cfg;
}

// ---------------------------------------------------------------- commands

std::string plan_text(const qmemory::Plan& plan) {
    std::string s;
    for (const auto& op : plan) {
        if (!s.empty()) s += ";";
        s += (op.parity == qmemory::Parity::Odd ? "odd@" : "even@") + format_double(op.k.value());
    }
    return s;
}

Table cmd_resolvent(const json& cfg) {
    const Couplings g = parse_couplings(field(cfg, "couplings"));
    const std::vector<double> grid = parse_grid(field(cfg, "grid"));
    const double tol = number_or(cfg, "pole_tolerance", kDefaultPoleTolerance);
    const std::size_t n = grid.size();
    std::vector<double> f1(n), f2(n), f3(n);
    std::vector<std::uint8_t> pole(n);
    kernels::resolvent_grid(g, grid, tol, {f1, f2, f3, pole});

    Table t{"resolvent", {"kappa", "f1", "f2", "f3", "f4", "pole", "denominator"}, {}};
    t.meta["couplings"] = {g.g1, g.g2, g.g3};
    t.meta["pole_tolerance"] = tol;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = grid[i];
        const double d = g.g3 * k - 0.5 * (4.0 - g.g1 * g.g3 + g.g2 * g.g2) - g.g1 / k;
        t.add({k, f1[i], f2[i], f3[i], f2[i], static_cast<long long>(pole[i]), d});
    }
    return t;
}

Table cmd_smatrix(const json& cfg) {
    const Couplings g = parse_couplings(field(cfg, "couplings"));
    const std::vector<double> grid = parse_grid(field(cfg, "grid"));
    const std::size_t n = grid.size();
    std::vector<double> dre(n), dim(n), lre(n), lim(n), rre(n), rim(n);
    kernels::smatrix_grid(g, grid, {dre, dim, lre, lim, rre, rim});
    std::vector<double> ere(n), eim(n), ore(n), oim(n);
    kernels::parity_phase_grid(g.g1, g.g3, grid, {ere, eim, ore, oim});

    Table t{"smatrix",
            {"k", "s_pp_re", "s_pp_im", "s_pm_re", "s_pm_im", "s_mp_re", "s_mp_im", "s_mm_re", "s_mm_im", "det_abs",
             "unitarity_residual", "even_phase_arg", "odd_phase_arg"},
            {}};
    t.meta["couplings"] = {g.g1, g.g2, g.g3};
    t.meta["basis"] = "[in][out], (+, -)";
    for (std::size_t i = 0; i < n; ++i) {
        SMatrix2 s;
        s << cplx(dre[i], dim[i]), cplx(lre[i], lim[i]), cplx(rre[i], rim[i]), cplx(dre[i], dim[i]);
        t.add({grid[i], dre[i], dim[i], lre[i], lim[i], rre[i], rim[i], dre[i], dim[i], std::abs(s.determinant()),
               unitarity_residual(s), std::arg(cplx(ere[i], eim[i])), std::arg(cplx(ore[i], oim[i]))});
    }
    return t;
}

Table cmd_scatter(const json& cfg) {
    const channels::SiteArray sites = parse_sites(cfg);
    const std::vector<double> grid = parse_grid(field(cfg, "grid"));
    const auto n = sites.channels();

    const json& inc = field(cfg, "incident");
    static const std::map<std::string, channels::IncidentMode> modes{
        {"from-left", channels::IncidentMode::FromLeft}, {"from-right", channels::IncidentMode::FromRight},
        {"even", channels::IncidentMode::Even}, {"odd", channels::IncidentMode::Odd}};
    const std::string mode_name = inc.value("mode", "from-left");
    if (!modes.count(mode_name)) throw ConfigError("incident mode must be from-left, from-right, even or odd");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Unit(n, 0);
    if (inc.contains("amplitudes")) {
        const json& a = inc.at("amplitudes");
        if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != n) {
            throw ConfigError("incident amplitudes need one entry per channel");
        }
        for (Eigen::Index i = 0; i < n; ++i) amps(i) = complex_value(a[static_cast<std::size_t>(i)], "amplitudes");
        if (std::fabs(amps.norm() - 1.0) > 1e-12) throw ConfigError("incident amplitudes must have unit norm");
    }

    std::vector<std::string> cols{"k", "singular", "condition"};
    for (Eigen::Index j = 1; j <= n; ++j) {
        const std::string c = std::to_string(j);
        for (const char* name : {"reflection_", "transmission_"}) cols.push_back(name + c);
        for (const char* name : {"f_plus_re_", "f_plus_im_", "f_minus_re_", "f_minus_im_"}) cols.push_back(name + c);
    }
    for (const char* name : {"flux_in", "flux_out", "flux_residual"}) cols.emplace_back(name);

    Table t{"scatter", cols, {}};
    t.meta["channels"] = n;
    t.meta["sites"] = sites.size();
    t.meta["mode"] = mode_name;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double k : grid) {
        std::vector<Cell> row{k};
        try {
            const auto sol = channels::solve_scattering(sites, {SpectralPoint::scattering(k), modes.at(mode_name), amps});
            row.push_back(0LL);
            row.push_back(sol.condition);
            for (Eigen::Index j = 0; j < n; ++j) {
                row.push_back(sol.reflection(j));
                row.push_back(sol.transmission(j));
                row.push_back(sol.scattered_plus(j).real());
                row.push_back(sol.scattered_plus(j).imag());
                row.push_back(sol.scattered_minus(j).real());
                row.push_back(sol.scattered_minus(j).imag());
            }
            row.push_back(sol.incoming_flux);
            row.push_back(sol.outgoing_flux);
            row.push_back(sol.flux_residual());
        } catch (const SingularSystem& e) {
            row.push_back(1LL);
            row.push_back(e.condition());
            while (row.size() < cols.size()) row.push_back(nan);
        }
        t.add(std::move(row));
    }
    return t;
}

Table cmd_memory(const json& cfg, std::uint64_t seed) {
    const Couplings g = parse_couplings(field(cfg, "couplings"));
    if (g.g1 == 0.0 || g.g3 == 0.0) throw ConfigError("memory commands need g1 != 0 and g3 != 0");
    const qmemory::MemoryState s =
        cfg.contains("standard") ? parse_state(cfg.at("standard"), "standard") : qmemory::MemoryState::standard();
    qmemory::MemoryState current = cfg.contains("initial") ? parse_state(cfg.at("initial"), "initial") : s;

    qmemory::ReadoutOptions readout;
    if (cfg.contains("readout")) {
        const json& r = cfg.at("readout");
        readout.noise_sigma = number_or(r, "noise_sigma", 0.0);
        if (readout.noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
        const double samples = number_or(r, "samples", 1024.0);
        if (samples < 3.0 || samples != std::floor(samples)) throw ConfigError("samples must be an integer >= 3");
        readout.samples = static_cast<std::size_t>(samples);
    }

    // Validate the whole script before running anything.
    const json& script = cfg.contains("script") ? cfg.at("script") : json::array();
    if (!script.is_array()) throw ConfigError("'script' must be a list");
    for (const json& step : script) {
        const std::string op = field(step, "op").get<std::string>();
        if (op == "write") parse_state(field(step, "target"), "target");
        else if (op == "scatter") {
            const std::string parity = field(step, "parity").get<std::string>();
            if (parity != "odd" && parity != "even") throw ConfigError("scatter parity must be odd or even");
            if (!(number(field(step, "k"), "k") > 0.0)) throw ConfigError("scatter k must be > 0");
        } else if (op == "admissibility") {
            const cplx alpha = complex_value(field(step, "alpha"), "alpha");
            const cplx beta = complex_value(field(step, "beta"), "beta");
            if (std::fabs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
                throw ConfigError("admissibility weights need |alpha|^2 + |beta|^2 = 1");
            }
            if (!(number(field(step, "k"), "k") > 0.0)) throw ConfigError("admissibility k must be > 0");
        } else if (op != "read" && op != "reset") {
            throw ConfigError("unknown script op '" + op + "'");
        }
    }

    Table t{"memory",
            {"step", "op", "action", "label", "value", "plan", "a1_re", "a1_im", "a2_re", "a2_im", "error"},
            {}};
    t.meta["couplings"] = {g.g1, g.g2, g.g3};
    t.meta["seed"] = seed;
    t.meta["noise_sigma"] = readout.noise_sigma;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto state_cells = [](const qmemory::MemoryState& m) {
        return std::vector<Cell>{m.a1().real(), m.a1().imag(), m.a2().real(), m.a2().imag()};
    };
    auto emit = [&](long long step, const std::string& op, const std::string& action, const std::string& label,
                    double value, const std::string& plan, const qmemory::MemoryState& m, double error) {
        std::vector<Cell> row{step, op, action, label, value, plan};
        for (auto& c : state_cells(m)) row.push_back(c);
        row.push_back(error);
        t.add(std::move(row));
    };

    long long index = 0;
    for (const json& step : script) {
        const std::string op = step.at("op").get<std::string>();
        if (op == "write" || op == "reset") {
            const qmemory::MemoryState target = op == "write" ? parse_state(step.at("target"), "target") : s;
            const qmemory::Plan plan = qmemory::write(current, target, g.g1, g.g3);
            current = qmemory::apply_plan(current, plan, g.g1, g.g3);
            emit(index, op, "apply", "plan", static_cast<double>(plan.size()), plan_text(plan), current,
                 qmemory::distance_up_to_phase(target, current));
        } else if (op == "scatter") {
            const qmemory::ScatterOp sop{step.at("parity") == "odd" ? qmemory::Parity::Odd : qmemory::Parity::Even,
                                         SpectralPoint::scattering(step.at("k").get<double>())};
            current = qmemory::apply_scatter(current, sop, g.g1, g.g3);
            emit(index, op, "apply", "op", 1.0, plan_text({sop}), current, 0.0);
        } else if (op == "read") {
            qmemory::ReadoutOptions opts = readout;
            opts.seed = seed + static_cast<std::uint64_t>(index);
            const qmemory::MemoryState before = current;
            const auto result = qmemory::read_protocol(current, s, g.g1, g.g3, opts);
            for (const auto& ev : result.log) {
                emit(index, op, ev.action, ev.label, ev.action == "measure" ? ev.value : nan, plan_text(ev.ops),
                     ev.action == "reconstruct" ? result.recovered : before,
                     ev.action == "reconstruct" ? result.recovery_error : nan);
            }
            current = result.final_state;
            emit(index, op, "final", "restoration", nan, "", current, result.restoration_error);
        } else {
            const cplx alpha = complex_value(step.at("alpha"), "alpha");
            const cplx beta = complex_value(step.at("beta"), "beta");
            std::vector<qmemory::MemoryState> states{current, qmemory::MemoryState(1.0, 0.0),
                                                     qmemory::MemoryState(0.0, 1.0)};
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(index));
            std::normal_distribution<double> normal;
            for (int i = 0; i < 64; ++i) {
                states.push_back(qmemory::MemoryState::normalized({normal(rng), normal(rng)}, {normal(rng), normal(rng)}));
            }
            const auto report = qmemory::admissibility_check(alpha, beta, SpectralPoint::scattering(step.at("k").get<double>()),
                                                             g.g1, g.g3, states);
            emit(index, op, report.admissible ? "admissible" : "not-admissible", "purity", report.purity, "", current,
                 std::fabs((report.density * report.density).trace().real() - report.purity));
        }
        ++index;
    }
    return t;
}

struct VerifyOutcome {
    Table table;
    bool all_pass;
};

VerifyOutcome cmd_verify(const json& cfg, std::uint64_t seed) {
    std::vector<std::string> suites{"default"};
    verify::SuiteOptions opts;
    opts.seed = seed;
    if (cfg.contains("suites")) {
        const json& s = cfg.at("suites");
        if (!s.is_array()) throw ConfigError("'suites' must be a list");
        suites.clear();
        for (const json& name : s) {
            if (!name.is_string()) throw ConfigError("suite names must be strings");
            suites.push_back(name.get<std::string>());
        }
        if (suites.empty()) throw ConfigError("suite selection is empty");
    }
    if (cfg.contains("random_couplings")) {
        const json& r = cfg.at("random_couplings");
        if (!r.is_number_integer() || r.get<long long>() < 0) throw ConfigError("random_couplings must be >= 0");
        opts.random_couplings = static_cast<std::size_t>(r.get<long long>());
    }
    for (const auto& name : suites) {
        if (name != "default" && name != "corrupted") throw ConfigError("unknown suite '" + name + "'");
    }

    Table t{"verify", {"suite", "check", "max_residual", "tolerance", "pass", "grid"}, {}};
    t.meta["seed"] = seed;
    bool all = true;
    for (const auto& name : suites) {
        const auto reports = name == "default" ? verify::default_suite(opts) : verify::corrupted_provider_self_test();
        for (const auto& r : reports) {
            all = all && r.pass;
            t.add({name, r.name, r.max_residual, r.tolerance, static_cast<long long>(r.pass), r.grid});
        }
    }
    t.meta["all_pass"] = all;
    return {std::move(t), all};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Point-interaction scattering and quantum-memory toolkit"};
    app.require_subcommand(1);

    struct Flags {
        std::string config;
        std::string format = "json";
        std::uint64_t seed = 0;
        std::string out;
    };
    std::map<std::string, Flags> flags;
    const std::pair<const char*, const char*> commands[] = {
        {"resolvent", "resolvent quadruple over a kappa grid"},
        {"smatrix", "2x2 S-matrix, unitarity and parity phases over a k grid"},
        {"scatter", "multi-site n-channel scattering solve"},
        {"memory", "run a two-channel memory script"},
        {"verify", "run the oracle suites; exit 1 on any failure"},
    };
    for (const auto& [name, about] : commands) {
        Flags& f = flags[name];
        CLI::App* sub = app.add_subcommand(name, about);
        auto* cfg = sub->add_option("--config", f.config, "JSON config (schema 1)");
        if (std::string(name) != "verify") cfg->required();
        sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", f.seed, "seed for randomized steps");
        sub->add_option("--out", f.out, "write output here instead of stdout");
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const Flags& f = flags.at(command);
    int code = kOk;
    Table table;
    try {
        json cfg = json::object();
        if (!f.config.empty()) cfg = load_config(f.config, command);
        if (command == "resolvent") table = cmd_resolvent(cfg);
        else if (command == "smatrix") table = cmd_smatrix(cfg);
        else if (command == "scatter") table = cmd_scatter(cfg);
        else if (command == "memory") table = cmd_memory(cfg, f.seed);
        else {
            VerifyOutcome v = cmd_verify(cfg, f.seed);
            table = std::move(v.table);
            if (!v.all_pass) code = kVerifyFailed;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomainError;
    }

    std::ostringstream buffer;
    if (f.format == "csv") write_csv(table, buffer);
    else write_json(table, buffer);
    if (f.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(f.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << f.out << "'\n";
            return kConfigError;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace pointlab::cli
