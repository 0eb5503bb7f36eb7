// schoenberg-lab: experiment CLI over the spline operator library.
// Subcommands emit deterministic CSV (RFC-4180 body with a `#` metadata
// preamble, CRLF line endings) or JSON (single object, fixed key order).
// Exit codes: 0 success / all verdicts pass, 1 numerical failure, 2 usage.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schoenberg/schoenberg.hpp"

using json = nlohmann::ordered_json;
using namespace schoenberg;

namespace {

constexpr const char* kCrlf = "\r\n";

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

int parse_int(const std::string& s, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("invalid integer for ") + what + ": " + s);
    return value;
}

// "a..b" or a bare "a" (treated as the range a..a)
std::pair<int, int> parse_range(const std::string& s, const char* what) {
    const auto pos = s.find("..");
    if (pos == std::string::npos) {
        const int v = parse_int(s, what);
        return {v, v};
    }
    const int lo = parse_int(s.substr(0, pos), what);
    const int hi = parse_int(s.substr(pos + 2), what);
    if (hi < lo) throw std::invalid_argument(std::string("empty range for ") + what + ": " + s);
    return {lo, hi};
}

std::vector<double> parse_interior(const std::string& s) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string tok =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t used = 0;
        try {
            values.push_back(std::stod(tok, &used));
        } catch (...) {
            throw std::invalid_argument("invalid --interior value: " + tok);
        }
        if (used != tok.size()) throw std::invalid_argument("invalid --interior value: " + tok);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

struct FamilySpec {
    std::string name;  // uniform | bernstein | geometric | random
    double q = 0.5;
    std::string canonical;
};

FamilySpec parse_family(const std::string& s) {
    FamilySpec fam;
    const auto colon = s.find(':');
    fam.name = s.substr(0, colon);
    if (fam.name == "geometric" && colon != std::string::npos) {
        try {
            fam.q = std::stod(s.substr(colon + 1));
        } catch (...) {
            throw std::invalid_argument("invalid geometric ratio in --family " + s);
        }
    } else if (colon != std::string::npos) {
        throw std::invalid_argument("unexpected parameter in --family " + s);
    }
    if (fam.name != "uniform" && fam.name != "bernstein" && fam.name != "geometric" &&
        fam.name != "random")
        throw std::invalid_argument("unknown knot family: " + fam.name);
    fam.canonical = fam.name == "geometric" ? fam.name + ":" + fmt17(fam.q) : fam.name;
    return fam;
}

struct Options {
    std::string n_spec;
    std::string interior;
    std::string family;
    std::string k_spec;
    std::vector<std::string> functions;
    int r = 2;
    std::optional<double> t;
    std::size_t grid = default_grid_points;
    int h_steps = default_h_steps;
    int x_steps = default_x_steps;
    std::string m_spec = "1..30";
    double tol_one = default_tol_one;
    unsigned long long seed = 12345;
    std::string format = "csv";
    std::string out_path;
};

using Echo = std::vector<std::pair<std::string, std::string>>;

struct ResolvedKnots {
    KnotVector kv;
    Echo echo;
};

int single_value(const std::string& spec, const char* what) {
    const auto [lo, hi] = parse_range(spec, what);
    if (lo != hi)
        throw std::invalid_argument(std::string(what) +
                                    " must be a single value here (ranges are for sweep)");
    return lo;
}

ResolvedKnots resolve_knots(const Options& opt) {
    if (opt.k_spec.empty()) throw std::invalid_argument("--k is required");
    const int k = single_value(opt.k_spec, "--k");
    if (!opt.interior.empty()) {
        if (!opt.n_spec.empty() || !opt.family.empty())
            throw std::invalid_argument("choose exactly one of --n, --interior, --family");
        return {make_knot_vector(parse_interior(opt.interior), k),
                {{"interior", opt.interior}, {"k", std::to_string(k)}}};
    }
    if (!opt.family.empty()) {
        const FamilySpec fam = parse_family(opt.family);
        if (fam.name == "bernstein") {
            if (!opt.n_spec.empty() && single_value(opt.n_spec, "--n") != 1)
                throw std::invalid_argument("--family bernstein fixes n = 1");
            return {uniform_knot_vector(1, k),
                    {{"family", fam.canonical}, {"n", "1"}, {"k", std::to_string(k)}}};
        }
        if (opt.n_spec.empty())
            throw std::invalid_argument("--family " + fam.name + " requires --n");
        const int n = single_value(opt.n_spec, "--n");
        KnotVector kv = fam.name == "uniform"     ? uniform_knot_vector(n, k)
                        : fam.name == "geometric" ? geometric_knot_vector(n, k, fam.q)
                                                  : random_knot_vector(n, k, opt.seed);
        Echo echo = {{"family", fam.canonical}, {"n", std::to_string(n)}, {"k", std::to_string(k)}};
        if (fam.name == "random") echo.emplace_back("seed", std::to_string(opt.seed));
        return {std::move(kv), std::move(echo)};
    }
    if (opt.n_spec.empty())
        throw std::invalid_argument("knot spec required: one of --n, --interior, --family");
    const int n = single_value(opt.n_spec, "--n");
    return {uniform_knot_vector(n, k),
            {{"family", "uniform"}, {"n", std::to_string(n)}, {"k", std::to_string(k)}}};
}

// Accumulates one run's output and renders it as CSV or JSON.
class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    void echo(const Echo& pairs) {
        for (const auto& p : pairs) config_.push_back(p);
    }
    void echo(const std::string& key, const std::string& value) { config_.emplace_back(key, value); }
    void grid_sizes(Echo pairs) { grids_ = std::move(pairs); }
    void columns(std::vector<std::string> names) { columns_ = std::move(names); }
    void row(std::vector<std::string> csv_cells, json json_row) {
        csv_rows_.push_back(std::move(csv_cells));
        json_rows_.push_back(std::move(json_row));
    }
    void footer(const std::string& key, const std::string& csv_value, json json_value) {
        footer_csv_.emplace_back(key, csv_value);
        footer_json_[key] = std::move(json_value);
    }
    void payload(json extra) { payload_ = std::move(extra); }

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json") write_json(os);
        else write_csv(os);
    }

private:
    void write_csv(std::ostream& os) const {
        os << "# schoenberg-lab " << command_ << kCrlf;
        os << "# version: " << library_version << kCrlf;
        os << "# config:";
        for (const auto& [k, v] : config_) os << ' ' << k << '=' << csv_field(v);
        os << kCrlf;
        if (!grids_.empty()) {
            os << "# grid:";
            for (const auto& [k, v] : grids_) os << ' ' << k << '=' << v;
            os << kCrlf;
        }
        if (!columns_.empty()) {
            for (std::size_t i = 0; i < columns_.size(); ++i)
                os << (i ? "," : "") << csv_field(columns_[i]);
            os << kCrlf;
            for (const auto& cells : csv_rows_) {
                for (std::size_t i = 0; i < cells.size(); ++i)
                    os << (i ? "," : "") << csv_field(cells[i]);
                os << kCrlf;
            }
        }
        for (const auto& [k, v] : footer_csv_) os << "# " << k << ": " << v << kCrlf;
    }

    void write_json(std::ostream& os) const {
        json root;
        root["tool"] = "schoenberg-lab";
        root["command"] = command_;
        root["version"] = library_version;
        root["config"] = json::object();
        for (const auto& [k, v] : config_) root["config"][k] = v;
        if (!grids_.empty()) {
            root["grid"] = json::object();
            for (const auto& [k, v] : grids_) root["grid"][k] = v;
        }
        if (!columns_.empty()) {
            root["columns"] = columns_;
            root["rows"] = json_rows_;
        }
        for (auto it = footer_json_.begin(); it != footer_json_.end(); ++it)
            root[it.key()] = it.value();
        if (!payload_.is_null())
            for (auto it = payload_.begin(); it != payload_.end(); ++it) root[it.key()] = it.value();
        os << root.dump(2) << '\n';
    }

    std::string command_;
    Echo config_;
    Echo grids_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> csv_rows_;
    std::vector<json> json_rows_;
    Echo footer_csv_;
    json footer_json_ = json::object();
    json payload_;
};

void emit(const Report& report, const Options& opt) {
    if (opt.out_path.empty() || opt.out_path == "-") {
        report.write(std::cout, opt.format);
        return;
    }
    std::ofstream os(opt.out_path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file: " + opt.out_path);
    report.write(os, opt.format);
}

const std::string& require_one_function(const Options& opt) {
    if (opt.functions.size() != 1)
        throw std::invalid_argument("exactly one --f is required for this subcommand");
    return opt.functions.front();
}

// every referenced function must exist in the registry, used or not
void validate_function_names(const Options& opt) {
    const auto& names = registry_names();
    for (const auto& f : opt.functions)
        if (std::find(names.begin(), names.end(), f) == names.end())
            throw std::invalid_argument("unknown function \"" + f + "\" (see --help for the registry)");
}

RealFunction resolve_function(const std::string& name, const KnotVector* kv) {
    return make_function(FunctionSpec{name, {}}, kv);
}

// ---------------------------------------------------------------------------

int cmd_basis(const Options& opt) {
    const ResolvedKnots rk = resolve_knots(opt);
    const KnotVector& kv = rk.kv;
    const int k = kv.degree();
    const int dim = kv.dimension();

    Report report("basis");
    report.echo(rk.echo);
    report.grid_sizes({{"grid", std::to_string(opt.grid)}});

    std::vector<std::string> cols = {"x"};
    for (int j = -k; j <= kv.intervals() - 1; ++j) cols.push_back("N_" + std::to_string(j));
    cols.push_back("residual");
    report.columns(std::move(cols));

    for (double x : uniform_grid(opt.grid)) {
        const int span = find_span(kv, x);
        const auto vals = nonzero_basis(kv, span, x);
        std::vector<double> all(static_cast<std::size_t>(dim), 0.0);
        double sum = 0.0;
        for (int r = 0; r <= k; ++r) {
            all[static_cast<std::size_t>(span - k + r)] = vals[static_cast<std::size_t>(r)];
            sum += vals[static_cast<std::size_t>(r)];
        }
        std::vector<std::string> cells = {fmt17(x)};
        json jrow = json::array({x});
        for (double v : all) {
            cells.push_back(fmt17(v));
            jrow.push_back(v);
        }
        cells.push_back(fmt17(sum - 1.0));
        jrow.push_back(sum - 1.0);
        report.row(std::move(cells), std::move(jrow));
    }
    emit(report, opt);
    return 0;
}

int cmd_spectrum(const Options& opt) {
    const ResolvedKnots rk = resolve_knots(opt);
    const KnotVector& kv = rk.kv;

    const SpectrumResult spec = spectrum(kv, opt.tol_one);
    const CollocationMatrix N = collocation_matrix(kv);
    const GershgorinDiscs discs = gershgorin_discs(N);
    bool contained = true;
    for (const auto& lam : spec.eigenvalues)
        if (disc_distance(discs, lam) > 1e-9) contained = false;
    const FixedVectorReport fixed = verify_fixed_vectors(N, greville_nodes(kv));

    Report report("spectrum");
    report.echo(rk.echo);
    report.echo("tol-one", fmt17(opt.tol_one));

    report.columns({"index", "re", "im", "modulus"});
    int index = 0;
    for (const auto& lam : spec.eigenvalues) {
        report.row(
            {std::to_string(index), fmt17(lam.real()), fmt17(lam.imag()), fmt17(std::abs(lam))},
            json{{"index", index},
                 {"re", lam.real()},
                 {"im", lam.imag()},
                 {"modulus", std::abs(lam)}});
        ++index;
    }
    const std::string gersh = contained ? "pass" : "fail";
    const std::string projector_note =
        "projector case (k = 1): iterate-decay hypotheses do not apply";
    report.footer("gamma", fmt17(spec.gamma), spec.gamma);
    report.footer("one_multiplicity", std::to_string(spec.one_multiplicity), spec.one_multiplicity);
    report.footer("gamma_attained_re", fmt17(spec.gamma_attained_by.real()),
                  spec.gamma_attained_by.real());
    report.footer("gamma_attained_im", fmt17(spec.gamma_attained_by.imag()),
                  spec.gamma_attained_by.imag());
    report.footer("gershgorin", gersh, gersh);
    report.footer("fixed_vector_residual_one", fmt17(fixed.one_residual), fixed.one_residual);
    report.footer("fixed_vector_residual_greville", fmt17(fixed.greville_residual),
                  fixed.greville_residual);
    report.footer("projector", spec.projector_case ? "true" : "false", spec.projector_case);
    if (spec.projector_case) report.footer("projector_note", projector_note, projector_note);
    report.footer("gap_ambiguous", spec.gap_ambiguous ? "true" : "false", spec.gap_ambiguous);
    emit(report, opt);
    return contained && fixed.pass ? 0 : 1;
}

int cmd_iterates(const Options& opt) {
    const ResolvedKnots rk = resolve_knots(opt);
    const KnotVector& kv = rk.kv;
    const std::string fname = require_one_function(opt);
    const RealFunction f = resolve_function(fname, &kv);
    const auto [m_min, m_max] = parse_range(opt.m_spec, "--m");
    if (m_min < 1) throw std::invalid_argument("--m must start at 1 or above");

    Report report("iterates");
    report.echo(rk.echo);
    report.echo("f", fname);
    report.echo("m", std::to_string(m_min) + ".." + std::to_string(m_max));
    report.grid_sizes({{"grid", std::to_string(opt.grid)}});

    report.columns({"m", "distance", "log10_distance"});
    for (int m = m_min; m <= m_max; ++m) {
        const double d = iterate_distance(kv, f, m, opt.grid);
        const double ld = std::log10(d);
        report.row({std::to_string(m), fmt17(d), fmt17(ld)},
                   json{{"m", m}, {"distance", d}, {"log10_distance", ld}});
    }

    const double gamma = spectrum(kv, opt.tol_one).gamma;
    report.footer("gamma", fmt17(gamma), gamma);
    try {
        const DecayFit fit = decay_rate_estimate(kv, f, m_min, m_max, opt.grid);
        report.footer("rho", fmt17(fit.rho), fit.rho);
        report.footer("r_squared", fmt17(fit.r_squared), fit.r_squared);
        report.footer("fit_points", std::to_string(fit.points_used), fit.points_used);
        if (gamma > 0.0) report.footer("rho_over_gamma", fmt17(fit.rho / gamma), fit.rho / gamma);
    } catch (const std::exception& e) {
        report.footer("rho", "", nullptr);
        report.footer("fit_note", e.what(), std::string(e.what()));
    }
    emit(report, opt);
    return 0;
}

int cmd_modulus(const Options& opt) {
    if (opt.functions.empty()) throw std::invalid_argument("at least one --f is required");
    if (!opt.t.has_value()) throw std::invalid_argument("--t is required for modulus");

    // a knot vector is only needed for the per-knot-vector registry entry
    std::optional<ResolvedKnots> rk;
    if (!opt.n_spec.empty() || !opt.interior.empty() || !opt.family.empty()) rk = resolve_knots(opt);

    Report report("modulus");
    if (rk) report.echo(rk->echo);
    report.echo("r", std::to_string(opt.r));
    report.echo("t", fmt17(*opt.t));
    report.grid_sizes(
        {{"h-steps", std::to_string(opt.h_steps)}, {"x-steps", std::to_string(opt.x_steps)}});

    report.columns({"f", "r", "t", "h_steps", "x_steps", "omega"});
    for (const auto& name : opt.functions) {
        const RealFunction f = resolve_function(name, rk ? &rk->kv : nullptr);
        const ModulusEstimate est = modulus(f, opt.r, *opt.t, opt.h_steps, opt.x_steps);
        report.row({name, std::to_string(est.r), fmt17(est.t), std::to_string(est.h_grid_size),
                    std::to_string(est.x_grid_size), fmt17(est.value)},
                   json{{"f", name},
                        {"r", est.r},
                        {"t", est.t},
                        {"h_steps", est.h_grid_size},
                        {"x_steps", est.x_grid_size},
                        {"omega", est.value}});
    }
    emit(report, opt);
    return 0;
}

json verdict_json(const InequalityVerdict& v) {
    return json{{"status", v.status},
                {"lhs", v.lhs},
                {"rhs", v.rhs},
                {"margin", v.margin},
                {"refined", v.refined}};
}

int cmd_bounds(const Options& opt) {
    const ResolvedKnots rk = resolve_knots(opt);
    const KnotVector& kv = rk.kv;
    const std::string fname = require_one_function(opt);
    const RealFunction f = resolve_function(fname, &kv);

    BoundsConfig config;
    config.r = opt.r;
    config.t = opt.t;
    config.grid = opt.grid;
    config.h_steps = opt.h_steps;
    config.x_steps = opt.x_steps;
    config.tol_one = opt.tol_one;
    const BoundsReport rep = equivalence_report(kv, f, config);

    Report report("bounds");
    report.echo(rk.echo);
    report.echo("f", fname);
    report.echo("r", std::to_string(opt.r));
    report.grid_sizes({{"grid", std::to_string(opt.grid)},
                       {"h-steps", std::to_string(opt.h_steps)},
                       {"x-steps", std::to_string(opt.x_steps)}});

    json body;
    body["function"] = fname;
    body["n"] = rep.n;
    body["k"] = rep.k;
    body["delta_min"] = rep.delta_min;
    body["delta_max"] = rep.delta_max;
    body["gamma"] = rep.gamma;
    body["tol_one"] = rep.tol_one;
    body["dk_used"] = rep.dk_used;
    body["dk_empirical"] = rep.dk_empirical;
    body["r"] = rep.r;
    body["t"] = rep.t;
    body["approx_error"] = rep.approx_error;
    body["omega_r_t"] = rep.omega_r_t;
    body["omega_r_delta"] = rep.omega_r_delta;
    body["omega_2_beutel"] = rep.omega_2_beutel;
    body["lower_constant"] = rep.lower_constant;
    body["lower_constant_empirical"] = rep.lower_constant_empirical;
    body["corollary_delta"] = rep.corollary_delta;
    body["beutel_t"] = rep.beutel_t;
    body["beutel_clamped"] = rep.beutel_clamped;
    body["verdicts"] = json{{"lower_at_delta", verdict_json(rep.lower_at_delta)},
                            {"upper_beutel", verdict_json(rep.upper_beutel)},
                            {"lower_at_t", verdict_json(rep.lower_at_t)}};
    body["all_pass"] = rep.all_pass();
    report.payload(json{{"report", body}});
    emit(report, opt);
    return rep.all_pass() ? 0 : 1;
}

int cmd_sweep(const Options& opt) {
    if (opt.family.empty()) throw std::invalid_argument("--family is required for sweep");
    const FamilySpec fam = parse_family(opt.family);
    if (opt.k_spec.empty()) throw std::invalid_argument("--k is required");
    const auto [k_lo, k_hi] = parse_range(opt.k_spec, "--k");

    std::pair<int, int> n_range{1, 1};
    if (fam.name == "bernstein") {
        if (!opt.n_spec.empty() && parse_range(opt.n_spec, "--n") != std::pair<int, int>{1, 1})
            throw std::invalid_argument("--family bernstein fixes n = 1");
    } else {
        if (opt.n_spec.empty())
            throw std::invalid_argument("--family " + fam.name + " requires --n");
        n_range = parse_range(opt.n_spec, "--n");
    }
    if (n_range.second > n_range.first && k_hi > k_lo)
        throw std::invalid_argument("sweep varies one of --n, --k; fix the other");

    Report report("sweep");
    report.echo("family", fam.canonical);
    report.echo("n", std::to_string(n_range.first) + ".." + std::to_string(n_range.second));
    report.echo("k", std::to_string(k_lo) + ".." + std::to_string(k_hi));
    report.echo("r", std::to_string(opt.r));
    if (fam.name == "random") report.echo("seed", std::to_string(opt.seed));
    report.grid_sizes({{"grid", std::to_string(opt.grid)}});

    report.columns(
        {"family", "n", "k", "gamma", "one_multiplicity", "delta_min", "corollary_delta", "status"});
    for (int n = n_range.first; n <= n_range.second; ++n) {
        for (int k = k_lo; k <= k_hi; ++k) {
            std::vector<std::string> cells = {fam.canonical, std::to_string(n), std::to_string(k)};
            json jrow{{"family", fam.canonical}, {"n", n}, {"k", k}};
            try {
                const KnotVector kv = fam.name == "uniform" || fam.name == "bernstein"
                                          ? uniform_knot_vector(n, k)
                                      : fam.name == "geometric"
                                          ? geometric_knot_vector(n, k, fam.q)
                                          : random_knot_vector(n, k, opt.seed);
                const SpectrumResult spec = spectrum(kv, opt.tol_one);
                const MeshStats mesh = mesh_stats(kv);
                cells.push_back(fmt17(spec.gamma));
                cells.push_back(std::to_string(spec.one_multiplicity));
                cells.push_back(fmt17(mesh.delta_min));
                jrow["gamma"] = spec.gamma;
                jrow["one_multiplicity"] = spec.one_multiplicity;
                jrow["delta_min"] = mesh.delta_min;
                if (k > opt.r) {
                    const double delta = corollary_delta(kv, opt.r, spec.gamma, k * std::pow(2.0, k));
                    cells.push_back(fmt17(delta));
                    jrow["corollary_delta"] = delta;
                } else {
                    cells.push_back("");
                    jrow["corollary_delta"] = nullptr;
                }
                std::string status = "ok";
                if (spec.projector_case) status = "projector";
                else if (k <= opt.r) status = "ok (delta requires k > r)";
                cells.push_back(status);
                jrow["status"] = status;
            } catch (const std::exception& e) {
                cells.resize(3);
                const std::string status = std::string("error: ") + e.what();
                cells.insert(cells.end(), {"", "", "", "", status});
                jrow["gamma"] = nullptr;
                jrow["one_multiplicity"] = nullptr;
                jrow["delta_min"] = nullptr;
                jrow["corollary_delta"] = nullptr;
                jrow["status"] = status;
            }
            report.row(std::move(cells), std::move(jrow));
        }
    }
    emit(report, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiments with the variation-diminishing spline operator on [0,1]"};
    app.require_subcommand(1);

    Options opt;
    std::string command;
    double t_raw = std::numeric_limits<double>::quiet_NaN();

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", opt.n_spec, "uniform mesh intervals (INT, or INT..INT in sweep)");
        sub->add_option("--interior", opt.interior, "comma-separated interior knots in (0,1)");
        sub->add_option("--family", opt.family,
                        "knot family: uniform | bernstein | geometric[:q] | random");
        sub->add_option("--k", opt.k_spec, "spline degree (INT, or INT..INT in sweep)");
        sub->add_option("--f", opt.functions, "registry function name (repeatable)");
        sub->add_option("--r", opt.r, "smoothness order");
        sub->add_option("--t", t_raw, "modulus scale t");
        sub->add_option("--grid", opt.grid, "sup-norm grid points");
        sub->add_option("--h-steps", opt.h_steps, "modulus h-grid steps");
        sub->add_option("--x-steps", opt.x_steps, "modulus x-grid steps");
        sub->add_option("--m", opt.m_spec, "iterate range INT..INT");
        sub->add_option("--tol-one", opt.tol_one, "eigenvalue-1 cluster tolerance");
        sub->add_option("--seed", opt.seed, "RNG seed (random family)");
        sub->add_option("--format", opt.format, "output format: csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", opt.out_path, "output path (default stdout)");
        sub->callback([&command, sub] { command = sub->get_name(); });
    };

    for (const char* name : {"basis", "spectrum", "iterates", "modulus", "bounds", "sweep"})
        add_common(app.add_subcommand(name, ""));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (!std::isnan(t_raw)) opt.t = t_raw;

    try {
        validate_function_names(opt);
        if (command == "bounds") {
            const bool format_given =
                app.get_subcommand("bounds")->get_option("--format")->count() > 0;
            if (format_given && opt.format == "csv")
                throw std::invalid_argument("bounds emits a JSON report; use --format json");
            opt.format = "json";
            return cmd_bounds(opt);
        }
        if (command == "basis") return cmd_basis(opt);
        if (command == "spectrum") return cmd_spectrum(opt);
        if (command == "iterates") return cmd_iterates(opt);
        if (command == "modulus") return cmd_modulus(opt);
        if (command == "sweep") return cmd_sweep(opt);
        std::cerr << "error: a subcommand is required" << std::endl;
        return 2;
    } catch (const ProjectorCaseError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return 1;
    }
}
