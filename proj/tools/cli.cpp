// Copyright 2026 The wva-costlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "verify.hpp"
#include "wva/experiment.hpp"

namespace wva::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
    std::string theta = "pi/6";
    std::string alpha = "-pi/6";
    std::string g = "0.0349";
    std::uint64_t nu = 700;
    std::uint64_t reps = 1000;
    std::uint64_t seed = 1;
    double rp = 1.0;
    double rm = 1.0;
    std::uint64_t n = 1;
    std::string out;
    std::string trials_out;
    std::string format;
    std::string config;
    bool compat_printed_bound = false;
    std::vector<std::string> suites;
    std::size_t theta_grid = 7;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

Json number_or_null(std::optional<double> x) {
    if (x && std::isfinite(*x)) {
        return *x;
    }
    return nullptr;
}

std::string csv_field(const Json &v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_float()) {
        return fmt9(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

/// One-row CSV from a flat JSON object, keys as header.
std::string flat_csv(const Json &obj) {
    std::string head, row;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (it != obj.begin()) {
            head += ',';
            row += ',';
        }
        head += it.key();
        row += csv_field(it.value());
    }
    return head + "\n" + row + "\n";
}

void write_artifact(const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path + " for writing");
    }
    f << content;
    f.flush();
    if (!f) {
        throw IoError("failed writing " + path);
    }
}

BoundForm bound_form(const Settings &s) {
    return s.compat_printed_bound ? BoundForm::printed : BoundForm::corrected;
}

std::string resolved_format(const Settings &s, const std::string &fallback) {
    const std::string f = s.format.empty() ? fallback : s.format;
    if (f != "csv" && f != "json") {
        throw UsageError("--format must be csv or json");
    }
    return f;
}

// ---------------------------------------------------------------------------

void cmd_curve(const Settings &s, std::ostream &out) {
    const double theta = parse_angle(s.theta);
    if (!(theta > 0.0 && theta <= std::numbers::pi / 4.0 + 1e-15)) {
        throw UsageError("curve needs --theta in (0, pi/4]");
    }
    const CostRates rates(s.rp, s.rm, s.n);
    const auto grid = default_alpha_grid(theta);
    const auto curve = boundary_curve(theta, grid, rates, bound_form(s));
    const double c = l1_coherence(DensityMatrix::pure(ReferenceBasis::computational().real_superposition(theta)),
                                  ReferenceBasis::computational());
    std::string text;
    if (resolved_format(s, "csv") == "csv") {
        text = "theta,coherence_l1,alpha,cp_norm,cm_norm,slack\n";
        for (const TradeoffSample &t : curve) {
            text += fmt9(theta) + ',' + fmt9(c) + ',' + fmt9(t.alpha) + ',' + fmt9(t.cost.cp_norm) + ',' +
                    fmt9(t.cost.cm_norm) + ',' + fmt9(t.slack) + '\n';
        }
    } else {
        Json rows = Json::array();
        for (const TradeoffSample &t : curve) {
            rows.push_back({{"theta", theta},
                            {"coherence_l1", c},
                            {"alpha", t.alpha},
                            {"cp_norm", t.cost.cp_norm},
                            {"cm_norm", t.cost.cm_norm},
                            {"slack", t.slack}});
        }
        text = rows.dump(2) + "\n";
    }
    write_artifact(s.out, text, out);
}

ExperimentConfig experiment_config(const Settings &s) {
    ExperimentConfig c;
    c.theta = parse_angle(s.theta);
    c.alpha = parse_angle(s.alpha);
    c.g_true = parse_angle(s.g);
    c.stopping = Stopping::postselected(s.nu);
    c.n_reps = s.reps;
    c.master_seed = s.seed;
    return c;
}

void cmd_simulate(const Settings &s, std::ostream &out) {
    const ExperimentConfig config = experiment_config(s);
    const CampaignReport r = run_campaign(config, CostRates(s.rp, s.rm, s.n), 1, bound_form(s));
    Json j;
    j["g_true"] = config.g_true;
    j["theta"] = config.theta;
    j["alpha"] = config.alpha;
    j["nu"] = config.stopping.count;
    j["n_reps"] = config.n_reps;
    j["seed"] = r.seed_echo;
    j["g_est_mean"] = r.g_est_mean;
    j["g_est_var"] = number_or_null(r.g_est_var);
    j["fm_empirical"] = number_or_null(r.fm_empirical);
    j["fm_exact"] = r.fm_exact;
    j["p_empirical"] = r.p_empirical;
    j["p_exact"] = r.p_exact;
    j["cp_norm_emp"] = number_or_null(r.cost_empirical ? std::optional(r.cost_empirical->cp_norm) : std::nullopt);
    j["cm_norm_emp"] = number_or_null(r.cost_empirical ? std::optional(r.cost_empirical->cm_norm) : std::nullopt);
    j["slack_emp"] = number_or_null(r.slack_empirical);
    j["degenerate"] = r.degenerate;
    j["slack_sigma"] = number_or_null(r.slack_sigma);
    j["cp_norm_exact"] = r.cost_exact.cp_norm;
    j["cm_norm_exact"] = r.cost_exact.cm_norm;
    j["slack_exact"] = r.slack_exact;
    j["coherence_l1"] = r.coherence;
    j["bound"] = s.compat_printed_bound ? "printed" : "corrected";

    const std::string text = resolved_format(s, "json") == "json" ? j.dump(2) + "\n" : flat_csv(j);
    std::string trials;
    if (!s.trials_out.empty()) {
        trials = "trial,n_prepared,n_postselected,n_plus,n_minus,g_est\n";
        for (std::size_t k = 0; k < r.per_trial.size(); ++k) {
            const TrialCounts &c = r.per_trial[k].counts;
            trials += std::to_string(k) + ',' + std::to_string(c.n_prepared) + ',' + std::to_string(c.n_postselected) +
                      ',' + std::to_string(c.n_plus) + ',' + std::to_string(c.n_minus) + ',' +
                      fmt9(r.per_trial[k].g_est) + '\n';
        }
    }
    write_artifact(s.out, text, out);
    if (!s.trials_out.empty()) {
        write_artifact(s.trials_out, trials, out);
    }
}

void cmd_qfi(const Settings &s, std::ostream &out) {
    const double theta = parse_angle(s.theta), alpha = parse_angle(s.alpha), g = parse_angle(s.g);
    const WvaSetup setup = experiment_setup(theta, alpha, g);
    const PostselectionResult ps = postselect(setup);
    const double Fm = fm_exact(setup);
    const ProbabilisticQfi f = probabilistic_qfi(setup);
    const double F = setup.conventional_qfi();
    const double c = l1_coherence(DensityMatrix::pure(setup.psi_si()), ReferenceBasis::sigma_y_eigenbasis());

    std::optional<double> cfi;
    try {
        cfi = cfi_discrete(conditional_outcome_model(theta, alpha), g);
    } catch (const Error &) {
        cfi.reset();
    }
    std::optional<CostPoint> cost;
    if (f.exact > 0.0 && Fm > 0.0) {
        cost = cost_point(F, f.exact, Fm, CostRates(s.rp, s.rm, s.n));
    }

    Json j;
    j["theta"] = theta;
    j["alpha"] = alpha;
    j["g"] = g;
    j["omega"] = setup.omega();
    j["F"] = F;
    j["p"] = ps.p;
    j["a_w_re"] = number_or_null(ps.a_w ? std::optional(ps.a_w->real()) : std::nullopt);
    j["a_w_im"] = number_or_null(ps.a_w ? std::optional(ps.a_w->imag()) : std::nullopt);
    j["fm_exact"] = Fm;
    j["fm_leading"] = number_or_null(ps.a_w ? std::optional(fm_leading(setup.omega(), *ps.a_w)) : std::nullopt);
    j["f_m_exact"] = f.exact;
    j["f_m_leading"] = f.leading;
    j["cfi_conditional"] = number_or_null(cfi);
    j["weak_regime"] = in_weak_regime(setup);
    j["coherence_l1"] = c;
    j["cp_norm"] = number_or_null(cost ? std::optional(cost->cp_norm) : std::nullopt);
    j["cm_norm"] = number_or_null(cost ? std::optional(cost->cm_norm) : std::nullopt);
    j["slack"] = number_or_null(
        cost ? std::optional(tradeoff_slack_clamped(cost->cp_norm, cost->cm_norm, c, bound_form(s))) : std::nullopt);
    j["region"] = cost ? (classify_region(*cost) == Region::advantage ? "advantage" : "trivial") : "undefined";

    write_artifact(s.out, resolved_format(s, "json") == "json" ? j.dump(2) + "\n" : flat_csv(j), out);
}

bool cmd_verify(const Settings &s, std::ostream &out) {
    VerifyOptions o;
    o.seed = s.seed;
    o.theta_grid = s.theta_grid;
    o.bound = bound_form(s);
    const std::vector<std::string> &names = s.suites.empty() ? suite_names() : s.suites;
    for (const std::string &name : names) {
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
            throw UsageError("unknown suite '" + name + "'");
        }
    }
    const std::string format = resolved_format(s, "json");

    bool all = true;
    Json list = Json::array();
    std::string csv = "suite,pass,checks,failures,worst_slack\n";
    for (const std::string &name : names) {
        const SuiteResult r = run_suite(name, o);
        all &= r.pass;
        Json j;
        j["suite"] = r.name;
        j["pass"] = r.pass;
        j["checks"] = r.checks;
        j["failures"] = r.failures;
        j["worst_slack"] = number_or_null(r.worst_slack);
        if (name == "eq11") {
            j["bound"] = s.compat_printed_bound ? "printed" : "corrected";
            j["failing_thetas"] = r.failing_thetas;
        }
        list.push_back(j);
        csv += r.name + ',' + (r.pass ? "true" : "false") + ',' + std::to_string(r.checks) + ',' +
               std::to_string(r.failures) + ',' + (std::isfinite(r.worst_slack) ? fmt9(r.worst_slack) : "") + '\n';
    }
    Json doc;
    doc["pass"] = all;
    doc["seed"] = s.seed;
    doc["suites"] = list;
    write_artifact(s.out, format == "json" ? doc.dump(2) + "\n" : csv, out);
    return all;
}

// ---------------------------------------------------------------------------

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot read config " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string angle_text(const Json &v) {
    if (v.is_number()) {
        // Round-trip exactly through the string parser.
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    throw UsageError("angle must be a number or a string");
}

template <typename T>
T json_as(const Json &v, const std::string &key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception &) {
        throw UsageError("config key '" + key + "' has the wrong type");
    }
}

/// Applies config-file values for every option absent from the command line.
void apply_config(Settings &s, const CLI::App &sub) {
    Json j;
    try {
        j = Json::parse(read_file(s.config));
    } catch (const nlohmann::json::parse_error &e) {
        throw UsageError(std::string("malformed config: ") + e.what());
    }
    if (!j.is_object()) {
        throw UsageError("config must be a JSON object");
    }
    const std::map<std::string, std::pair<std::string, std::function<void(const Json &, const std::string &)>>>
        keys{
            {"theta", {"--theta", [&](const Json &v, const std::string &) { s.theta = angle_text(v); }}},
            {"alpha", {"--alpha", [&](const Json &v, const std::string &) { s.alpha = angle_text(v); }}},
            {"g", {"--g", [&](const Json &v, const std::string &) { s.g = angle_text(v); }}},
            {"nu", {"--nu", [&](const Json &v, const std::string &k) { s.nu = json_as<std::uint64_t>(v, k); }}},
            {"reps", {"--reps", [&](const Json &v, const std::string &k) { s.reps = json_as<std::uint64_t>(v, k); }}},
            {"seed", {"--seed", [&](const Json &v, const std::string &k) { s.seed = json_as<std::uint64_t>(v, k); }}},
            {"rp", {"--rp", [&](const Json &v, const std::string &k) { s.rp = json_as<double>(v, k); }}},
            {"rm", {"--rm", [&](const Json &v, const std::string &k) { s.rm = json_as<double>(v, k); }}},
            {"n", {"--n", [&](const Json &v, const std::string &k) { s.n = json_as<std::uint64_t>(v, k); }}},
            {"out", {"--out", [&](const Json &v, const std::string &k) { s.out = json_as<std::string>(v, k); }}},
            {"trials_out",
             {"--trials-out", [&](const Json &v, const std::string &k) { s.trials_out = json_as<std::string>(v, k); }}},
            {"format",
             {"--format", [&](const Json &v, const std::string &k) { s.format = json_as<std::string>(v, k); }}},
            {"compat_printed_bound",
             {"--compat-printed-bound",
              [&](const Json &v, const std::string &k) { s.compat_printed_bound = json_as<bool>(v, k); }}},
            {"suite",
             {"--suite",
              [&](const Json &v, const std::string &k) {
                  s.suites = v.is_string() ? std::vector<std::string>{v.get<std::string>()}
                                           : json_as<std::vector<std::string>>(v, k);
              }}},
            {"theta_grid",
             {"--theta-grid", [&](const Json &v, const std::string &k) { s.theta_grid = json_as<std::size_t>(v, k); }}},
        };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto k = keys.find(it.key());
        if (k == keys.end()) {
            throw UsageError("unknown config key '" + it.key() + "'");
        }
        const CLI::Option *opt = sub.get_option_no_throw(k->second.first);
        if (opt != nullptr && opt->count() == 0) {
            k->second.second(it.value(), it.key());
        }
    }
}

void add_scenario_options(CLI::App &sub, Settings &s, bool experiment) {
    sub.add_option("--theta", s.theta, "Pre-selection angle (radians, or e.g. pi/6)")->capture_default_str();
    sub.add_option("--rp", s.rp, "Cost per prepared sample");
    sub.add_option("--rm", s.rm, "Cost per detected sample");
    sub.add_option("--n", s.n, "Conventional-scheme sample count N");
    sub.add_option("--out", s.out, "Output path (stdout if omitted)");
    sub.add_option("--format", s.format, "csv or json");
    sub.add_option("--config", s.config, "JSON config file; command-line flags win");
    sub.add_flag("--compat-printed-bound", s.compat_printed_bound, "Use the uncorrected tradeoff right-hand side");
    if (experiment) {
        sub.add_option("--alpha", s.alpha, "Postselection angle")->capture_default_str();
        sub.add_option("--g", s.g, "Coupling strength")->capture_default_str();
    }
}

}  // namespace

double parse_angle(const std::string &text) {
    std::string t;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        }
    }
    const auto to_double = [&](const std::string &x) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(x, &used);
        } catch (const std::exception &) {
            used = std::string::npos;
        }
        if (used != x.size() || !std::isfinite(v)) {
            throw UsageError("cannot parse angle '" + text + "'");
        }
        return v;
    };
    const std::size_t pi = t.find("pi");
    if (pi == std::string::npos) {
        return to_double(t);
    }
    std::string coef = t.substr(0, pi);
    const std::string rest = t.substr(pi + 2);
    if (!coef.empty() && coef.back() == '*') {
        coef.pop_back();
    }
    double k = 1.0;
    if (coef == "-") {
        k = -1.0;
    } else if (!coef.empty() && coef != "+") {
        k = to_double(coef);
    }
    double d = 1.0;
    if (!rest.empty()) {
        if (rest[0] != '/') {
            throw UsageError("cannot parse angle '" + text + "'");
        }
        d = to_double(rest.substr(1));
        if (d == 0.0) {
            throw UsageError("cannot parse angle '" + text + "'");
        }
    }
    return k * std::numbers::pi / d;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Cost accounting and simulation for weak-value amplification", "wva-costlab"};
    app.require_subcommand(1);
    Settings s;

    CLI::App *curve = app.add_subcommand("curve", "Emit the tradeoff boundary curve as CSV");
    add_scenario_options(*curve, s, false);

    CLI::App *simulate = app.add_subcommand("simulate", "Run a Monte Carlo campaign");
    add_scenario_options(*simulate, s, true);
    simulate->add_option("--nu", s.nu, "Postselected photons per trial")->check(CLI::PositiveNumber);
    simulate->add_option("--reps", s.reps, "Number of trials")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", s.seed, "Master seed");
    simulate->add_option("--trials-out", s.trials_out, "Per-trial CSV path");

    CLI::App *qfi = app.add_subcommand("qfi", "Fisher information and costs of one configuration");
    add_scenario_options(*qfi, s, true);

    CLI::App *verify = app.add_subcommand("verify", "Run the invariant verification suites");
    verify->add_option("--seed", s.seed, "Seed for randomized suites");
    verify->add_option("--suite", s.suites, "Suite(s) to run")->delimiter(',');
    verify->add_option("--theta-grid", s.theta_grid, "Number of theta values in the eq11 sweep")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", s.out, "Output path (stdout if omitted)");
    verify->add_option("--format", s.format, "csv or json");
    verify->add_option("--config", s.config, "JSON config file; command-line flags win");
    verify->add_flag("--compat-printed-bound", s.compat_printed_bound, "Use the uncorrected tradeoff right-hand side");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        std::ostringstream msg;
        const int code = app.exit(e, out, msg);
        err << msg.str();
        return code == 0 ? kExitOk : kExitInvalidArguments;
    }

    try {
        CLI::App *sub = app.get_subcommands().front();
        if (!s.config.empty()) {
            apply_config(s, *sub);
        }
        if (sub == curve) {
            cmd_curve(s, out);
        } else if (sub == simulate) {
            cmd_simulate(s, out);
        } else if (sub == qfi) {
            cmd_qfi(s, out);
        } else if (!cmd_verify(s, out)) {
            err << "verification failed\n";
            return kExitVerificationFailure;
        }
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIoFailure;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidArguments;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidArguments;
    }
    return kExitOk;
}

}  // namespace wva::cli
