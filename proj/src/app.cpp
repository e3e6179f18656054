#include "jcw/app.hpp"

#include "jcw/detect.hpp"
#include "jcw/figures.hpp"
#include "jcw/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace jcw {

namespace {

const std::map<std::string, Command> kCommands{
    {"figure1", Command::figure1}, {"figure2", Command::figure2}, {"figure3", Command::figure3},
    {"figure4", Command::figure4}, {"sweep", Command::sweep},     {"verify", Command::verify},
};

const char* command_name(Command c) {
    for (const auto& [name, value] : kCommands) {
        if (value == c) {
            return name.c_str();
        }
    }
    return "?";
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

bool is_case2(const RunConfig& c) {
    return c.command == Command::figure2 || c.command == Command::figure3 || c.command == Command::figure4 ||
           (c.command == Command::sweep && c.lambda.has_value());
}

void validate(const RunConfig& c, const std::vector<std::string>& given) {
    auto has = [&](const std::string& flag) { return std::find(given.begin(), given.end(), flag) != given.end(); };
    auto reject = [&](std::initializer_list<const char*> flags, const std::string& why) {
        for (const char* f : flags) {
            if (has(f)) {
                throw UsageError(std::string(command_name(c.command)) + ": " + f + " " + why);
            }
        }
    };

    switch (c.command) {
        case Command::figure1:
            reject({"--lambda"}, "does not apply (case 1 has a pure excited atom)");
            break;
        case Command::figure2:
            reject({"--gamma"}, "does not apply (case 2 evolves unitarily)");
            reject({"--lambda", "--restarts", "--seed"}, "does not apply (lambda is scanned, no optimization runs)");
            break;
        case Command::figure3:
        case Command::figure4:
            reject({"--gamma"}, "does not apply (case 2 evolves unitarily)");
            reject({"--lambda"}, "is fixed by this figure; use sweep --lambda instead");
            break;
        case Command::sweep:
            if (c.lambda && has("--gamma")) {
                throw UsageError("sweep: --gamma (case 1) and --lambda (case 2) cannot be combined");
            }
            break;
        case Command::verify:
            for (const std::string& f : given) {
                if (f != "--threads") {
                    throw UsageError("verify: " + f + " does not apply");
                }
            }
            break;
    }

    if (!(c.t_min >= 0.0) || !(c.t_min < c.t_max)) {
        throw UsageError("need 0 <= --t-min < --t-max");
    }
    if (c.t_steps < 2) {
        throw UsageError("--t-steps must be at least 2");
    }
    if (c.restarts < 1) {
        throw UsageError("--restarts must be at least 1");
    }
    if (c.g && !(*c.g > 0.0)) {
        throw UsageError("--g must be positive");
    }
    if (c.gamma && !(*c.gamma >= 0.0)) {
        throw UsageError("--gamma must be non-negative");
    }
    if (c.lambda && !(*c.lambda >= 0.0 && *c.lambda <= 1.0)) {
        throw UsageError("--lambda must lie in [0, 1]");
    }
    if (c.delta && !std::isfinite(*c.delta)) {
        throw UsageError("--delta must be finite");
    }
    if (c.n && *c.n < (is_case2(c) ? 1 : 0)) {
        throw UsageError(is_case2(c) ? "--n must be at least 1 for case 2" : "--n must be non-negative");
    }
}

JCConfig physics(const RunConfig& c) {
    JCConfig cfg;
    switch (c.command) {
        case Command::figure1:
            cfg = figure1_config();
            break;
        case Command::figure2:
            cfg = figure2_config();
            break;
        case Command::figure3:
            cfg = figure3_config();
            break;
        case Command::figure4:
            cfg = figure4_config();
            break;
        case Command::sweep:
        case Command::verify:
            cfg = JCConfig::from_detuning(1.0, 1.0);
            break;
    }
    const double delta = c.delta.value_or(cfg.detuning());
    cfg.g = c.g.value_or(cfg.g);
    cfg.omegaA = cfg.omegaF + delta;
    cfg.gamma = c.gamma.value_or(cfg.gamma);
    cfg.lambda = c.lambda.value_or(cfg.lambda);
    cfg.n = c.n.value_or(kFigurePhotons);
    return cfg;
}

nlohmann::ordered_json parameters_json(const RunConfig& c, const JCConfig& cfg) {
    nlohmann::ordered_json p;
    p["g"] = cfg.g;
    p["delta"] = cfg.detuning();
    p["gamma"] = cfg.gamma;
    p["lambda"] = cfg.lambda;
    p["n"] = cfg.n;
    p["t_min"] = c.t_min;
    p["t_max"] = c.t_max;
    p["t_steps"] = c.t_steps;
    p["restarts"] = c.restarts;
    p["seed"] = c.seed;
    return p;
}

void write_case_sweep(const RunConfig& c, const JCConfig& cfg, const std::vector<DetectionReport>& reports,
                      std::ostream& os) {
    if (c.format == Format::csv) {
        os << kCaseColumns << '\n';
        for (const DetectionReport& r : reports) {
            os << number(r.time) << ',' << number(r.negativity) << ',' << number(r.max_fidelity) << ','
               << number(r.k) << ',' << (r.detected ? 1 : 0) << ',' << r.optimizer_evals << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc;
    doc["command"] = command_name(c.command);
    doc["case"] = is_case2(c) ? 2 : 1;
    doc["parameters"] = parameters_json(c, cfg);
    doc["rows"] = nlohmann::ordered_json::array();
    for (const DetectionReport& r : reports) {
        nlohmann::ordered_json row;
        row["t"] = r.time;
        row["negativity"] = r.negativity;
        row["max_fidelity"] = r.max_fidelity;
        row["k"] = r.k;
        row["detected"] = r.detected;
        row["optimizer_evals"] = r.optimizer_evals;
        doc["rows"].push_back(std::move(row));
    }
    os << doc.dump(2) << '\n';
}

void write_figure2(const RunConfig& c, const JCConfig& base, std::ostream& os) {
    const std::vector<double> times = time_grid(c.t_min, c.t_max, c.t_steps);
    const std::vector<double> lambdas = time_grid(0.0, 1.0, kFigure2LambdaSteps);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (c.format == Format::csv) {
        os << kFigure2Columns << '\n';
    }
    for (double lambda : lambdas) {
        JCConfig cfg = base;
        cfg.lambda = lambda;
        for (double t : times) {
            const double neg = case2_negativity_closed(cfg.n, t, cfg);
            if (c.format == Format::csv) {
                os << number(t) << ',' << number(lambda) << ',' << number(neg) << '\n';
            } else {
                rows.push_back({{"t", t}, {"lambda", lambda}, {"negativity", neg}});
            }
        }
    }
    if (c.format == Format::json) {
        nlohmann::ordered_json doc;
        doc["command"] = "figure2";
        doc["case"] = 2;
        doc["parameters"] = parameters_json(c, base);
        doc["parameters"].erase("lambda");
        doc["parameters"].erase("restarts");
        doc["parameters"].erase("seed");
        doc["rows"] = std::move(rows);
        os << doc.dump(2) << '\n';
    }
}

int run_verify(const RunConfig& c, std::ostream& out) {
    int failed = 0;
    const auto results = run_acceptance(c.threads, [&](const CheckResult& r) {
        out << format_check(r) << '\n' << std::flush;
        failed += r.passed ? 0 : 1;
    });
    out << results.size() - static_cast<std::size_t>(failed) << " passed, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

RunConfig parse_command_line(const std::vector<std::string>& args) {
    CLI::App app{"Entanglement witness detection for Jaynes-Cummings atom-field states", "jcwitness"};
    RunConfig c;
    std::string command;
    double g = 0.0, delta = 0.0, gamma = 0.0, lambda = 0.0;
    int n = 0;
    std::string format = "csv";

    app.add_option("command", command, "figure1 | figure2 | figure3 | figure4 | sweep | verify")
        ->required()
        ->check(CLI::IsMember({"figure1", "figure2", "figure3", "figure4", "sweep", "verify"}));
    auto* g_opt = app.add_option("--g", g, "atom-field coupling");
    auto* delta_opt = app.add_option("--delta", delta, "detuning omegaA - omegaF");
    auto* gamma_opt = app.add_option("--gamma", gamma, "phase-decoherence rate (case 1)");
    auto* lambda_opt = app.add_option("--lambda", lambda, "ground-state weight of the atom (case 2)");
    auto* n_opt = app.add_option("--n", n, "initial photon number");
    app.add_option("--t-min", c.t_min, "first time point")->capture_default_str();
    app.add_option("--t-max", c.t_max, "last time point")->capture_default_str();
    app.add_option("--t-steps", c.t_steps, "number of time points")->capture_default_str();
    app.add_option("--restarts", c.restarts, "optimizer starts per time point")->capture_default_str();
    app.add_option("--seed", c.seed, "seed of the start-point sequence")->capture_default_str();
    app.add_option("--out", c.out, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--threads", c.threads, "worker threads, 0 = all cores")->capture_default_str();
    app.footer(
        "Commands:\n"
        "  figure1  case 1 sweep (g = 1, gamma = 0.3, delta = 1, n = 1)\n"
        "  figure2  case 2 negativity over (t, lambda), 21 lambda values in [0, 1] (g = 1, delta = 5)\n"
        "  figure3  case 2 sweep at lambda = 0 (g = 1, delta = 5, n = 1)\n"
        "  figure4  case 2 sweep at lambda = 0.2 (g = 1, delta = 5, n = 1)\n"
        "  sweep    case 1 by default, case 2 when --lambda is given (defaults g = 1, delta = 1, gamma = 0)\n"
        "  verify   run the acceptance checks\n"
        "Time grid defaults to 200 points over [0, 6].");

    std::vector<std::string> storage{"jcwitness"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : storage) {
        argv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n\n" + app.help());
    }

    c.command = kCommands.at(command);
    c.format = format == "json" ? Format::json : Format::csv;
    if (g_opt->count() > 0) c.g = g;
    if (delta_opt->count() > 0) c.delta = delta;
    if (gamma_opt->count() > 0) c.gamma = gamma;
    if (lambda_opt->count() > 0) c.lambda = lambda;
    if (n_opt->count() > 0) c.n = n;

    std::vector<std::string> given;
    for (const CLI::Option* opt : app.get_options()) {
        if (opt->count() > 0 && !opt->get_lnames().empty()) {
            given.push_back("--" + opt->get_lnames().front());
        }
    }
    try {
        validate(c, given);
    } catch (const UsageError& e) {
        throw UsageError(std::string(e.what()) + "\n\n" + app.help());
    }
    return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.command == Command::verify) {
        return run_verify(c, out);
    }

    std::ofstream file;
    if (!c.out.empty()) {
        file.open(c.out, std::ios::binary);
        if (!file) {
            err << "jcwitness: cannot open " << c.out << " for writing\n";
            return kExitFailure;
        }
    }
    std::ostream& os = c.out.empty() ? out : file;

    const JCConfig cfg = physics(c);
    if (c.command == Command::figure2) {
        if (!c.delta) {
            err << "note: two detuning values circulate for this figure (delta = 1 and delta = 5); "
                   "using delta = 5, pass --delta to choose\n";
        }
        write_figure2(c, cfg, os);
    } else {
        OptimizerSettings opt;
        opt.restarts = c.restarts;
        opt.seed = c.seed;
        const WitnessCase which = is_case2(c) ? WitnessCase::case2 : WitnessCase::case1;
        const std::vector<DetectionReport> reports =
            sweep(which, cfg.n, cfg, time_grid(c.t_min, c.t_max, c.t_steps), opt, c.threads);
        write_case_sweep(c, cfg, reports, os);
    }
    os.flush();
    if (!os) {
        err << "jcwitness: write failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_command_line(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "jcwitness: " << e.what();
        return kExitUsage;
    }
    try {
        return run(config, out, err);
    } catch (const std::exception& e) {
        err << "jcwitness: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace jcw
