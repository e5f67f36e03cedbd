#include "seqadapt/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "seqadapt/regression.hpp"

namespace seqadapt {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");
    json parsed;
    try {
        in >> parsed;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: invalid JSON in '" + path +
                                    "': " + e.what());
    }
    return parsed;
}

void apply_overrides(json& cfg, const std::vector<std::string>& overrides) {
    for (const auto& kv : overrides) {
        const auto pos = kv.find('=');
        if (pos == std::string::npos || pos == 0)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, pos);
        const std::string value = kv.substr(pos + 1);
        json parsed;
        try {
            parsed = json::parse(value);
        } catch (const json::parse_error&) {
            parsed = value; // plain string
        }
        cfg[key] = parsed;
    }
}

template <typename T>
T get_or(const json& cfg, const std::string& key, T fallback) {
    if (!cfg.contains(key)) return fallback;
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config: key '" + key + "' has the wrong type");
    }
}

template <typename T>
T require(const json& cfg, const std::string& key) {
    if (!cfg.contains(key))
        throw std::invalid_argument("config: missing required key '" + key + "'");
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config: key '" + key + "' has the wrong type");
    }
}

std::string normalized_kind(std::string kind) {
    for (char& c : kind)
        if (c == '-') c = '_';
    return kind;
}

HyperParams hyper_params_from(const json& cfg, const ModelSpec& model) {
    HyperParams hp;
    hp.eta = get_or(cfg, "eta", 2.0);
    hp.gamma = get_or(cfg, "gamma", 2.0);
    hp.k_max = get_or(cfg, "k_max", 50);
    hp.d_max = get_or(cfg, "d_max", 0);
    hp.validate(model);
    return hp;
}

EstimatorSpec parse_estimator(const json& item, const HyperParams& hp,
                              double default_beta) {
    std::string kind;
    json params = json::object();
    if (item.is_string()) {
        kind = item.get<std::string>();
    } else if (item.is_object()) {
        kind = require<std::string>(item, "kind");
        params = item;
    } else {
        throw std::invalid_argument(
            "config: estimator entries must be strings or objects");
    }
    kind = normalized_kind(kind);

    EstimatorSpec spec;
    spec.hp = hp;
    if (kind == "proposed") {
        spec.kind = est::Proposed{};
    } else if (kind == "model_selection") {
        spec.kind = est::ModelSelection{};
    } else if (kind == "model_averaging") {
        const double beta = get_or(params, "beta", default_beta);
        if (!(beta > 0.0 && beta <= 0.5))
            throw std::invalid_argument("config: beta must be in (0, 1/2]");
        spec.kind = est::ModelAveraging{beta};
    } else if (kind == "block_james_stein") {
        spec.kind = est::BlockJamesStein{};
    } else if (kind == "gaussian_prior") {
        spec.kind = est::GaussianPrior{get_or(params, "alpha", 1.0)};
    } else if (kind == "scale_mixture") {
        spec.kind =
            est::ScaleMixture{default_scale_mixture(get_or(params, "alpha", 2.0))};
    } else if (kind == "mle") {
        spec.kind = est::Mle{};
    } else if (kind == "truncation") {
        spec.kind = est::Truncation{require<int>(params, "d")};
    } else {
        throw std::invalid_argument("config: unknown estimator kind '" + kind + "'");
    }
    return spec;
}

ExperimentConfig experiment_from_json(const json& cfg) {
    ExperimentConfig out;
    const int p = require<int>(cfg, "p");
    const double eps2 = require<double>(cfg, "eps2");
    if (p < 1) throw std::invalid_argument("config: p must be >= 1");
    if (!(eps2 > 0.0)) throw std::invalid_argument("config: eps2 must be positive");
    out.model = ModelSpec(eps2, p);

    if (cfg.contains("theta")) {
        out.theta_tag = 0;
        out.custom_theta = require<std::vector<double>>(cfg, "theta");
        if (static_cast<int>(out.custom_theta.size()) != p)
            throw std::invalid_argument("config: theta must have length p");
    } else {
        out.theta_tag = require<int>(cfg, "theta_family");
        if (out.theta_tag < 1 || out.theta_tag > 4)
            throw std::invalid_argument("config: theta_family must be in 1..4");
    }

    out.B2_values = require<std::vector<double>>(cfg, "B2");
    if (out.B2_values.empty())
        throw std::invalid_argument("config: B2 must be non-empty");
    for (double b2 : out.B2_values)
        if (!(b2 > 0.0))
            throw std::invalid_argument("config: B2 values must be positive");

    out.reps = get_or(cfg, "reps", 1000);
    if (out.reps < 1) throw std::invalid_argument("config: reps must be >= 1");

    out.rng.seed = get_or<std::uint64_t>(cfg, "seed", 0);
    out.rng.stream_id = get_or<std::uint64_t>(cfg, "stream_id", 0);
    out.workers = get_or(cfg, "workers", 0);
    out.tail_mass_warn = get_or(cfg, "tail_mass_warn", 1e-10);

    const HyperParams hp = hyper_params_from(cfg, out.model);
    const double default_beta = get_or(cfg, "beta", 0.5);
    if (!(default_beta > 0.0 && default_beta <= 0.5))
        throw std::invalid_argument("config: beta must be in (0, 1/2]");

    json estimators = cfg.contains("estimators")
                          ? cfg.at("estimators")
                          : json{"proposed", "model_averaging", "model_selection"};
    if (!estimators.is_array() || estimators.empty())
        throw std::invalid_argument("config: estimators must be a non-empty array");
    for (const auto& item : estimators)
        out.estimators.push_back(parse_estimator(item, hp, default_beta));
    return out;
}

struct CommonArgs {
    std::string config_path;
    std::string output_path;
    std::vector<std::string> overrides;
    bool as_json = false;
    std::int64_t seed = -1;
    int reps = -1;
};

json load_config(const CommonArgs& args) {
    json cfg = args.config_path.empty() ? json::object()
                                        : load_json_file(args.config_path);
    if (!cfg.is_object())
        throw std::invalid_argument("config: top-level JSON must be an object");
    apply_overrides(cfg, args.overrides);
    if (args.seed >= 0) cfg["seed"] = static_cast<std::uint64_t>(args.seed);
    if (args.reps >= 0) cfg["reps"] = args.reps;
    return cfg;
}

void write_output(const CommonArgs& args, const std::string& text) {
    if (args.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.output_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + args.output_path + "'");
    out << text;
}

CoefVector observation_from_config(const json& cfg, const ModelSpec& model,
                                   CoefVector* theta_out) {
    if (cfg.contains("x")) {
        auto x = require<std::vector<double>>(cfg, "x");
        validate_coef_vector(x, model);
        if (theta_out) theta_out->assign(model.p, 0.0);
        return x;
    }
    CoefVector theta;
    if (cfg.contains("theta")) {
        theta = require<std::vector<double>>(cfg, "theta");
        validate_coef_vector(theta, model);
    } else {
        const int tag = get_or(cfg, "theta_family", 2);
        const double B = get_or(cfg, "B", 1.0);
        theta = theta_family(tag, B, model.p);
    }
    if (theta_out) *theta_out = theta;
    RngSpec rng{get_or<std::uint64_t>(cfg, "seed", 0),
                get_or<std::uint64_t>(cfg, "stream_id", 0)};
    return simulate_observation(theta, model, rng);
}

int cmd_simulate(const CommonArgs& args) {
    const json cfg = load_config(args);
    const ModelSpec model(require<double>(cfg, "eps2"), require<int>(cfg, "p"));
    CoefVector theta;
    if (cfg.contains("theta")) {
        theta = require<std::vector<double>>(cfg, "theta");
        validate_coef_vector(theta, model);
    } else {
        theta = theta_family(get_or(cfg, "theta_family", 2),
                             get_or(cfg, "B", 1.0), model.p);
    }
    RngSpec rng{get_or<std::uint64_t>(cfg, "seed", 0),
                get_or<std::uint64_t>(cfg, "stream_id", 0)};
    const CoefVector x = simulate_observation(theta, model, rng);

    std::ostringstream out;
    if (args.as_json) {
        out << json{{"theta", theta}, {"x", x}}.dump(2) << '\n';
    } else {
        out << "i,theta,x\n";
        for (int i = 1; i <= model.p; ++i)
            out << i << ',' << format_double(theta[i - 1]) << ','
                << format_double(x[i - 1]) << '\n';
    }
    write_output(args, out.str());
    return 0;
}

int cmd_estimate(const CommonArgs& args) {
    const json cfg = load_config(args);
    const ModelSpec model(require<double>(cfg, "eps2"), require<int>(cfg, "p"));
    const HyperParams hp = hyper_params_from(cfg, model);
    const EstimatorSpec spec = parse_estimator(
        cfg.contains("estimator") ? cfg.at("estimator") : json("proposed"), hp,
        get_or(cfg, "beta", 0.5));
    const CoefVector x = observation_from_config(cfg, model, nullptr);
    const CoefVector estimate = apply_estimator(spec, x, model);

    std::ostringstream out;
    if (args.as_json) {
        out << json{{"estimator", spec.name()}, {"x", x}, {"estimate", estimate}}
                   .dump(2)
            << '\n';
    } else {
        out << "i,x,estimate\n";
        for (int i = 1; i <= model.p; ++i)
            out << i << ',' << format_double(x[i - 1]) << ','
                << format_double(estimate[i - 1]) << '\n';
    }
    write_output(args, out.str());
    return 0;
}

int cmd_posterior(const CommonArgs& args) {
    const json cfg = load_config(args);
    const ModelSpec model(require<double>(cfg, "eps2"), require<int>(cfg, "p"));
    const HyperParams hp = hyper_params_from(cfg, model);
    const CoefVector x = observation_from_config(cfg, model, nullptr);
    const PosteriorSummary summary = compute_posterior(x, hp, model);

    const double warn = get_or(cfg, "tail_mass_warn", 1e-10);
    if (summary.tail_mass_bound > warn)
        throw NumericFailure("posterior truncation tail mass " +
                             std::to_string(summary.tail_mass_bound) +
                             " exceeds the warning threshold");

    std::ostringstream out;
    if (args.as_json) {
        out << json{{"log_F_post", summary.log_F_post},
                    {"log_M_post", summary.log_M_post},
                    {"mean", summary.mean},
                    {"effective_shrink", summary.effective_shrink},
                    {"tail_mass_bound", summary.tail_mass_bound}}
                   .dump(2)
            << '\n';
    } else {
        out << "i,x,mean,effective_shrink\n";
        for (int i = 1; i <= model.p; ++i)
            out << i << ',' << format_double(x[i - 1]) << ','
                << format_double(summary.mean[i - 1]) << ','
                << format_double(summary.effective_shrink[i - 1]) << '\n';
    }
    write_output(args, out.str());
    return 0;
}

int cmd_risk_sweep(const CommonArgs& args) {
    const json cfg = load_config(args);
    const ExperimentConfig exp = experiment_from_json(cfg);
    const RiskReport report = run_experiment(exp);
    if (args.as_json) {
        write_output(args, risk_report_json(report) + "\n");
    } else {
        std::ostringstream out;
        write_risk_report_csv(report, out);
        write_output(args, out.str());
    }
    return 0;
}

std::vector<double> read_observation_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("regression: cannot open input '" + path + "'");
    std::vector<double> y;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double a;
        if (!(row >> a)) {
            if (first) { // header row
                first = false;
                continue;
            }
            throw std::invalid_argument("regression: malformed CSV row '" + line + "'");
        }
        double b;
        y.push_back((row >> b) ? b : a); // two columns: (t, y); one column: y
        first = false;
    }
    if (y.empty())
        throw std::invalid_argument("regression: input file has no observations");
    return y;
}

std::vector<double> grid_from_config(const json& cfg) {
    const int points = get_or(cfg, "grid_points", 1000);
    if (points < 1)
        throw std::invalid_argument("config: grid_points must be >= 1");
    std::vector<double> grid(points);
    for (int i = 1; i <= points; ++i)
        grid[i - 1] = static_cast<double>(i) / points;
    return grid;
}

int cmd_regression(const CommonArgs& args) {
    const json cfg = load_config(args);
    RegressionSample sample;
    sample.y = read_observation_csv(require<std::string>(cfg, "input"));
    sample.p = get_or(cfg, "p", std::min(100, sample.n() - 1));
    sample.validate();
    const ModelSpec model(1.0 / sample.n(), sample.p);
    const HyperParams hp = hyper_params_from(cfg, model);
    const FunctionEstimate fhat = estimate_regression(sample, hp);
    const auto grid = grid_from_config(cfg);
    const auto values = reconstruct(fhat, grid);

    std::ostringstream out;
    if (args.as_json) {
        out << json{{"coefs", fhat.coefs}, {"t", grid}, {"fhat", values}}.dump(2)
            << '\n';
    } else {
        out << "t,fhat\n";
        for (std::size_t g = 0; g < grid.size(); ++g)
            out << format_double(grid[g]) << ',' << format_double(values[g])
                << '\n';
    }
    write_output(args, out.str());
    return 0;
}

int cmd_whitenoise(const CommonArgs& args) {
    const json cfg = load_config(args);
    const ModelSpec model(get_or(cfg, "eps2", 1.0), get_or(cfg, "p", 100));
    const HyperParams hp = hyper_params_from(cfg, model);
    const int tag = get_or(cfg, "theta_family", 3);
    const double B = get_or(cfg, "B", 10.0);
    const CoefVector theta = theta_family(tag, B, model.p);
    RngSpec rng{get_or<std::uint64_t>(cfg, "seed", 0),
                get_or<std::uint64_t>(cfg, "stream_id", 0)};
    const CoefVector x = simulate_observation(theta, model, rng);

    json estimators = cfg.contains("estimators")
                          ? cfg.at("estimators")
                          : json{"mle", "block_james_stein", "proposed",
                                 "model_averaging", "scale_mixture"};
    std::vector<EstimatorSpec> specs;
    for (const auto& item : estimators)
        specs.push_back(parse_estimator(item, hp, get_or(cfg, "beta", 0.5)));

    const auto grid = grid_from_config(cfg);
    std::vector<std::vector<double>> curves;
    curves.push_back(reconstruct(FunctionEstimate{theta}, grid));
    curves.push_back(reconstruct(FunctionEstimate{x}, grid));
    std::vector<std::string> names{"true", "observation"};
    for (const auto& spec : specs) {
        curves.push_back(
            reconstruct(FunctionEstimate{apply_estimator(spec, x, model)}, grid));
        names.push_back(spec.name());
    }

    std::ostringstream out;
    if (args.as_json) {
        json obj{{"t", grid}};
        for (std::size_t c = 0; c < names.size(); ++c) obj[names[c]] = curves[c];
        out << obj.dump(2) << '\n';
    } else {
        out << 't';
        for (const auto& name : names) out << ',' << name;
        out << '\n';
        for (std::size_t g = 0; g < grid.size(); ++g) {
            out << format_double(grid[g]);
            for (const auto& curve : curves) out << ',' << format_double(curve[g]);
            out << '\n';
        }
    }
    write_output(args, out.str());
    return 0;
}

int cmd_small_ball(const CommonArgs& args) {
    const json cfg = load_config(args);
    const double alpha = get_or(cfg, "alpha", 1.0);
    const int d = get_or(cfg, "d", 1);
    const auto v = get_or(cfg, "v", std::vector<double>{});
    const long long reps = get_or<long long>(cfg, "reps", 100000);
    RngSpec rng{get_or<std::uint64_t>(cfg, "seed", 0),
                get_or<std::uint64_t>(cfg, "stream_id", 0)};
    const SmallBallEstimate est = small_ball_mc(alpha, d, v, reps, rng);

    std::ostringstream out;
    if (args.as_json) {
        out << json{{"alpha", alpha},
                    {"d", d},
                    {"reps", est.reps},
                    {"hits", est.hits},
                    {"p_hat", est.p_hat},
                    {"upper_bound_only", est.upper_bound_only},
                    {"upper_bound", est.upper_bound}}
                   .dump(2)
            << '\n';
    } else {
        out << "alpha,d,reps,hits,p_hat,upper_bound_only,upper_bound\n"
            << format_double(alpha) << ',' << d << ',' << est.reps << ','
            << est.hits << ',' << format_double(est.p_hat) << ','
            << (est.upper_bound_only ? 1 : 0) << ','
            << format_double(est.upper_bound) << '\n';
    }
    write_output(args, out.str());
    return 0;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    json cfg;
    try {
        cfg = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!cfg.is_object())
        throw std::invalid_argument("config: top-level JSON must be an object");
    return experiment_from_json(cfg);
}

int run_cli(const std::vector<std::string>& argv) {
    CLI::App app{"Adaptive Bayesian estimation in the Gaussian sequence model"};
    app.require_subcommand(1);

    CommonArgs args;
    int (*handler)(const CommonArgs&) = nullptr;
    const std::vector<std::pair<std::string, int (*)(const CommonArgs&)>> commands{
        {"simulate", &cmd_simulate},     {"estimate", &cmd_estimate},
        {"posterior", &cmd_posterior},   {"risk-sweep", &cmd_risk_sweep},
        {"regression", &cmd_regression}, {"whitenoise", &cmd_whitenoise},
        {"small-ball", &cmd_small_ball}};
    for (const auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", args.config_path, "JSON config file");
        sub->add_option("--out", args.output_path, "output path (default stdout)");
        sub->add_option("--seed", args.seed, "override the config seed");
        sub->add_option("--reps", args.reps, "override the replication count");
        sub->add_option("--set", args.overrides, "override a config key (key=value)");
        sub->add_flag("--json", args.as_json, "emit JSON instead of CSV");
        const auto handler_fn = fn;
        sub->callback([&handler, handler_fn] { handler = handler_fn; });
    }

    std::vector<const char*> cargv;
    cargv.push_back("seqadapt");
    for (const auto& arg : argv) cargv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        return handler(args);
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace seqadapt
