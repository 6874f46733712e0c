// Command-line front end: Monte Carlo experiment runner for online convex
// optimization policies in drifting environments, with CSV output, power-law
// rate fitting, and sequence-file generation.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsopt/harness.hpp"
#include "nsopt/sequence_io.hpp"

namespace {

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
}

int total_faults(const nsopt::ExperimentResult& result) {
    int n = 0;
    for (const auto& cell : result.cells) n += cell.faults;
    return n;
}

// Flat key=value config support: the file's keys are the long flag names
// without the leading dashes. Entries are expanded into flag tokens placed
// before the user's own flags; keys also given on the command line are
// skipped, so command-line flags override the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string path;
    std::vector<std::string> rest;
    std::set<std::string> cli_keys;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file path");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            if (args[i].rfind("--", 0) == 0)
                cli_keys.insert(args[i].substr(2, args[i].find('=') - 2));
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;

    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::vector<std::string> expanded;
    if (!rest.empty()) expanded.push_back(rest.front());  // the subcommand name
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config file: expected key=value, got '" + line + "'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config file: empty key in '" + line + "'");
        if (!cli_keys.count(key)) expanded.push_back("--" + key + "=" + value);
    }
    expanded.insert(expanded.end(), rest.begin() + (rest.empty() ? 0 : 1), rest.end());
    return expanded;
}

void add_common_flags(CLI::App* cmd, nsopt::ExperimentConfig& cfg) {
    cmd->add_option("--pattern", cfg.pattern,
                    "Environment: shock|decay|linear|adv-convex|adv-strong|ogd-failure|oracle-gap");
    cmd->add_option("--policy", cfg.policy,
                    "Policy: restarted-ogd|ogd|tuned-ogd|fixed-ogd:<a>|restarted-egs|egs|fixed-egs:<a>");
    cmd->add_option("--feedback", cfg.feedback, "Feedback channel: cost|grad");
    cmd->add_option("--sigma", cfg.sigma, "Observation noise standard deviation");
    cmd->add_option("--reps", cfg.replications, "Replications per horizon");
    cmd->add_option("--seed", cfg.base_seed, "Master seed");
    cmd->add_option("--budget", cfg.budget, "Variation budget V for adversarial generators");
    cmd->add_option("--tuning-budget", cfg.tuning_budget,
                    "Budget the policy is tuned for (default: --budget)");
    cmd->add_option("--ctilde", cfg.noise_constant,
                    "Noise constant for adversarial batch tuning (default 1/(2 sigma^2))");
    cmd->add_option("--decay-rate", cfg.decay_rate, "Exponent factor for the decay pattern");
    cmd->add_option("--step-constant", cfg.step_constant, "C for the ogd-failure instances");
    cmd->add_option("--ogd-failure-variant", cfg.ogd_failure_variant,
                    "ogd-failure flavor: const_step|decaying_step");
    cmd->add_option("--nu", cfg.nu, "Interiority constant override for the gradient-free policy");
    cmd->add_flag("--egs-fresh-psi", cfg.egs_fresh_psi,
                  "Probe offset uses the freshly drawn direction");
    cmd->add_flag("--strong-batching", cfg.strong_batching,
                  "Restart batch size ceil(sqrt(T ln T / V)) instead of ceil((T/V)^{2/3})");
    cmd->add_flag("--ogd-batch-constant", cfg.ogd_batch_constant,
                  "restarted-ogd uses the constant step r/(G sqrt(batch)) with full restarts");
    cmd->add_option("--out", cfg.out_path, "Output CSV path (default stdout)");
    cmd->add_option("--config", "Flat key=value config file; command-line flags override");
}

int cmd_fit(const std::string& in_path) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open " + in_path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("fit: empty CSV");
    std::vector<std::pair<double, double>> points;
    std::string pattern, policy, feedback, sigma;
    while (std::getline(in, line)) {
        std::vector<std::string> tok;
        std::istringstream is(line);
        std::string t;
        while (std::getline(is, t, ',')) tok.push_back(t);
        if (tok.size() < 9 || tok[4].empty() || tok[6].empty()) continue;
        if (points.empty()) { pattern = tok[0]; policy = tok[1]; feedback = tok[2]; sigma = tok[3]; }
        points.emplace_back(std::stod(tok[4]), std::stod(tok[6]));
    }
    const nsopt::RateFit fit = nsopt::fit_rate(points);
    std::cout << "pattern,policy,feedback,sigma,T,replications,mean_regret,stderr_regret,"
                 "mean_loss_pct,alpha,c,r2\n"
              << pattern << ',' << policy << ',' << feedback << ',' << sigma << ",,,,,,"
              << fit.alpha << ',' << fit.c << ',' << fit.r_squared << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regret experiments for online optimization under drifting costs"};
    app.require_subcommand(1);

    nsopt::ExperimentConfig cfg;
    int horizon = 1000;
    std::vector<int> horizons;
    std::string fit_in, gen_out;

    auto* run = app.add_subcommand("run", "Run one (pattern, policy, T) cell");
    add_common_flags(run, cfg);
    run->add_option("--horizon", horizon, "Horizon T");

    auto* sweep = app.add_subcommand("sweep", "Run a horizon grid and append a rate-fit row");
    add_common_flags(sweep, cfg);
    sweep->add_option("--horizons", horizons, "Comma-separated horizon grid")
        ->delimiter(',')
        ->required();

    auto* fit = app.add_subcommand("fit", "Refit alpha, c, R^2 from an existing sweep CSV");
    fit->add_option("--in", fit_in, "Input CSV from sweep")->required();

    auto* gen = app.add_subcommand("gen", "Write a sequence file for inspection");
    add_common_flags(gen, cfg);
    gen->add_option("--horizon", horizon, "Horizon T");
    gen->add_option("--out-seq", gen_out, "Output sequence file path")->required();

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));

        if (fit->parsed()) return cmd_fit(fit_in);

        if (gen->parsed()) {
            nsopt::RandomStream env_rng(cfg.base_seed, 0, nsopt::kEnvSub);
            const nsopt::FunctionSequence seq = nsopt::generate_sequence(cfg, horizon, env_rng);
            nsopt::save_sequence(seq, gen_out);
            return 0;
        }

        cfg.horizons = run->parsed() ? std::vector<int>{horizon} : horizons;
        const nsopt::ExperimentResult result = nsopt::run_experiment(cfg);
        write_output(cfg.out_path, nsopt::to_csv(cfg, result));
        if (total_faults(result) > 0) {
            std::cerr << "warning: " << total_faults(result)
                      << " trajectories hit a numeric fault and were excluded\n";
            return 2;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
