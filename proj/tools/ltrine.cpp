// Copyright 2026 The ltrine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ltrine: accessible information of the lifted trine ensemble.
//
//   ltrine theta-curve  [--alpha-min A --alpha-max B --alpha-step S]
//   ltrine theta-family [...]
//   ltrine envelope     [...]
//   ltrine povm         --alpha A
//   ltrine verify       [--seed N]
//
// Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 I/O error.

#include "ltrine/ltrine.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Defaults {
    double min, max, step;
};

// Per-command alpha ranges when none is given.
const std::map<std::string, Defaults> kDefaultRange = {
    {"theta-curve", {0.0, 0.07, 0.001}},
    {"theta-family", {0.0, 0.07, 0.001}},
    {"envelope", {0.0, 0.061, 0.001}},
    {"povm", {0.03, 0.03, 0.001}},
    {"verify", {0.0, 0.0, 0.001}},
};

const std::map<std::string, std::string> kOutputName = {
    {"theta-curve", "theta_curve"}, {"theta-family", "theta_family"}, {"envelope", "envelope"},
    {"povm", "povm"},               {"verify", "verify"},
};

} // namespace

int main(int argc, char **argv) {
    using namespace ltrine;

    CLI::App app{"Accessible information of the lifted trine ensemble"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::optional<double> alpha, alpha_min, alpha_max, alpha_step;
    std::string format = "csv";
    std::string cache;
    std::string out_dir;
    unsigned threads = 0;

    for (const auto &[name, description] : std::vector<std::pair<std::string, std::string>>{
             {"theta-curve", "optimal azimuth and information against alpha"},
             {"theta-family", "information for azimuths 0..30 degrees in 3 degree steps"},
             {"envelope", "V(0), best V(theta) and accessible information on [0, gamma1]"},
             {"povm", "elements of the optimal POVM at one alpha"},
             {"verify", "run the invariant suite"}}) {
        auto *sub = app.add_subcommand(name, description);
        sub->add_option("--alpha", alpha, "single alpha (collapses the range)");
        sub->add_option("--alpha-min", alpha_min, "range start");
        sub->add_option("--alpha-max", alpha_max, "range end (inclusive)");
        sub->add_option("--alpha-step", alpha_step, "range step");
        sub->add_option("--tol", cfg.tol, "azimuth search tolerance (radians)");
        sub->add_option("--seed", cfg.seed, "seed for randomized checks");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
        sub->add_option("--threads", threads, "worker threads (default: LTRINE_THREADS or all cores)");
        sub->add_option("--config", cache, "gamma1 cache file (read if present, written otherwise)");
        sub->add_flag("--inject-fault", cfg.inject_fault, "test hook: corrupt one POVM weight before verifying");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    const auto defaults = kDefaultRange.at(cfg.subcommand);
    cfg.alpha_min = alpha_min.value_or(alpha.value_or(defaults.min));
    cfg.alpha_max = alpha_max.value_or(alpha.value_or(alpha_min ? std::max(*alpha_min, defaults.max) : defaults.max));
    cfg.alpha_step = alpha_step.value_or(defaults.step);
    cfg.format = format == "jsonl" ? Format::jsonl : Format::csv;
    if (threads > 0) cfg.threads = Threads{threads};
    if (!out_dir.empty()) cfg.out = out_dir;

    try {
        cfg.validate();
        const double gamma1 = load_or_compute_gamma1(cache);
        const std::string stem = kOutputName.at(cfg.subcommand);

        if (cfg.subcommand == "verify") {
            const auto outcome = run_verify(cfg, gamma1);
            std::cout << outcome.text;
            if (!out_dir.empty()) write_atomic(cfg.out / (stem + ".txt"), outcome.text);
            return outcome.all_passed() ? 0 : kExitInvariant;
        }

        Table table;
        if (cfg.subcommand == "theta-curve") table = theta_curve_table(cfg);
        else if (cfg.subcommand == "theta-family") table = theta_family_table(cfg);
        else if (cfg.subcommand == "envelope") table = envelope_table(cfg, gamma1);
        else table = povm_table(cfg, gamma1);

        const auto path = cfg.out / (stem + (cfg.format == Format::csv ? ".csv" : ".jsonl"));
        write_atomic(path, table.render(cfg.format));
        std::cout << "wrote " << path.string() << "\n";
        return 0;
    } catch (const IoError &e) {
        std::cerr << "ltrine: I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "ltrine: I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const UsageError &e) {
        std::cerr << "ltrine: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError &e) {
        std::cerr << "ltrine: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError &e) {
        std::cerr << "ltrine: invalid measurement: " << e.what() << "\n";
        return kExitInvariant;
    }
}
