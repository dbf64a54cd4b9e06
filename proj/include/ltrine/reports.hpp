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

// Tables behind the command-line front end. Every command is a pure function
// from a RunConfig (plus gamma1) to file contents, so output is byte-identical
// for identical inputs regardless of the worker count.

#pragma once

#include "ltrine/envelope.hpp"
#include "ltrine/errors.hpp"
#include "ltrine/geometry.hpp"
#include "ltrine/info.hpp"
#include "ltrine/oracle.hpp"
#include "ltrine/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ltrine {

inline constexpr const char *kCodeVersion = "0.1.0";

/// Published value of alpha at which the optimal azimuth reaches 0.
inline constexpr double kPublishedThetaCollapse = 0.056651;
inline constexpr double kPublishedEnvelopeCoefficient = 29.591;

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
  public:
    IoError(const std::string &what, std::filesystem::path path)
        : std::runtime_error(what + ": " + path.string()), path_(std::move(path)) {}
    [[nodiscard]] const std::filesystem::path &path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
};

enum class Format { csv, jsonl };

struct RunConfig {
    std::string subcommand;
    double alpha_min = 0.0;
    double alpha_max = 0.07;
    double alpha_step = 0.001;
    double tol = 1e-10;
    std::uint64_t seed = 1;
    std::filesystem::path out = ".";
    Format format = Format::csv;
    Threads threads{};
    /// Test hook for verify: halves the weight of one element of the optimal POVM.
    bool inject_fault = false;

    void validate() const {
        if (!(alpha_step > 0.0)) throw UsageError("--alpha-step must be positive");
        if (!(alpha_min <= alpha_max)) throw UsageError("--alpha-min must not exceed --alpha-max");
        if (!(tol > 0.0)) throw UsageError("--tol must be positive");
        if (!(alpha_min >= 0.0 && alpha_max <= 1.0)) throw UsageError("alpha range must lie within [0, 1]");
    }

    /// alpha_min, alpha_min + step, ..., up to alpha_max (inclusive within step/1e6).
    [[nodiscard]] std::vector<double> alpha_grid() const {
        validate();
        const auto count = static_cast<std::size_t>(std::floor((alpha_max - alpha_min) / alpha_step + 1e-6)) + 1;
        std::vector<double> grid(count);
        for (std::size_t k = 0; k < count; ++k)
            grid[k] = std::min(alpha_max, alpha_min + alpha_step * static_cast<double>(k));
        return grid;
    }
};

// --------------------------------------------------------------------------
// Number formatting
// --------------------------------------------------------------------------

[[nodiscard]] inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

[[nodiscard]] inline std::string scientific(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// --------------------------------------------------------------------------
// Tables
// --------------------------------------------------------------------------

struct Table {
    std::vector<std::string> preamble;                       ///< comment lines before the header
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;              ///< preformatted numeric fields
    std::vector<std::pair<std::string, std::string>> trailer; ///< summary key/value pairs

    [[nodiscard]] std::string to_csv() const {
        std::string out;
        for (const auto &c : preamble) out += "# " + c + "\n";
        out += join(header, ",") + "\n";
        for (const auto &r : rows) out += join(r, ",") + "\n";
        if (!trailer.empty()) {
            std::vector<std::string> kv;
            for (const auto &[k, v] : trailer) kv.push_back(k + "=" + v);
            out += "# " + join(kv, " ") + "\n";
        }
        return out;
    }

    /// One JSON object per row; numeric fields are emitted verbatim.
    [[nodiscard]] std::string to_jsonl() const {
        std::string out;
        for (const auto &r : rows) {
            std::vector<std::string> fields;
            for (std::size_t i = 0; i < header.size(); ++i) fields.push_back("\"" + header[i] + "\":" + r[i]);
            out += "{" + join(fields, ",") + "}\n";
        }
        if (!trailer.empty()) {
            std::vector<std::string> fields;
            for (const auto &[k, v] : trailer) fields.push_back("\"" + k + "\":" + v);
            out += "{" + join(fields, ",") + "}\n";
        }
        return out;
    }

    [[nodiscard]] std::string render(Format f) const { return f == Format::csv ? to_csv() : to_jsonl(); }

  private:
    static std::string join(const std::vector<std::string> &parts, const char *sep) {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += sep;
            out += parts[i];
        }
        return out;
    }
};

// --------------------------------------------------------------------------
// Cached gamma1
// --------------------------------------------------------------------------

/// Plain-text key = value record holding the computed tangency point.
struct Gamma1Record {
    double gamma1{};
    double tolerance{};
    std::string code_version = kCodeVersion;

    [[nodiscard]] std::string to_text() const {
        char buf[64];
        std::string out = "# lifted-trine cached constants\n";
        std::snprintf(buf, sizeof buf, "%.17g", gamma1);
        out += std::string("gamma1 = ") + buf + "\n";
        std::snprintf(buf, sizeof buf, "%.3g", tolerance);
        out += std::string("gamma1_tolerance = ") + buf + "\n";
        out += "code_version = " + code_version + "\n";
        return out;
    }

    [[nodiscard]] static Gamma1Record parse(const std::string &text) {
        Gamma1Record r;
        bool have_gamma = false;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw UsageError("config: malformed line '" + line + "'");
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            try {
                if (key == "gamma1") {
                    r.gamma1 = std::stod(value);
                    have_gamma = true;
                } else if (key == "gamma1_tolerance") {
                    r.tolerance = std::stod(value);
                } else if (key == "code_version") {
                    r.code_version = value;
                }
            } catch (const std::logic_error &) {
                throw UsageError("config: bad value for '" + key + "'");
            }
        }
        if (!have_gamma || !(r.gamma1 > 0.0 && r.gamma1 < 1.0)) throw UsageError("config: missing or invalid gamma1");
        return r;
    }
};

/// Writes via a temporary sibling and a rename, so readers never see a partial file.
inline void write_atomic(const std::filesystem::path &path, const std::string &content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create output directory", path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open for writing", tmp);
        f << content;
        f.flush();
        if (!f) throw IoError("write failed", tmp);
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place", path);
    }
}

[[nodiscard]] inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading", path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

/// gamma1 from the cache file if present, otherwise computed and cached there.
/// An empty path computes without caching.
[[nodiscard]] inline double load_or_compute_gamma1(const std::filesystem::path &cache, double tol = 1e-9) {
    if (!cache.empty() && std::filesystem::exists(cache)) return Gamma1Record::parse(read_file(cache)).gamma1;
    const Gamma1Record record{find_gamma1(tol), tol};
    if (!cache.empty()) write_atomic(cache, record.to_text());
    return record.gamma1;
}

// --------------------------------------------------------------------------
// Commands
// --------------------------------------------------------------------------

/// Optimal azimuth and information against alpha.
[[nodiscard]] inline Table theta_curve_table(const RunConfig &cfg) {
    const auto grid = cfg.alpha_grid();
    const auto curve = info_curve(grid, cfg.tol, cfg.threads);
    Table t;
    t.header = {"alpha", "theta_opt_rad", "info_bits"};
    for (const auto &p : curve) t.rows.push_back({fixed6(p.alpha_prime), fixed6(p.theta_star), fixed6(p.info_bits)});
    return t;
}

/// symmetric_info on the alpha grid for theta = 0, 3, ..., 30 degrees.
[[nodiscard]] inline Table theta_family_table(const RunConfig &cfg) {
    const auto grid = cfg.alpha_grid();
    constexpr std::size_t kAngles = 11;
    const auto values = parallel_map(
        grid.size() * kAngles,
        [&](std::size_t i) {
            const double deg = 3.0 * static_cast<double>(i % kAngles);
            return symmetric_info(grid[i / kAngles], deg * kPi / 180.0);
        },
        cfg.threads);
    Table t;
    t.header = {"alpha", "theta_deg", "info_bits"};
    for (std::size_t i = 0; i < values.size(); ++i)
        t.rows.push_back({fixed6(grid[i / kAngles]), fixed6(3.0 * static_cast<double>(i % kAngles)), fixed6(values[i])});
    return t;
}

/// V(0) information, best V(theta) information and the accessible information on [0, gamma1].
[[nodiscard]] inline Table envelope_table(const RunConfig &cfg, double gamma1) {
    const auto grid = cfg.alpha_grid();
    if (grid.back() > gamma1 + kBranchPointTol)
        throw UsageError("envelope: alpha range must lie within [0, gamma1 = " + fixed6(gamma1) + "]");
    struct Row {
        double vn0, opt, env;
    };
    const auto rows = parallel_map(
        grid.size(),
        [&](std::size_t i) {
            const double a = grid[i];
            return Row{symmetric_info(a, 0.0), optimal_theta(a, cfg.tol).info_bits,
                       accessible_information(a, gamma1, cfg.tol).info_bits};
        },
        cfg.threads);
    Table t;
    t.header = {"alpha", "info_vn_theta0", "info_opt_theta", "info_envelope"};
    for (std::size_t i = 0; i < grid.size(); ++i)
        t.rows.push_back({fixed6(grid[i]), fixed6(rows[i].vn0), fixed6(rows[i].opt), fixed6(rows[i].env)});
    return t;
}

/// Elements of the optimal measurement at alpha = cfg.alpha_min.
[[nodiscard]] inline Table povm_table(const RunConfig &cfg, double gamma1) {
    cfg.validate();
    const double alpha = cfg.alpha_min;
    const auto sol = optimal_povm(alpha, gamma1);
    const auto povm = assemble_symmetric_povm(sol.povm);
    Table t;
    t.preamble = {"branch: " + std::string(to_string(sol.branch)) + ", alpha = " + fixed6(alpha) +
                      ", gamma1 = " + fixed6(gamma1),
                  "weight convention: p_weight is the weight p of the element's triple; each element is "
                  "p * v v^T with v = (x, y, z), so each weight repeats three times"};
    t.header = {"index", "p_weight", "phi_rad", "theta_rad", "x", "y", "z"};
    std::size_t index = 0;
    for (const auto &triple : sol.povm.triples)
        for (const auto &v : povm_triple_vectors(triple.phi, triple.theta))
            t.rows.push_back({std::to_string(index++), fixed6(triple.p), fixed6(triple.phi), fixed6(triple.theta),
                              fixed6(v.x), fixed6(v.y), fixed6(v.z)});
    t.trailer = {{"completeness_residual", scientific(verify_completeness(povm))},
                 {"info_bits", fixed6(sol.info_bits)}};
    return t;
}

// --------------------------------------------------------------------------
// verify
// --------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    double tolerance{};
    double measured{};
    bool passed{};
};

struct VerifyOutcome {
    std::vector<CheckResult> checks;
    std::string text;

    [[nodiscard]] bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.passed; });
    }
};

/// Oracle-gap threshold at alpha = 0.03 (measured gap is 0.00372 bits).
inline constexpr double kVonNeumannGapThreshold = 0.003;

/// Runs the invariant suite. Random samples derive from cfg.seed; pass/fail is
/// expected to be seed independent.
[[nodiscard]] inline VerifyOutcome run_verify(const RunConfig &cfg, double gamma1) {
    VerifyOutcome out;
    auto check_at_most = [&](std::string name, double tol, double measured) {
        out.checks.push_back({std::move(name), tol, measured, measured <= tol});
    };
    auto check_at_least = [&](std::string name, double threshold, double measured) {
        out.checks.push_back({std::move(name), threshold, measured, measured >= threshold});
    };
    const auto samples = [&](std::uint64_t salt, std::size_t n) {
        return parallel_map(n, [&](std::size_t i) { return stream_seed(cfg.seed ^ salt, i); }, cfg.threads);
    };

    {
        const auto seeds = samples(0x11, 10000);
        const auto r = parallel_map(
            seeds.size(),
            [&](std::size_t i) {
                Rng rng(seeds[i]);
                const double phi = kHalfPi * uniform01(rng);
                return factorization_check(phi, 2.0 * kPi * (uniform01(rng) - 0.5));
            },
            cfg.threads);
        check_at_most("factorization V_b(theta) M(phi) = P_b(phi, theta)", 1e-12, *std::max_element(r.begin(), r.end()));
    }
    {
        double worst = 0.0;
        for (const double a : {0.0, 0.03, kPublishedGamma1, 0.5, 1.0})
            for (int b = 0; b < 3; ++b)
                worst = std::max(worst, max_abs_diff(rotate_z(trine_state(a, b), kThirdTurn), trine_state(a, (b + 1) % 3)));
        check_at_most("trine three-fold symmetry", 1e-12, worst);
    }
    {
        const auto seeds = samples(0x22, 1000);
        const auto r = parallel_map(
            seeds.size(),
            [&](std::size_t i) {
                Rng rng(seeds[i]);
                const double alpha = uniform01(rng);
                const auto t = random_valid_mixture(rng, 2 + i % 2);
                double mass = 0.0, lift = 0.0;
                for (const auto &m : pushforward(alpha, t)) {
                    mass += m.p_prime;
                    lift += m.p_prime * m.alpha_prime;
                }
                return std::max(std::abs(mass - 1.0), std::abs(lift - alpha));
            },
            cfg.threads);
        check_at_most("conservation sum p' = 1, sum p' alpha' = alpha", 1e-10, *std::max_element(r.begin(), r.end()));
    }
    {
        const auto seeds = samples(0x33, 100);
        const auto r = parallel_map(
            seeds.size(),
            [&](std::size_t i) {
                Rng rng(seeds[i]);
                const double alpha = 0.2 * uniform01(rng);
                return two_stage_check(alpha, random_valid_mixture(rng, 1 + i % 3));
            },
            cfg.threads);
        check_at_most("chain rule two-stage decomposition", 1e-10, *std::max_element(r.begin(), r.end()));
    }
    check_at_most("symmetric_info(0, pi/6) = log2 3 - 1", 1e-12,
                  std::abs(symmetric_info(0.0, kPi / 6.0) - (kLog2Three - 1.0)));
    check_at_most("symmetric_info(0, 0) = 1/3", 1e-12, std::abs(symmetric_info(0.0, 0.0) - 1.0 / 3.0));
    check_at_most("theta*(0) = pi/6", 1e-6, std::abs(optimal_theta(0.0, cfg.tol).theta_star - kPi / 6.0));
    const double collapse = theta_zero_crossing();
    check_at_most("theta* collapse at alpha = 0.056651", 5e-5, std::abs(collapse - kPublishedThetaCollapse));
    check_at_most("gamma1 = 0.061367", 5e-5, std::abs(gamma1 - kPublishedGamma1));
    check_at_most("lift-angle coefficient (2 - 3 gamma1) / gamma1 = 29.591", 0.02,
                  std::abs((2.0 - 3.0 * gamma1) / gamma1 - kPublishedEnvelopeCoefficient));

    const double probe = 0.03;
    const auto sol = optimal_povm(probe, gamma1);
    auto povm = assemble_symmetric_povm(sol.povm);
    if (cfg.inject_fault) povm.elements.front().weight *= 0.5;
    const double completeness = verify_completeness(povm);
    check_at_most("completeness of optimal POVM at alpha = 0.03", 1e-10, completeness);
    if (completeness <= kCompletenessTol) {
        const auto ensemble = Ensemble::trines(probe);
        const double direct = general_info(ensemble, povm);
        const double envelope = accessible_information(probe, gamma1, cfg.tol).info_bits;
        check_at_most("envelope = general_info(optimal POVM) at alpha = 0.03", 1e-9, std::abs(direct - envelope));
        check_at_most("Holevo bound respected at alpha = 0.03", 0.0, direct - holevo_bound(ensemble));
        const auto stationarity = local_perturbation_test(probe, povm, 2000, 1e-2, cfg.seed, cfg.threads);
        check_at_most("stationarity of optimal POVM (2000 perturbations)", 1e-9, stationarity.max_improvement);
        const auto vn = best_von_neumann(probe, 24, cfg.seed, cfg.threads);
        check_at_least("von Neumann gap below envelope at alpha = 0.03", kVonNeumannGapThreshold,
                       envelope - vn.best_info_bits);
    }

    std::string text = "ltrine verify (seed " + std::to_string(cfg.seed) + ")\n";
    text += "gamma1 = " + fixed6(gamma1) + " (published: " + fixed6(kPublishedGamma1) + ")\n";
    text += "theta* collapse alpha = " + fixed6(collapse) + " (published: " + fixed6(kPublishedThetaCollapse) + ")\n";
    for (const auto &c : out.checks)
        text += std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name + "  tol=" + scientific(c.tolerance) +
                "  measured=" + scientific(c.measured) + "\n";
    text += out.all_passed() ? "result: all checks passed\n" : "result: FAILED\n";
    out.text = std::move(text);
    return out;
}

} // namespace ltrine
