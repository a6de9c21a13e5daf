#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "supcal/bayes_factors.hpp"
#include "supcal/calibration.hpp"
#include "supcal/coverage.hpp"
#include "supcal/design.hpp"
#include "supcal/intervals.hpp"
#include "supcal/model.hpp"
#include "supcal/numerics.hpp"

namespace supcal::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// formatting: human output carries 2 decimals, machine output full precision

std::string fmt2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    if (std::string(buf) == "-0.00") return "0.00";
    return buf;
}

std::string fmt_sig(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_pct(double level) { return fmt_sig(level * 100.0) + "%"; }

std::string fmt_k(double k) {
    std::string s = "k = " + fmt_sig(k);
    if (k < 1.0 && k > 0.0) s += " (1/" + fmt_sig(1.0 / k) + ")";
    return s;
}

std::string human_interval(const RealInterval& iv) {
    switch (iv.kind()) {
        case RealInterval::Kind::Empty: return "does not exist";
        case RealInterval::Kind::Point: return "{" + fmt2(iv.lower()) + "}";
        case RealInterval::Kind::Bounded:
            return "[" + fmt2(iv.lower()) + ", " + fmt2(iv.upper()) + "]";
        case RealInterval::Kind::WholeLine: return "(-inf, inf)";
    }
    return "";
}

json interval_json(const RealInterval& iv) {
    const char* kind = "empty";
    json lower = nullptr, upper = nullptr;
    switch (iv.kind()) {
        case RealInterval::Kind::Empty: break;
        case RealInterval::Kind::Point:
            kind = "point";
            lower = iv.lower();
            upper = iv.upper();
            break;
        case RealInterval::Kind::Bounded:
            kind = "bounded";
            lower = iv.lower();
            upper = iv.upper();
            break;
        case RealInterval::Kind::WholeLine: kind = "whole_line"; break;
    }
    return json{{"kind", kind}, {"lower", lower}, {"upper", upper}};
}

// ---------------------------------------------------------------------------
// flag/config resolution: command-line flags win over --config file entries

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json cfg = json::parse(in, nullptr, true, true);
    if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    return cfg;
}

const char* config_key(const char* flag) { return flag + 2; }  // strip leading --

std::optional<double> opt_num(const CLI::App& cmd, const json& cfg, const char* flag,
                              double bound) {
    if (cmd.count(flag) > 0) return bound;
    const auto it = cfg.find(config_key(flag));
    if (it != cfg.end() && it->is_number()) return it->get<double>();
    return std::nullopt;
}

std::optional<long> opt_int(const CLI::App& cmd, const json& cfg, const char* flag, long bound) {
    if (cmd.count(flag) > 0) return bound;
    const auto it = cfg.find(config_key(flag));
    if (it != cfg.end() && it->is_number_integer()) return it->get<long>();
    return std::nullopt;
}

std::optional<std::string> opt_str(const CLI::App& cmd, const json& cfg, const char* flag,
                                   const std::string& bound) {
    if (cmd.count(flag) > 0) return bound;
    const auto it = cfg.find(config_key(flag));
    if (it != cfg.end() && it->is_string()) return it->get<std::string>();
    return std::nullopt;
}

bool opt_flag(const CLI::App& cmd, const json& cfg, const char* flag) {
    if (cmd.count(flag) > 0) return true;
    const auto it = cfg.find(config_key(flag));
    return it != cfg.end() && it->is_boolean() && it->get<bool>();
}

// ---------------------------------------------------------------------------
// shared option groups

struct DataOpts {
    double estimate{}, se{}, ci_lower{}, ci_upper{}, ci_level{};
};

void add_data_options(CLI::App* cmd, DataOpts& d) {
    cmd->add_option("--estimate", d.estimate, "parameter estimate");
    cmd->add_option("--se", d.se, "standard error of the estimate");
    cmd->add_option("--ci-lower", d.ci_lower, "lower bound of a reported confidence interval");
    cmd->add_option("--ci-upper", d.ci_upper, "upper bound of a reported confidence interval");
    cmd->add_option("--ci-level", d.ci_level, "level of the reported confidence interval");
}

SummaryData resolve_data(const CLI::App& cmd, const json& cfg, const DataOpts& d) {
    const auto est = opt_num(cmd, cfg, "--estimate", d.estimate);
    const auto se = opt_num(cmd, cfg, "--se", d.se);
    const auto lo = opt_num(cmd, cfg, "--ci-lower", d.ci_lower);
    const auto hi = opt_num(cmd, cfg, "--ci-upper", d.ci_upper);
    const auto lev = opt_num(cmd, cfg, "--ci-level", d.ci_level);
    if (est.has_value() != se.has_value())
        throw std::invalid_argument("--estimate and --se must be given together");
    if (lo.has_value() != hi.has_value() || lo.has_value() != lev.has_value())
        throw std::invalid_argument("--ci-lower, --ci-upper and --ci-level must be given together");
    std::optional<SummaryData> direct;
    if (est) direct = SummaryData(*est, *se);
    std::optional<CiInput> ci;
    if (lo) ci = CiInput{*lo, *hi, *lev};
    std::string warning;
    const SummaryData data = resolve_summary(direct, ci, &warning);
    if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
    return data;
}

struct MethodOpts {
    std::string method;
    double level{}, prior_mean{}, prior_sd{}, prior_scale{};
};

void add_method_options(CLI::App* cmd, MethodOpts& m, const char* level_help) {
    cmd->add_option("--method", m.method,
                    "interval type: ci, si-normal, si-local-normal, si-nonlocal, minsi-all, "
                    "minsi-local-normal, minsi-eplogp");
    cmd->add_option("--level", m.level, level_help);
    cmd->add_option("--si-level", m.level, "alias for --level");
    cmd->add_option("--prior-mean", m.prior_mean, "normal prior mean (si-normal)");
    cmd->add_option("--prior-sd", m.prior_sd, "prior sd (si-normal, si-local-normal)");
    cmd->add_option("--prior-scale", m.prior_scale, "moment prior scale (si-nonlocal)");
}

IntervalMethod make_method(const CLI::App& cmd, const json& cfg, const MethodOpts& m,
                           std::optional<double> level_override = std::nullopt) {
    const auto name = opt_str(cmd, cfg, "--method", m.method);
    if (!name) throw std::invalid_argument("--method is required");
    std::optional<double> level = level_override;
    if (!level) level = opt_num(cmd, cfg, "--level", m.level);
    if (!level && cmd.count("--si-level") > 0) level = m.level;
    if (!level && cfg.contains("si-level") && cfg["si-level"].is_number())
        level = cfg["si-level"].get<double>();
    const auto mean = opt_num(cmd, cfg, "--prior-mean", m.prior_mean);
    const auto sd = opt_num(cmd, cfg, "--prior-sd", m.prior_sd);
    const auto scale = opt_num(cmd, cfg, "--prior-scale", m.prior_scale);
    if (!level) throw std::invalid_argument("--level is required");
    if (*name == "ci") return ConfidenceInterval(*level);
    if (*name == "si-normal") {
        if (!mean || !sd)
            throw std::invalid_argument("si-normal needs --prior-mean and --prior-sd");
        return SupportInterval(*level, NormalPrior(*mean, *sd));
    }
    if (*name == "si-local-normal") {
        if (!sd) throw std::invalid_argument("si-local-normal needs --prior-sd");
        return SupportInterval(*level, LocalNormalPrior(*sd));
    }
    if (*name == "si-nonlocal") {
        if (!scale) throw std::invalid_argument("si-nonlocal needs --prior-scale");
        return SupportInterval(*level, NonlocalMomentPrior(*scale));
    }
    if (*name == "minsi-all") return MinSupportInterval(*level, MinBfFamily::AllPriors);
    if (*name == "minsi-local-normal")
        return MinSupportInterval(*level, MinBfFamily::LocalNormalClass);
    if (*name == "minsi-eplogp") return MinSupportInterval(*level, MinBfFamily::EpLogP);
    throw std::invalid_argument("unknown method: " + *name);
}

std::string method_description(const IntervalMethod& method) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConfidenceInterval>) {
                return "standard normal confidence interval";
            } else if constexpr (std::is_same_v<T, SupportInterval>) {
                return std::visit(
                    [](const auto& p) -> std::string {
                        using P = std::decay_t<decltype(p)>;
                        if constexpr (std::is_same_v<P, NormalPrior>)
                            return "normal prior under the alternative (mean " + fmt2(p.mean) +
                                   ", sd " + fmt2(p.sd) + ")";
                        else if constexpr (std::is_same_v<P, LocalNormalPrior>)
                            return "local normal prior under the alternative (sd " + fmt2(p.sd) +
                                   ")";
                        else
                            return "nonlocal normal moment prior under the alternative (scale " +
                                   fmt2(p.scale) + ")";
                    },
                    m.prior);
            } else {
                switch (m.family) {
                    case MinBfFamily::AllPriors:
                        return "minimum Bayes factor over all priors under the alternative";
                    case MinBfFamily::LocalNormalClass:
                        return "minimum Bayes factor over local normal priors";
                    case MinBfFamily::EpLogP:
                        return "minimum Bayes factor from the -e p log(p) calibration";
                }
                return "";
            }
        },
        method);
}

std::string result_header(const IntervalMethod& method) {
    if (const auto* ci = std::get_if<ConfidenceInterval>(&method))
        return fmt_pct(ci->level) + " Confidence Interval";
    if (const auto* si = std::get_if<SupportInterval>(&method))
        return fmt_k(si->k) + " Support Interval";
    return fmt_k(std::get<MinSupportInterval>(method).k) + " Minimum Support Interval";
}

// Conventional verbal classifications of BF01 = k; annotation only.
std::string evidence_label(double k, const std::string& scheme) {
    if (scheme == "jeffreys") {
        if (k > 100.0) return "decisive";
        if (k >= 30.0) return "very strong";
        if (k >= 10.0) return "strong";
        if (k >= 3.0) return "substantial";
        if (k >= 1.0) return "bare mention";
        return "";
    }
    if (scheme == "royall") {
        if (k > 64.0) return "quite strong indeed";
        if (k >= 32.0) return "quite strong";
        if (k >= 8.0) return "strong";
        if (k >= 4.0) return "weak";
        return "";
    }
    if (scheme == "fisher") {
        if (k > 1.0) return "";
        if (k >= 0.5) return "good";
        if (k >= 0.2) return "fair";
        if (k >= 1.0 / 15.0) return "poor";
        return "open to grave suspicion";
    }
    throw std::invalid_argument("unknown label scheme: " + scheme +
                                " (expected jeffreys, royall or fisher)");
}

double method_level(const IntervalMethod& method) {
    if (const auto* ci = std::get_if<ConfidenceInterval>(&method)) return ci->level;
    if (const auto* si = std::get_if<SupportInterval>(&method)) return si->k;
    return std::get<MinSupportInterval>(method).k;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SUPCAL_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return static_cast<std::uint64_t>(v);
        std::cerr << "warning: ignoring non-numeric SUPCAL_SEED\n";
    }
    return 20240101;
}

// ---------------------------------------------------------------------------
// subcommand handlers

struct CalibrateArgs {
    DataOpts data;
    MethodOpts method;
    std::string label, config;
    bool json_out{false};
};

int run_calibrate(const CLI::App& cmd, const CalibrateArgs& a) {
    const json cfg = cmd.count("--config") ? load_config(a.config) : json::object();
    const SummaryData data = resolve_data(cmd, cfg, a.data);
    const IntervalMethod method = make_method(cmd, cfg, a.method);
    const MultiplierResult mult = multiplier(method, data);
    const RealInterval interval = support_interval(data, method);
    const std::string method_str = opt_str(cmd, cfg, "--method", a.method.method).value();
    const auto label = opt_str(cmd, cfg, "--label", a.label);

    if (a.json_out || opt_flag(cmd, cfg, "--json")) {
        const json out{{"schema_version", kSchemaVersion},
                       {"command", "calibrate"},
                       {"estimate", data.estimate},
                       {"se", data.se},
                       {"method", method_str},
                       {"level", method_level(method)},
                       {"interval", interval_json(interval)},
                       {"multiplier", mult.exists ? json(mult.multiplier) : json(nullptr)}};
        std::cout << out.dump() << "\n";
        if (!mult.exists) {
            std::cerr << "interval does not exist: " << mult.existence_condition << "\n";
            return 3;
        }
        return 0;
    }

    const bool ci_input = cmd.count("--ci-lower") > 0 || cfg.contains("ci-lower");
    if (ci_input) {
        const double lev = opt_num(cmd, cfg, "--ci-level", a.data.ci_level).value();
        std::cout << "Point Estimate [" << fmt_pct(lev) << " Confidence Interval]\n"
                  << fmt2(data.estimate) << " ["
                  << fmt2(opt_num(cmd, cfg, "--ci-lower", a.data.ci_lower).value()) << ", "
                  << fmt2(opt_num(cmd, cfg, "--ci-upper", a.data.ci_upper).value()) << "]\n\n";
    } else {
        std::cout << "Point Estimate (Standard Error)\n"
                  << fmt2(data.estimate) << " (" << fmt2(data.se) << ")\n\n";
    }
    std::cout << "Calibration Method\n" << method_description(method) << "\n\n";
    std::cout << result_header(method) << "\n";
    if (!mult.exists) {
        std::cout << "does not exist (" << mult.existence_condition << ")\n";
        return 3;
    }
    std::cout << human_interval(interval) << "\n";
    if (label) {
        const std::string text = evidence_label(method_level(method), *label);
        if (!text.empty())
            std::cout << "evidence classification (" << *label << "): " << text << "\n";
    }
    return 0;
}

struct MapArgs {
    std::string family, config;
    double ci_level{}, k{};
    bool json_out{false};
};

int run_map(const CLI::App& cmd, const MapArgs& a) {
    const json cfg = cmd.count("--config") ? load_config(a.config) : json::object();
    const auto family_str = opt_str(cmd, cfg, "--family", a.family);
    if (!family_str) throw std::invalid_argument("--family is required");
    MinBfFamily family;
    if (*family_str == "all")
        family = MinBfFamily::AllPriors;
    else if (*family_str == "local-normal")
        family = MinBfFamily::LocalNormalClass;
    else if (*family_str == "eplogp")
        family = MinBfFamily::EpLogP;
    else
        throw std::invalid_argument("unknown family: " + *family_str +
                                    " (expected all, local-normal or eplogp)");
    const auto level_in = opt_num(cmd, cfg, "--ci-level", a.ci_level);
    const auto k_in = opt_num(cmd, cfg, "--k", a.k);
    if (level_in.has_value() == k_in.has_value())
        throw std::invalid_argument("give exactly one of --ci-level or --k");

    const double level = level_in ? *level_in : min_support_to_ci_level(*k_in, family);
    const double k = k_in ? *k_in : ci_level_to_min_support(*level_in, family);

    if (a.json_out || opt_flag(cmd, cfg, "--json")) {
        const json out{{"schema_version", kSchemaVersion},
                       {"command", "map"},
                       {"family", *family_str},
                       {"ci_level", level},
                       {"k", k}};
        std::cout << out.dump() << "\n";
        return 0;
    }
    std::cout << "family: " << *family_str << "\n"
              << "confidence level: " << fmt_pct(level) << "\n"
              << "minimum support level: " << fmt_k(k) << "\n";
    return 0;
}

struct CurveArgs {
    DataOpts data;
    MethodOpts method;
    double from{}, to{}, cut{};
    long points{};
    std::string out_path, format, config;
    bool json_out{false};
};

int run_bf_curve(const CLI::App& cmd, const CurveArgs& a) {
    const json cfg = cmd.count("--config") ? load_config(a.config) : json::object();
    const SummaryData data = resolve_data(cmd, cfg, a.data);
    // the curve height does not depend on the level, so it may be omitted
    const double level = opt_num(cmd, cfg, "--level", a.method.level).value_or(1.0);
    const IntervalMethod method = make_method(cmd, cfg, a.method, level);
    if (std::holds_alternative<ConfidenceInterval>(method))
        throw std::invalid_argument("bf-curve needs a Bayes-factor based method, not ci");
    const auto from = opt_num(cmd, cfg, "--from", a.from);
    const auto to = opt_num(cmd, cfg, "--to", a.to);
    if (!from || !to) throw std::invalid_argument("--from and --to are required");
    const long points = opt_int(cmd, cfg, "--points", a.points).value_or(401);
    if (points < 2 || points > 10'000'000)
        throw std::invalid_argument("--points must be between 2 and 1e7");
    const auto cut = opt_num(cmd, cfg, "--cut", a.cut);
    std::string format = opt_str(cmd, cfg, "--format", a.format).value_or("csv");
    if (a.json_out || opt_flag(cmd, cfg, "--json")) format = "json";
    if (format != "csv" && format != "json")
        throw std::invalid_argument("--format must be csv or json");

    const BfCurve curve = bf_curve(data, method, Bracket{*from, *to}, static_cast<int>(points));

    std::ofstream file;
    const auto out_path = opt_str(cmd, cfg, "--out", a.out_path);
    if (out_path) {
        file.open(*out_path);
        if (!file) throw std::runtime_error("cannot open output file: " + *out_path);
    }
    std::ostream& os = out_path ? static_cast<std::ostream&>(file) : std::cout;

    if (format == "json") {
        json pts = json::array();
        for (const auto& pt : curve.grid) {
            json row{{"theta0", pt.theta0}, {"bf01", pt.bf01}};
            if (cut) row["in_si"] = pt.bf01 >= *cut;
            pts.push_back(std::move(row));
        }
        const json out{{"schema_version", kSchemaVersion},
                       {"command", "bf-curve"},
                       {"method", opt_str(cmd, cfg, "--method", a.method.method).value()},
                       {"level", level},
                       {"from", *from},
                       {"to", *to},
                       {"points", points},
                       {"cut", cut ? json(*cut) : json(nullptr)},
                       {"curve", pts}};
        os << out.dump() << "\n";
        return 0;
    }

    os << "theta0,bf01";
    if (cut) os << ",in_si";
    os << "\n";
    for (const auto& pt : curve.grid) {
        os << fmt17(pt.theta0) << "," << fmt17(pt.bf01);
        if (cut) os << "," << (pt.bf01 >= *cut ? 1 : 0);
        os << "\n";
    }
    return 0;
}

struct DesignArgs {
    double k{}, unit_var{}, width{}, anticipated{};
    MethodOpts prior;  // reuses the prior flags; method/level unused
    std::string config;
    bool jeffreys{false}, exact{false}, json_out{false};
};

int run_design(const CLI::App& cmd, const DesignArgs& a) {
    const json cfg = cmd.count("--config") ? load_config(a.config) : json::object();
    const auto k = opt_num(cmd, cfg, "--k", a.k);
    if (!k) throw std::invalid_argument("--k is required");
    if (!(*k > 1.0)) throw std::invalid_argument("design requires a support level k > 1");
    const double unit_var = opt_num(cmd, cfg, "--unit-var", a.unit_var).value_or(1.0);

    const auto mean = opt_num(cmd, cfg, "--prior-mean", a.prior.prior_mean);
    const auto sd = opt_num(cmd, cfg, "--prior-sd", a.prior.prior_sd);
    const auto scale = opt_num(cmd, cfg, "--prior-scale", a.prior.prior_scale);
    const bool jeffreys = a.jeffreys || opt_flag(cmd, cfg, "--jeffreys");
    DesignPrior prior = JeffreysApprox{};
    std::string prior_name = "jeffreys";
    if (mean && sd) {
        prior = NormalPrior(*mean, *sd);
        prior_name = "normal";
    } else if (sd) {
        prior = LocalNormalPrior(*sd);
        prior_name = "local-normal";
    } else if (scale) {
        prior = NonlocalMomentPrior(*scale);
        prior_name = "nonlocal";
    } else if (!jeffreys) {
        throw std::invalid_argument("give --jeffreys or prior flags (--prior-mean with "
                                    "--prior-sd, --prior-sd alone, or --prior-scale)");
    }

    DesignSpec spec(*k, unit_var, prior);
    const auto anticipated = opt_num(cmd, cfg, "--anticipated-estimate", a.anticipated);
    if (anticipated) spec.anticipated_estimate = *anticipated;
    const auto width = opt_num(cmd, cfg, "--width", a.width);
    if (width) spec.target_width = *width;
    spec.exact_width = a.exact || opt_flag(cmd, cfg, "--exact");

    const DesignResult result = design(spec);
    const bool infeasible = result.width_requested && !result.n_width.has_value();

    if (a.json_out || opt_flag(cmd, cfg, "--json")) {
        json width_obj = nullptr;
        if (result.width_requested) {
            width_obj = json{{"requested", *width}, {"feasible", result.n_width.has_value()}};
            if (result.n_width) {
                width_obj["n1"] = result.n_width->first;
                width_obj["n2"] = result.n_width->second;
            }
        }
        const json out{{"schema_version", kSchemaVersion}, {"command", "design"},
                       {"k", *k},                          {"unit_var", unit_var},
                       {"prior", prior_name},              {"n_exists", result.n_exists},
                       {"any_n", result.any_n},            {"width", width_obj}};
        std::cout << out.dump() << "\n";
        return infeasible ? 3 : 0;
    }

    std::cout << "target support level: " << fmt_k(*k) << " (" << prior_name << " prior)\n";
    std::cout << "smallest n for the support interval to exist: " << result.n_exists << "\n";
    if (result.width_requested) {
        if (result.n_width) {
            std::cout << "sample sizes giving width " << fmt_sig(*width)
                      << ": n1 = " << result.n_width->first
                      << ", n2 = " << result.n_width->second << "\n"
                      << "(both reach the target width; the larger n also admits intervals at "
                         "support levels above k)\n";
        } else {
            std::cout << "target width " << fmt_sig(*width) << ": INFEASIBLE";
            if (prior_name == "jeffreys") {
                const double l_max = 2.0 * std::sqrt(unit_var) / (*k * kSqrtE);
                std::cout << " (requires k^2 l^2 / (4 lambda^2) <= 1/e, i.e. width <= "
                          << fmt_sig(l_max) << ")";
            }
            std::cout << "\n";
        }
    }
    return infeasible ? 3 : 0;
}

struct SimArgs {
    double true_theta{}, unit_var{}, k{};
    MethodOpts method;
    std::string regime, config;
    long n{}, max_looks{}, reps{};
    std::vector<long> looks;
    std::uint64_t seed{};
    bool json_out{false};
};

int run_simulate(const CLI::App& cmd, const SimArgs& a) {
    const json cfg = cmd.count("--config") ? load_config(a.config) : json::object();
    const auto true_theta = opt_num(cmd, cfg, "--true-theta", a.true_theta);
    if (!true_theta) throw std::invalid_argument("--true-theta is required");
    const double unit_var = opt_num(cmd, cfg, "--unit-var", a.unit_var).value_or(1.0);
    const auto k = opt_num(cmd, cfg, "--k", a.k);
    if (!k) throw std::invalid_argument("--k is required");
    const IntervalMethod method = make_method(cmd, cfg, a.method, *k);

    const std::string regime_str = opt_str(cmd, cfg, "--regime", a.regime).value_or("fixed");
    StoppingRegime regime = FixedN{0};
    std::string regime_desc;
    if (regime_str == "fixed") {
        const auto n = opt_int(cmd, cfg, "--n", a.n);
        if (!n) throw std::invalid_argument("fixed regime needs --n");
        regime = FixedN{*n};
        regime_desc = "fixed n = " + std::to_string(*n);
    } else if (regime_str == "sequential") {
        std::vector<long> looks = a.looks;
        if (cmd.count("--looks") == 0 && cfg.contains("looks") && cfg["looks"].is_array())
            looks = cfg["looks"].get<std::vector<long>>();
        const auto max_looks = opt_int(cmd, cfg, "--max-looks", a.max_looks);
        if (looks.empty() && !max_looks)
            throw std::invalid_argument("sequential regime needs --max-looks or --looks");
        const long horizon = looks.empty() ? *max_looks : looks.back();
        regime = OptionalStopping{horizon, looks};
        regime_desc = looks.empty()
                          ? "sequential, looks at every n = 1.." + std::to_string(horizon)
                          : "sequential, " + std::to_string(looks.size()) + " scheduled looks";
    } else {
        throw std::invalid_argument("--regime must be fixed or sequential");
    }

    const long reps = opt_int(cmd, cfg, "--reps", a.reps).value_or(10000);
    std::uint64_t seed = default_seed();
    if (cmd.count("--seed") > 0)
        seed = a.seed;
    else if (cfg.contains("seed") && cfg["seed"].is_number_integer())
        seed = cfg["seed"].get<std::uint64_t>();

    const SimConfig config{*true_theta, unit_var, method, regime, reps, seed};
    const SimResult result = simulate_coverage(config);
    const double bound = 1.0 - *k;
    const bool pass = result.coverage_estimate >= bound - 3.0 * result.mc_stderr;

    if (a.json_out || opt_flag(cmd, cfg, "--json")) {
        const json out{{"schema_version", kSchemaVersion},
                       {"command", "simulate"},
                       {"true_theta", *true_theta},
                       {"unit_var", unit_var},
                       {"method", opt_str(cmd, cfg, "--method", a.method.method).value()},
                       {"k", *k},
                       {"regime", regime_str},
                       {"replications", reps},
                       {"seed", seed},
                       {"coverage_estimate", result.coverage_estimate},
                       {"mc_stderr", result.mc_stderr},
                       {"stop_fraction", result.stop_fraction},
                       {"per_look_counts", result.per_look_counts},
                       {"pass", pass}};
        std::cout << out.dump() << "\n";
        return 0;
    }

    std::cout << "method: " << method_description(method) << ", " << fmt_k(*k) << "\n"
              << "regime: " << regime_desc << "\n"
              << "replications: " << reps << " (seed " << seed << ")\n"
              << "coverage of the true value: " << fmt2(100.0 * result.coverage_estimate)
              << "% (mc stderr " << fmt_sig(result.mc_stderr) << ")\n"
              << "stop fraction (Bayes factor below k): "
              << fmt2(100.0 * result.stop_fraction) << "%\n"
              << "coverage bound 1 - k = " << fmt_pct(bound) << ": " << (pass ? "PASS" : "FAIL")
              << "\n";
    return 0;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"evidence-based support intervals and confidence interval calibration "
                 "from an estimate and standard error"};
    app.require_subcommand(1);

    CalibrateArgs cal;
    CLI::App* cal_cmd = app.add_subcommand(
        "calibrate", "compute a confidence, support, or minimum support interval");
    add_data_options(cal_cmd, cal.data);
    add_method_options(cal_cmd, cal.method,
                       "support level k, or confidence level for --method ci");
    cal_cmd->add_option("--label", cal.label, "annotate k: jeffreys, royall, or fisher");
    cal_cmd->add_option("--config", cal.config, "JSON job file; flags win on conflict");
    cal_cmd->add_flag("--json", cal.json_out, "machine-readable output");

    MapArgs map;
    CLI::App* map_cmd =
        app.add_subcommand("map", "map between confidence levels and minimum support levels");
    map_cmd->add_option("--family", map.family, "minimum BF family: all, local-normal, eplogp");
    map_cmd->add_option("--ci-level", map.ci_level, "confidence level to convert");
    map_cmd->add_option("--k", map.k, "minimum support level to convert");
    map_cmd->add_option("--config", map.config, "JSON job file; flags win on conflict");
    map_cmd->add_flag("--json", map.json_out, "machine-readable output");

    CurveArgs curve;
    CLI::App* curve_cmd = app.add_subcommand(
        "bf-curve", "tabulate the Bayes factor as a function of the null value");
    add_data_options(curve_cmd, curve.data);
    add_method_options(curve_cmd, curve.method, "support level k (optional for the curve)");
    curve_cmd->add_option("--from", curve.from, "lower end of the null value grid");
    curve_cmd->add_option("--to", curve.to, "upper end of the null value grid");
    curve_cmd->add_option("--points", curve.points, "grid points (default 401)");
    curve_cmd->add_option("--cut", curve.cut, "also flag membership in the k = CUT support set");
    curve_cmd->add_option("--out", curve.out_path, "write to this file instead of stdout");
    curve_cmd->add_option("--format", curve.format, "csv (default) or json");
    curve_cmd->add_option("--config", curve.config, "JSON job file; flags win on conflict");
    curve_cmd->add_flag("--json", curve.json_out, "shorthand for --format json");

    DesignArgs des;
    CLI::App* des_cmd =
        app.add_subcommand("design", "sample size so a future k support interval exists");
    des_cmd->add_option("--k", des.k, "target support level (> 1)");
    des_cmd->add_option("--unit-var", des.unit_var, "variance of one effective observation");
    des_cmd->add_flag("--jeffreys", des.jeffreys, "default prior centered at the future estimate");
    des_cmd->add_option("--prior-mean", des.prior.prior_mean, "normal prior mean");
    des_cmd->add_option("--prior-sd", des.prior.prior_sd, "normal or local normal prior sd");
    des_cmd->add_option("--prior-scale", des.prior.prior_scale, "nonlocal moment prior scale");
    des_cmd->add_option("--anticipated-estimate", des.anticipated,
                        "planning value for the future estimate (defaults to the prior mean)");
    des_cmd->add_option("--width", des.width, "target interval width");
    des_cmd->add_flag("--exact", des.exact, "solve the width equation with log(1+n)");
    des_cmd->add_option("--config", des.config, "JSON job file; flags win on conflict");
    des_cmd->add_flag("--json", des.json_out, "machine-readable output");

    SimArgs sim;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "Monte Carlo check of support interval coverage and the universal bound");
    sim_cmd->add_option("--true-theta", sim.true_theta, "true parameter value");
    sim_cmd->add_option("--unit-var", sim.unit_var, "variance of one observation");
    add_method_options(sim_cmd, sim.method, "ignored; pass --k instead");
    sim_cmd->add_option("--k", sim.k, "support level (< 1)");
    sim_cmd->add_option("--regime", sim.regime, "fixed or sequential");
    sim_cmd->add_option("--n", sim.n, "sample size for the fixed regime");
    sim_cmd->add_option("--max-looks", sim.max_looks,
                        "sequential: look after every observation up to this n");
    sim_cmd->add_option("--looks", sim.looks, "sequential: explicit look schedule")
        ->delimiter(',');
    sim_cmd->add_option("--reps", sim.reps, "Monte Carlo replications (default 10000)");
    sim_cmd->add_option("--seed", sim.seed, "RNG seed (default: SUPCAL_SEED env or 20240101)");
    sim_cmd->add_option("--config", sim.config, "JSON job file; flags win on conflict");
    sim_cmd->add_flag("--json", sim.json_out, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cal_cmd->parsed()) return run_calibrate(*cal_cmd, cal);
        if (map_cmd->parsed()) return run_map(*map_cmd, map);
        if (curve_cmd->parsed()) return run_bf_curve(*curve_cmd, curve);
        if (des_cmd->parsed()) return run_design(*des_cmd, des);
        if (sim_cmd->parsed()) return run_simulate(*sim_cmd, sim);
    } catch (const MappingUndefinedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {  // includes the unsupported-* errors
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace supcal::cli
