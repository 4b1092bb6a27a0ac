#include "aim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace aim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

const std::set<std::string> kPolicyNames = {"aim",      "aim_gauss2", "aim_bern2",
                                            "aim_bernk", "thompson",  "ucb_tuned",
                                            "kl_ucb"};

const std::set<std::string> kGlobalKeys = {"family", "k",           "sigma2",     "horizon",
                                           "runs",   "seed",        "means",      "mean_source",
                                           "sobol_count", "checkpoints", "policies"};

struct RawConfig {
    std::map<std::string, std::string> global;                        // key -> value
    std::map<std::string, std::map<std::string, std::string>> sections;  // policy -> key -> value
};

// Flat `key = value` lines with optional `[policy]` sections.
RawConfig parse_lines(std::istream& in, std::vector<std::string>& errors) {
    RawConfig raw;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(lineno) + ": unterminated section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!kPolicyNames.count(section)) {
                errors.push_back("line " + std::to_string(lineno) + ": unknown policy section [" +
                                 section + "]");
                section.clear();
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            if (!kGlobalKeys.count(key)) {
                errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
                continue;
            }
            raw.global[key] = value;
        } else {
            if (key != "c") {
                errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key +
                                 "' in section [" + section + "]");
                continue;
            }
            raw.sections[section][key] = value;
        }
    }
    return raw;
}

bool parse_int64(const std::string& s, std::int64_t& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc{} && p == e;
}

bool parse_uint64(const std::string& s, std::uint64_t& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc{} && p == e;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

PolicyKind resolve_kind(const std::string& name, RewardFamily family, int k,
                        std::vector<std::string>& errors) {
    if (name == "thompson") return PolicyKind::Thompson;
    if (name == "ucb_tuned") {
        if (family != RewardFamily::Gaussian)
            errors.push_back("policy ucb_tuned requires family = gaussian");
        return PolicyKind::UcbTuned;
    }
    if (name == "kl_ucb") {
        if (family != RewardFamily::Bernoulli)
            errors.push_back("policy kl_ucb requires family = bernoulli");
        return PolicyKind::KlUcb;
    }
    if (name == "aim") {
        if (family == RewardFamily::Gaussian) {
            if (k != 2) errors.push_back("policy aim with gaussian rewards requires k = 2");
            return PolicyKind::AimGauss2;
        }
        return k == 2 ? PolicyKind::AimBern2 : PolicyKind::AimBernK;
    }
    if (name == "aim_gauss2") {
        if (family != RewardFamily::Gaussian || k != 2)
            errors.push_back("policy aim_gauss2 requires family = gaussian and k = 2");
        return PolicyKind::AimGauss2;
    }
    if (name == "aim_bern2") {
        if (family != RewardFamily::Bernoulli || k != 2)
            errors.push_back("policy aim_bern2 requires family = bernoulli and k = 2");
        return PolicyKind::AimBern2;
    }
    if (name == "aim_bernk") {
        if (family != RewardFamily::Bernoulli)
            errors.push_back("policy aim_bernk requires family = bernoulli");
        return PolicyKind::AimBernK;
    }
    errors.push_back("unknown policy '" + name + "'");
    return PolicyKind::Thompson;
}

ExperimentConfig build(const RawConfig& raw, const ConfigOverrides& ov) {
    std::vector<std::string> errors;
    ExperimentConfig cfg;

    const auto get = [&](const std::string& key) -> const std::string* {
        auto it = raw.global.find(key);
        return it == raw.global.end() ? nullptr : &it->second;
    };

    if (const std::string* v = get("family")) {
        if (*v == "gaussian")
            cfg.family = RewardFamily::Gaussian;
        else if (*v == "bernoulli")
            cfg.family = RewardFamily::Bernoulli;
        else
            errors.push_back("family must be 'gaussian' or 'bernoulli', got '" + *v + "'");
    }
    if (const std::string* v = get("k")) {
        std::int64_t k;
        if (parse_int64(*v, k) && k >= 1 && k <= 10000)
            cfg.k = static_cast<int>(k);
        else
            errors.push_back("k must be an integer in [1, 10000], got '" + *v + "'");
    }
    if (const std::string* v = get("sigma2")) {
        if (!parse_double(*v, cfg.sigma2) || !(cfg.sigma2 > 0.0))
            errors.push_back("sigma2 must be a positive real, got '" + *v + "'");
    }
    if (const std::string* v = get("horizon")) {
        if (!parse_int64(*v, cfg.horizon) || cfg.horizon < 1)
            errors.push_back("horizon must be a positive integer, got '" + *v + "'");
    } else {
        errors.push_back("missing required key 'horizon'");
    }
    if (const std::string* v = get("runs")) {
        std::int64_t r;
        if (parse_int64(*v, r) && r >= 1)
            cfg.runs = static_cast<int>(r);
        else
            errors.push_back("runs must be >= 1, got '" + *v + "'");
    }
    if (const std::string* v = get("seed")) {
        if (!parse_uint64(*v, cfg.base_seed))
            errors.push_back("seed must be an unsigned integer, got '" + *v + "'");
    }

    if (const std::string* v = get("means")) {
        for (const std::string& tok : split_list(*v)) {
            double m;
            if (parse_double(tok, m))
                cfg.fixed_means.push_back(m);
            else
                errors.push_back("means: '" + tok + "' is not a real number");
        }
    }
    std::string source = cfg.fixed_means.empty() ? "" : "fixed";
    if (const std::string* v = get("mean_source")) source = *v;
    if (source == "fixed" || source.empty()) {
        cfg.mean_source = MeanSource::Fixed;
        if (cfg.fixed_means.empty())
            errors.push_back("fixed mean source requires a 'means' list");
    } else if (source == "sobol") {
        cfg.mean_source = MeanSource::SobolGrid;
        if (const std::string* v = get("sobol_count")) {
            std::int64_t c;
            if (parse_int64(*v, c) && c >= 1)
                cfg.sobol_count = static_cast<int>(c);
            else
                errors.push_back("sobol_count must be >= 1, got '" + *v + "'");
        } else {
            errors.push_back("mean_source = sobol requires 'sobol_count'");
        }
        if (cfg.k != 2) errors.push_back("mean_source = sobol requires k = 2");
    } else if (source == "uniform") {
        cfg.mean_source = MeanSource::Uniform;
    } else {
        errors.push_back("mean_source must be fixed, sobol or uniform, got '" + source + "'");
    }

    if (const std::string* v = get("checkpoints")) {
        if (*v != "geometric") {
            for (const std::string& tok : split_list(*v)) {
                std::int64_t t;
                if (parse_int64(tok, t) && t >= 1)
                    cfg.checkpoints.push_back(t);
                else
                    errors.push_back("checkpoints: '" + tok + "' is not a positive integer");
            }
            std::sort(cfg.checkpoints.begin(), cfg.checkpoints.end());
            cfg.checkpoints.erase(std::unique(cfg.checkpoints.begin(), cfg.checkpoints.end()),
                                  cfg.checkpoints.end());
        }
    }

    std::vector<std::string> policy_names;
    if (ov.policies) {
        policy_names = *ov.policies;
    } else if (const std::string* v = get("policies")) {
        policy_names = split_list(*v);
    }
    if (policy_names.empty()) errors.push_back("no policies requested");

    // Apply overrides before semantic validation so errors reflect the
    // effective configuration.
    if (ov.horizon) cfg.horizon = *ov.horizon;
    if (ov.runs) cfg.runs = *ov.runs;
    if (ov.seed) cfg.base_seed = *ov.seed;

    for (const std::string& name : policy_names) {
        PolicySpec spec;
        spec.name = name;
        spec.kind = resolve_kind(name, cfg.family, cfg.k, errors);
        spec.sigma2 = cfg.sigma2;
        auto sec = raw.sections.find(name);
        if (sec != raw.sections.end()) {
            auto c = sec->second.find("c");
            if (c != sec->second.end()) {
                double cv;
                if (!parse_double(c->second, cv) || !(cv > 0.0)) {
                    errors.push_back("[" + name + "] c must be a positive real");
                } else if (spec.kind == PolicyKind::UcbTuned) {
                    spec.c_ucb = cv;
                } else if (spec.kind == PolicyKind::KlUcb) {
                    spec.c_klucb = cv;
                } else {
                    errors.push_back("[" + name + "] does not accept parameter 'c'");
                }
            }
        }
        cfg.policies.push_back(std::move(spec));
    }
    for (const auto& [name, _] : raw.sections) {
        if (std::find(policy_names.begin(), policy_names.end(), name) == policy_names.end())
            errors.push_back("section [" + name + "] refers to a policy not in 'policies'");
    }

    if (cfg.horizon < cfg.k)
        errors.push_back("horizon (" + std::to_string(cfg.horizon) + ") must be >= k (" +
                         std::to_string(cfg.k) + ")");
    if (cfg.mean_source == MeanSource::Fixed && !cfg.fixed_means.empty() &&
        static_cast<int>(cfg.fixed_means.size()) != cfg.k)
        errors.push_back("means lists " + std::to_string(cfg.fixed_means.size()) +
                         " values but k = " + std::to_string(cfg.k));
    if (cfg.family == RewardFamily::Bernoulli)
        for (double m : cfg.fixed_means)
            if (m < 0.0 || m > 1.0)
                errors.push_back("bernoulli means must lie in [0,1]");
    for (std::int64_t t : cfg.checkpoints)
        if (t > cfg.horizon) errors.push_back("checkpoint " + std::to_string(t) + " exceeds horizon");
    if (!cfg.checkpoints.empty() && cfg.checkpoints.back() != cfg.horizon)
        cfg.checkpoints.push_back(cfg.horizon);

    if (!errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& e : errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
    return cfg;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides) {
    std::istringstream in(text);
    std::vector<std::string> errors;
    RawConfig raw = parse_lines(in, errors);
    if (!errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& e : errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
    return build(raw, overrides);
}

ExperimentConfig parse_config(const std::string& path, const ConfigOverrides& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), overrides);
}

}  // namespace aim
