#include "ruinkit/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ruinkit {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

// numbers may be plain decimals or simple fractions like 2/5
double parse_number(const std::string& raw, const std::string& key) {
    std::string s = trim(raw);
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            double a = std::stod(s.substr(0, slash));
            double b = std::stod(s.substr(slash + 1));
            if (b == 0.0) throw std::invalid_argument("zero denominator");
            return a / b;
        }
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse number '" + raw + "' for key " + key);
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

KeyValues KeyValues::parse_text(const std::string& text, const std::string& origin) {
    KeyValues kv;
    std::stringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (key.find('.') == std::string::npos && !section.empty()) key = section + "." + key;
        kv.kv_[lower(key)] = value;
    }
    return kv;
}

KeyValues KeyValues::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_text(ss.str(), path);
}

void KeyValues::set(const std::string& key, const std::string& value) {
    kv_[lower(key)] = value;
}

void KeyValues::apply_override(const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

bool KeyValues::has(const std::string& key) const { return kv_.count(lower(key)) > 0; }

std::string KeyValues::get_string(const std::string& key) const {
    auto it = kv_.find(lower(key));
    if (it == kv_.end()) throw ConfigError("config: missing key " + key);
    return it->second;
}

std::string KeyValues::get_string(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(lower(key));
    return it == kv_.end() ? fallback : it->second;
}

double KeyValues::get_number(const std::string& key) const {
    return parse_number(get_string(key), key);
}

std::optional<double> KeyValues::get_number_opt(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return parse_number(get_string(key), key);
}

long long KeyValues::get_int(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    double v = get_number(key);
    if (v != std::floor(v)) throw ConfigError("config: key " + key + " must be an integer");
    return static_cast<long long>(v);
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    std::string v = lower(get_string(key));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: key " + key + " must be a boolean");
}

std::vector<double> KeyValues::get_number_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(get_string(key))) out.push_back(parse_number(item, key));
    return out;
}

std::vector<std::string> KeyValues::get_string_list(const std::string& key) const {
    return split_list(get_string(key));
}

std::vector<double> GridSpec::points() const {
    if (count < 2) throw ConfigError("grid: count must be >= 2");
    std::vector<double> xs(count);
    if (scale == GridScale::Linear) {
        for (int i = 0; i < count; ++i)
            xs[i] = min + (max - min) * static_cast<double>(i) / (count - 1);
    } else {
        if (!(min > 0.0)) throw ConfigError("grid: geometric scale requires min > 0");
        const double ratio = std::pow(max / min, 1.0 / (count - 1));
        for (int i = 0; i < count; ++i) xs[i] = min * std::pow(ratio, i);
    }
    return xs;
}

ClaimDistribution claims_from_keyvalues(const KeyValues& kv) {
    const std::string type = lower(kv.get_string("claims.type"));
    if (type == "exponential")
        return ClaimDistribution(Exponential{kv.get_number("claims.rate")});
    if (type == "hyperexponential")
        return ClaimDistribution(HyperExponential{kv.get_number_list("claims.weights"),
                                                  kv.get_number_list("claims.rates")});
    if (type == "gamma")
        return ClaimDistribution(
            GammaClaims{kv.get_number("claims.alpha"), kv.get_number("claims.beta")});
    if (type == "uniform")
        return ClaimDistribution(
            UniformInterval{kv.get_number("claims.a"), kv.get_number("claims.b")});
    if (type == "erlang")
        return ClaimDistribution(ErlangClaims{static_cast<int>(kv.get_int("claims.shape", 1)),
                                              kv.get_number("claims.rate")});
    if (type == "moments")
        return ClaimDistribution(MomentsOnly{kv.get_number_list("claims.m")});
    throw ConfigError("config: unknown claims.type '" + type + "'");
}

RiskModel model_from_keyvalues(const KeyValues& kv) {
    ClaimDistribution claims = claims_from_keyvalues(kv);
    const double lambda = kv.get_number("model.lambda");
    const double sigma = kv.get_number_opt("model.sigma").value_or(0.0);
    const bool has_c = kv.has("model.c");
    const bool has_theta = kv.has("model.theta");
    if (has_c == has_theta)
        throw ConfigError("config: exactly one of model.c and model.theta is required");
    try {
        if (has_c) return RiskModel(lambda, kv.get_number("model.c"), sigma, std::move(claims));
        return RiskModel::from_loading(lambda, kv.get_number("model.theta"), sigma,
                                       std::move(claims));
    } catch (const Error& e) {
        throw ConfigError(std::string("config: invalid model: ") + e.what());
    }
}

RunConfig RunConfig::from_keyvalues(const KeyValues& kv) {
    RiskModel model = model_from_keyvalues(kv);

    GridSpec grid;
    grid.min = kv.get_number_opt("grid.min").value_or(0.0);
    grid.max = kv.get_number("grid.max");
    grid.count = static_cast<int>(kv.get_int("grid.count", 11));
    const std::string scale = lower(kv.get_string("grid.scale", "linear"));
    if (scale == "linear")
        grid.scale = GridScale::Linear;
    else if (scale == "geometric")
        grid.scale = GridScale::Geometric;
    else
        throw ConfigError("config: grid.scale must be linear or geometric");
    if (grid.count < 2) throw ConfigError("config: grid.count must be >= 2");
    grid.points();  // validate

    std::vector<Method> methods;
    if (kv.has("run.methods")) {
        for (const auto& name : kv.get_string_list("run.methods")) {
            auto m = method_from_name(lower(name));
            if (!m) throw ConfigError("config: unknown method '" + name + "'");
            if (method_is_perturbed(*m) != model.perturbed())
                throw ConfigError("config: method '" + name + "' incompatible with sigma = " +
                                  format_number(model.sigma()));
            methods.push_back(*m);
        }
    } else if (model.perturbed()) {
        methods = {Method::Perturbed2M, Method::Perturbed1M};
    } else {
        methods = {Method::Renyi, Method::DeVylder, Method::RamsayPade12,
                   Method::TwoPointRamsay};
    }
    if (methods.empty()) throw ConfigError("config: run.methods must be nonempty");

    OracleKind oracle = OracleKind::None;
    const std::string okind = lower(kv.get_string("run.oracle", "none"));
    if (okind == "none")
        oracle = OracleKind::None;
    else if (okind == "rational")
        oracle = OracleKind::Rational;
    else if (okind == "talbot")
        oracle = OracleKind::Talbot;
    else if (okind == "mc")
        oracle = OracleKind::Mc;
    else
        throw ConfigError("config: run.oracle must be none|rational|talbot|mc");

    std::uint64_t seed = 1;
    if (const char* env = std::getenv("RUINKIT_SEED")) seed = std::strtoull(env, nullptr, 10);
    seed = static_cast<std::uint64_t>(kv.get_int("run.mc_seed", static_cast<long long>(seed)));

    RunConfig cfg{std::move(model), grid, std::move(methods), oracle,
                  kv.get_bool("run.errors", true), kv.get_int("run.mc_n", 1000000), seed};
    if (cfg.mc_n < 10000) throw ConfigError("config: run.mc_n must be at least 1e4");
    return cfg;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace ruinkit
