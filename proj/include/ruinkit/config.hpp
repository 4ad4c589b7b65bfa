#ifndef RUINKIT_CONFIG_HPP
#define RUINKIT_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ruinkit/approx.hpp"

namespace ruinkit {

enum class OracleKind { None, Rational, Talbot, Mc };
enum class GridScale { Linear, Geometric };

/// Flat key-value configuration: `[section]` headers plus `key = value`
/// lines, `#` or `;` comments. Keys are addressed as "section.key".
class KeyValues {
public:
    static KeyValues parse_file(const std::string& path);
    static KeyValues parse_text(const std::string& text, const std::string& origin = "<text>");

    void set(const std::string& dotted_key, const std::string& value);
    /// Apply a --set override of the form section.key=value.
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_number(const std::string& key) const;
    std::optional<double> get_number_opt(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_number_list(const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    GridScale scale = GridScale::Linear;

    std::vector<double> points() const;
};

struct RunConfig {
    RiskModel model;
    GridSpec grid;
    std::vector<Method> methods;
    OracleKind oracle = OracleKind::None;
    bool error_columns = true;
    long long mc_n = 1000000;
    std::uint64_t mc_seed = 1;

    /// Validates method/sigma compatibility and grid invariants.
    static RunConfig from_keyvalues(const KeyValues& kv);
};

ClaimDistribution claims_from_keyvalues(const KeyValues& kv);
RiskModel model_from_keyvalues(const KeyValues& kv);

/// Number formatting used in all CSV output: 9 significant digits.
std::string format_number(double v);

} // namespace ruinkit

#endif
