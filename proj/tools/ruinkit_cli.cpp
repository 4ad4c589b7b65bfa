#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ruinkit/commands.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string format = "csv";
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "configuration file (key = value sections)")
        ->required();
    sub->add_option("--set", opts.overrides, "override a key, e.g. --set model.theta=0.2");
    sub->add_option("--out", opts.out_path, "output path (default: stdout)");
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv"}));
}

int dispatch(const std::string& name, const CommonOpts& opts) {
    ruinkit::KeyValues kv = ruinkit::KeyValues::parse_file(opts.config_path);
    for (const auto& ov : opts.overrides) kv.apply_override(ov);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path, std::ios::binary);
        if (!file) throw ruinkit::ConfigError("cannot open output file " + opts.out_path);
        out = &file;
    }

    if (name == "moments") return ruinkit::cmd_moments(kv, *out, std::cerr);
    if (name == "jt") return ruinkit::cmd_jt(kv, *out, std::cerr);
    if (name == "check") return ruinkit::cmd_check(kv, *out, std::cerr);

    ruinkit::RunConfig cfg = ruinkit::RunConfig::from_keyvalues(kv);
    if (name == "approx") return ruinkit::cmd_approx(cfg, *out, std::cerr);
    if (name == "exact") return ruinkit::cmd_exact(cfg, *out, std::cerr);
    if (name == "perturbed") return ruinkit::cmd_perturbed(cfg, *out, std::cerr);
    throw ruinkit::Error("unknown subcommand " + name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ruinkit: ruin probabilities for the (perturbed) Cramer-Lundberg model"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"approx", "exact", "perturbed", "jt", "moments",
                                            "check"};
    const std::vector<std::string> descriptions = {
        "evaluate approximation methods on a grid, CSV output",
        "exact/oracle ruin probabilities on a grid, CSV output",
        "perturbed-model approximations with creeping/jump components, CSV output",
        "Johnson-Taaffe indices, fits and admissibility report",
        "model moments, aggregate-loss moments and adjustment coefficient",
        "admissibility check of a mixture or of configured methods"};

    std::vector<CommonOpts> opts(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        add_common(app.add_subcommand(names[i], descriptions[i]), opts[i]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < names.size(); ++i) {
        if (app.get_subcommand(names[i])->parsed()) {
            try {
                return dispatch(names[i], opts[i]);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
    }
    return 1;
}
