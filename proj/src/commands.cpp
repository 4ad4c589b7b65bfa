#include "ruinkit/commands.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "ruinkit/admiss.hpp"
#include "ruinkit/jtfit.hpp"
#include "ruinkit/oracle.hpp"

namespace ruinkit {

namespace {

struct Column {
    std::string name;
    std::vector<std::optional<double>> cells;
    bool full() const {
        for (const auto& c : cells)
            if (!c) return false;
        return true;
    }
};

void write_csv(std::ostream& out, const std::vector<double>& xs,
               const std::vector<Column>& cols) {
    out << "x";
    for (const auto& c : cols) out << "," << c.name;
    out << "\r\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << format_number(xs[i]);
        for (const auto& c : cols) {
            out << ",";
            if (c.cells[i]) out << format_number(*c.cells[i]);
        }
        out << "\r\n";
    }
}

/// Exact column per the configured oracle; empty when oracle == None.
std::optional<Column> exact_column(const RunConfig& cfg, const std::vector<double>& xs,
                                   std::ostream& err) {
    if (cfg.oracle == OracleKind::None) return std::nullopt;
    Column col{"exact", std::vector<std::optional<double>>(xs.size())};
    try {
        switch (cfg.oracle) {
            case OracleKind::Rational: {
                ExpPolyMixture exact = exact_ruin_rational(cfg.model);
                for (std::size_t i = 0; i < xs.size(); ++i) col.cells[i] = exact.value(xs[i]);
                break;
            }
            case OracleKind::Talbot: {
                for (std::size_t i = 0; i < xs.size(); ++i)
                    col.cells[i] = xs[i] == 0.0
                                       ? (cfg.model.perturbed() ? 1.0 : cfg.model.rho())
                                       : talbot_ruin(cfg.model, xs[i]);
                break;
            }
            case OracleKind::Mc: {
                McEstimate est = mc_aggregate_loss(cfg.model, xs, cfg.mc_n, cfg.mc_seed);
                for (std::size_t i = 0; i < xs.size(); ++i) col.cells[i] = est.psi_hat[i];
                break;
            }
            case OracleKind::None:
                break;
        }
    } catch (const Error& e) {
        err << "oracle failed: " << e.what() << "\n";
    }
    return col;
}

} // namespace

int cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<double> xs = cfg.grid.points();
    std::vector<Column> cols;
    std::vector<std::size_t> method_cols;
    for (Method m : cfg.methods) {
        Column col{method_name(m), std::vector<std::optional<double>>(xs.size())};
        try {
            RuinApprox ap = run_method(cfg.model, m);
            for (std::size_t i = 0; i < xs.size(); ++i) col.cells[i] = ap.psi(xs[i]);
        } catch (const Error& e) {
            err << "method " << method_name(m) << " failed: " << e.what() << "\n";
        }
        method_cols.push_back(cols.size());
        cols.push_back(std::move(col));
    }
    auto exact = exact_column(cfg, xs, err);
    if (exact) {
        cols.push_back(*exact);
        if (cfg.error_columns) {
            for (std::size_t mi : method_cols) {
                Column ec{"relerr_" + cols[mi].name,
                          std::vector<std::optional<double>>(xs.size())};
                for (std::size_t i = 0; i < xs.size(); ++i)
                    if (cols[mi].cells[i] && exact->cells[i] && *exact->cells[i] != 0.0)
                        ec.cells[i] =
                            std::abs(*cols[mi].cells[i] - *exact->cells[i]) / *exact->cells[i];
                cols.push_back(std::move(ec));
            }
        }
    }
    write_csv(out, xs, cols);
    for (const auto& c : cols)
        if (!c.full()) return 1;
    return 0;
}

int cmd_exact(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<double> xs = cfg.grid.points();
    std::vector<Column> cols;
    OracleKind kind = cfg.oracle == OracleKind::None ? OracleKind::Rational : cfg.oracle;
    RunConfig local = cfg;
    local.oracle = kind;
    auto exact = exact_column(local, xs, err);
    cols.push_back(*exact);
    if (kind == OracleKind::Mc) {
        McEstimate est = mc_aggregate_loss(cfg.model, xs, cfg.mc_n, cfg.mc_seed);
        Column hw{"half_width_95", std::vector<std::optional<double>>(xs.size())};
        for (std::size_t i = 0; i < xs.size(); ++i) hw.cells[i] = est.half_width_95[i];
        cols.push_back(std::move(hw));
    }
    write_csv(out, xs, cols);
    for (const auto& c : cols)
        if (!c.full()) return 1;
    return 0;
}

int cmd_perturbed(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.model.perturbed())
        throw NotPerturbed("perturbed: requires sigma > 0");
    const std::vector<double> xs = cfg.grid.points();
    std::vector<Column> cols;
    bool ok = true;
    for (Method m : {Method::Perturbed2M, Method::Perturbed1M}) {
        try {
            RuinApprox ap = run_method(cfg.model, m);
            Column total{method_name(m), std::vector<std::optional<double>>(xs.size())};
            Column cd{method_name(m) + "_d", std::vector<std::optional<double>>(xs.size())};
            Column cj{method_name(m) + "_j", std::vector<std::optional<double>>(xs.size())};
            for (std::size_t i = 0; i < xs.size(); ++i) {
                total.cells[i] = ap.psi(xs[i]);
                cd.cells[i] = ap.components->first.value(xs[i]);
                cj.cells[i] = ap.components->second.value(xs[i]);
            }
            cols.push_back(std::move(total));
            cols.push_back(std::move(cd));
            cols.push_back(std::move(cj));
        } catch (const Error& e) {
            err << "method " << method_name(m) << " failed: " << e.what() << "\n";
            ok = false;
        }
    }
    auto exact = exact_column(cfg, xs, err);
    if (exact) cols.push_back(*exact);
    write_csv(out, xs, cols);
    for (const auto& c : cols)
        if (!c.full()) ok = false;
    return ok ? 0 : 1;
}

int cmd_moments(const KeyValues& kv, std::ostream& out, std::ostream& err) {
    try {
        RiskModel model = model_from_keyvalues(kv);
        const int K = static_cast<int>(kv.get_int("moments.order", 4));
        out << "model: lambda=" << format_number(model.lambda())
            << " c=" << format_number(model.premium())
            << " sigma=" << format_number(model.sigma()) << " claims=" << model.claims().label()
            << "\n";
        out << "p=" << format_number(model.profit_rate())
            << " theta=" << format_number(model.loading()) << " rho=" << format_number(model.rho())
            << " kappa2=" << format_number(model.kappa2()) << "\n";
        out << "claim moments:";
        for (int k = 1; k <= K && k <= model.claims().max_moment_order(); ++k)
            out << " m" << k << "=" << format_number(model.claims().raw_moment(k));
        out << "\n";
        try {
            auto mt = model.claims().equilibrium_moments(K - 1);
            out << "equilibrium moments:";
            for (int k = 1; k < K; ++k) out << " mt" << k << "=" << format_number(mt[k - 1]);
            out << "\n";
        } catch (const MomentUnavailable&) {
        }
        try {
            auto agg = model.aggregate_loss_moments(std::min(K, 4));
            out << "aggregate loss (factorially reduced):";
            for (std::size_t k = 0; k < agg.lam.size(); ++k)
                out << " lambda" << k + 1 << "=" << format_number(agg.lam[k]);
            out << "\n";
        } catch (const Error& e) {
            err << "aggregate moments unavailable: " << e.what() << "\n";
        }
        try {
            out << "adjustment coefficient: " << format_number(model.adjustment_coefficient())
                << "\n";
        } catch (const Error& e) {
            out << "adjustment coefficient: n/a (" << e.what() << ")\n";
        }
        return 0;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cmd_jt(const KeyValues& kv, std::ostream& out, std::ostream& err) {
    int rc = 0;
    ClaimDistribution claims = claims_from_keyvalues(kv);
    auto report_fit = [&](const char* label, const std::vector<double>& m) {
        try {
            out << label << " moments: m1=" << format_number(m[0])
                << " m2=" << format_number(m[1]) << " m3=" << format_number(m[2]) << "\n";
            out << label << " JT index (degree 3): " << jt_index_3(m) << "\n";
            ErlangMixtureFit fit = jt_fit3(m);
            out << label << " fit: order=" << fit.order;
            for (const auto& c : fit.components)
                out << " (w=" << format_number(c.weight)
                    << ", x=" << format_number(c.stage_mean) << ")";
            out << "\n";
            double horizon = 0.0, dmin = 0.0;
            for (const auto& c : fit.components)
                horizon = std::max(horizon, 20.0 * c.stage_mean * static_cast<double>(fit.order));
            for (int i = 0; i <= 2000; ++i)
                dmin = std::min(dmin, fit.density_at(horizon * i / 2000.0));
            out << label << " fit density nonnegative: " << (dmin >= -1e-12 ? "yes" : "no")
                << "\n";
            return std::optional<ErlangMixtureFit>(fit);
        } catch (const Error& e) {
            err << label << " fit failed: " << e.what() << "\n";
            rc = 1;
            return std::optional<ErlangMixtureFit>();
        }
    };

    std::vector<double> mc = {claims.raw_moment(1), claims.raw_moment(2), claims.raw_moment(3)};
    report_fit("claims", mc);

    const bool has_model = kv.has("model.lambda") && (kv.has("model.theta") || kv.has("model.c"));
    if (claims.max_moment_order() >= 4) {
        auto mt = claims.equilibrium_moments(3);
        report_fit("equilibrium", mt);
    }
    if (has_model) {
        try {
            RiskModel model = model_from_keyvalues(kv);
            IndexReport rep = compare_indices(model);
            out << "J(L) = " << format_number(rep.partial_J_aggregate)
                << ", J(L_i) = " << format_number(rep.partial_J_equilibrium)
                << ", nu(L) = " << format_number(rep.nu_L)
                << ", nu(L_i) = " << format_number(rep.nu_Li) << "\n";
            out << "verdict: " << rep.verdict << "\n";
            if (rep.case_b_order)
                out << "case (b) order n=" << *rep.case_b_order
                    << " thresholds x1=" << format_number(rep.case_b_x1)
                    << " x2=" << format_number(rep.case_b_x2) << "\n";
            out << "case (c) Erlang order bound: " << format_number(rep.case_c_bound) << "\n";
            auto agg = model.aggregate_loss_moments(3);
            std::vector<double> cond(3);
            double fact = 1.0;
            for (int k = 1; k <= 3; ++k) {
                fact *= k;
                cond[k - 1] = fact * agg.lam[k - 1] / agg.rho;
            }
            report_fit("aggregate-conditional", cond);
        } catch (const Error& e) {
            err << "model-level comparison failed: " << e.what() << "\n";
            rc = 1;
        }
    }
    return rc;
}

int cmd_check(const KeyValues& kv, std::ostream& out, std::ostream& err) {
    try {
        if (kv.has("mixture.rates")) {
            auto weights = kv.get_number_list("mixture.weights");
            auto rates = kv.get_number_list("mixture.rates");
            if (weights.size() != rates.size())
                throw ConfigError("check: mixture.weights and mixture.rates sizes differ");
            std::vector<ExpTerm> terms;
            for (std::size_t i = 0; i < rates.size(); ++i)
                terms.push_back({weights[i], rates[i], 0});
            ExpPolyMixture mix(std::move(terms));
            auto rep = numeric_admissibility(mix);
            out << "density nonnegative: " << (rep.density_nonneg ? "yes" : "no")
                << " (min=" << format_number(rep.min_density)
                << " at x=" << format_number(rep.argmin) << ")\n";
            out << "survival nonincreasing: " << (rep.survival_monotone ? "yes" : "no") << "\n";
            // the closed three-exponential criterion applies on rates exactly (1,2,3)
            if (rates.size() == 3) {
                std::vector<std::pair<double, double>> byrate;
                for (std::size_t i = 0; i < 3; ++i) byrate.emplace_back(rates[i], weights[i]);
                std::sort(byrate.begin(), byrate.end());
                if (byrate[0].first == 1.0 && byrate[1].first == 2.0 && byrate[2].first == 3.0) {
                    // survival coefficients of the density mixture are w_i / r_i
                    std::array<double, 3> sc = {byrate[0].second / 1.0, byrate[1].second / 2.0,
                                                byrate[2].second / 3.0};
                    try {
                        out << "three-exponential criterion: "
                            << (three_exp_criterion(sc) ? "admissible" : "not admissible") << "\n";
                    } catch (const NotApplicable& e) {
                        out << "three-exponential criterion: n/a (" << e.what() << ")\n";
                    }
                }
            }
            return rep.density_nonneg && rep.survival_monotone ? 0 : 2;
        }
        // otherwise check the configured methods' survival functions
        RunConfig cfg = RunConfig::from_keyvalues(kv);
        int rc = 0;
        for (Method m : cfg.methods) {
            try {
                RuinApprox ap = run_method(cfg.model, m);
                // psi is nonincreasing iff its negative derivative is a
                // nonnegative mixture
                auto rep = numeric_admissibility(ap.survival.negative_derivative());
                const bool nonneg = ap.psi(0.0) >= -1e-12 && rep.density_nonneg;
                out << method_name(m) << ": psi nonincreasing="
                    << (rep.density_nonneg ? "yes" : "no")
                    << " nonnegative=" << (nonneg ? "yes" : "no") << "\n";
                if (!rep.density_nonneg || !nonneg) rc = 2;
            } catch (const Error& e) {
                err << method_name(m) << " failed: " << e.what() << "\n";
                rc = 1;
            }
        }
        return rc;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
}

} // namespace ruinkit
