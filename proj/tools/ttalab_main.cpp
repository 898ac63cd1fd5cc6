// Command-line front end: stream quantization, mixing calibration,
// recovery / learnability experiments, bound evaluation, and table
// reproduction. Exit codes: 0 success, 2 infeasible-instance gate,
// 1 any other error.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ttalab/bench.hpp"
#include "ttalab/bounds.hpp"
#include "ttalab/config.hpp"
#include "ttalab/errors.hpp"
#include "ttalab/io.hpp"
#include "ttalab/mixing.hpp"
#include "ttalab/recovery.hpp"
#include "ttalab/stats.hpp"
#include "ttalab/streams.hpp"

namespace {

using ttalab::config::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        ttalab::io::write_text_file(out_path, text);
    }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

int cmd_quantize(const std::string& traj_path, double delta_w,
                 const std::string& out_path) {
    const auto traj = ttalab::streams::read_trajectory_csv(traj_path);
    const auto quantized = ttalab::streams::greedy_quantize(traj, delta_w);

    std::string csv = "t,location,anchor,shift\n";
    for (std::size_t i = 0; i < traj.locations.size(); ++i) {
        csv += ttalab::io::format_int(static_cast<std::int64_t>(i + 1));
        csv += ',';
        csv += ttalab::io::format_double(traj.locations[i]);
        csv += ',';
        csv += ttalab::io::format_double(quantized.anchor_locations[i]);
        csv += ',';
        csv += i == 0 ? "0" : ttalab::io::format_int(quantized.shift_flags[i - 1]);
        csv += '\n';
    }
    emit(csv, out_path);

    const double v_t = traj.path_variation();
    std::cerr << "shift_count=" << quantized.shift_count
              << " budget=" << ttalab::streams::shift_count_budget(v_t, delta_w)
              << " path_variation=" << ttalab::io::format_double(v_t) << "\n";
    return kExitOk;
}

int cmd_calibrate_mixing(double rho, int lags, long n_samples, double sigma,
                         std::uint64_t seed, const std::string& out_path) {
    ttalab::mixing::MixingProcess proc(ttalab::mixing::stay_prob_for_rho(rho), sigma,
                                       seed);
    const auto report = ttalab::mixing::empirical_phi_report(proc, lags, n_samples);

    std::string csv = "lag,cov,bound,ratio,stderr\n";
    for (const auto& row : report) {
        csv += ttalab::io::format_int(row.lag);
        csv += ',';
        csv += ttalab::io::format_double(row.cov);
        csv += ',';
        csv += ttalab::io::format_double(row.bound);
        csv += ',';
        csv += ttalab::io::format_double(row.ratio);
        csv += ',';
        csv += ttalab::io::format_double(row.stderr_);
        csv += '\n';
    }
    emit(csv, out_path);
    std::cerr << "c_phi=" << ttalab::io::format_double(ttalab::mixing::c_phi(rho))
              << " n_samples=" << n_samples << " seed=" << seed << "\n";
    return kExitOk;
}

int cmd_recover(const std::string& config_path, const std::string& out_path,
                const std::string& curve_path, const std::string& dump_path) {
    const auto cfg = ttalab::config::parse_recover_config(
        ttalab::config::load_json_file(config_path));
    const auto outcome = ttalab::bench::run_recover(cfg);
    emit(dump_json(outcome.summary), out_path);
    if (!curve_path.empty())
        ttalab::io::write_text_file(curve_path,
                                    ttalab::recovery::failure_curve_to_csv(outcome.estimate));
    if (!dump_path.empty()) {
        // replay of the estimator's first run
        ttalab::streams::DistributionTrajectory traj;
        traj.locations.assign(
            static_cast<std::size_t>(outcome.estimate.horizon_T_max),
            outcome.instance.location_m);
        auto proc = ttalab::adapt::make_process(
            cfg.problem, ttalab::stats::derive_seed(cfg.baseline.master_seed, 0));
        auto run_cfg = cfg.baseline;
        run_cfg.horizon_T = outcome.estimate.horizon_T_max;
        const auto rec =
            ttalab::adapt::run_baseline(outcome.instance, traj, proc, run_cfg);
        ttalab::adapt::write_record_csv(dump_path, rec);
    }
    if (!outcome.estimate.feasible)
        std::cerr << "warning: zeta/(alpha*mu) exceeds eps*delta/2; "
                     "high-probability recovery is not guaranteed\n";
    if (!outcome.estimate.recovered)
        std::cerr << "warning: no recovery within the simulated horizon\n";
    return kExitOk;
}

int cmd_learnability(const std::string& config_path, const std::string& out_path) {
    const auto cfg = ttalab::config::parse_learnability_config(
        ttalab::config::load_json_file(config_path));

    const auto flags = ttalab::bounds::feasibility_report(cfg.problem);
    if (!flags.bridge_ok) {
        std::cerr << "infeasible: eps=" << ttalab::io::format_double(flags.bridge_lhs)
                  << " must exceed Lambda*delta_W="
                  << ttalab::io::format_double(flags.bridge_rhs) << "\n";
        return kExitInfeasible;
    }

    ttalab::streams::DistributionTrajectory traj;
    if (cfg.stream.csv_path) {
        traj = ttalab::streams::read_trajectory_csv(*cfg.stream.csv_path);
        ttalab::streams::check_single_step(traj, cfg.problem.delta_W);
    } else {
        traj = ttalab::streams::gen_trajectory(cfg.stream.kind, cfg.stream.horizon_T,
                                               cfg.problem.delta_W, cfg.stream.params,
                                               cfg.baseline.master_seed);
    }
    const auto quantized = ttalab::streams::greedy_quantize(traj, cfg.problem.delta_W);

    const double xi =
        cfg.bias_xi ? *cfg.bias_xi : ttalab::model::default_bias_xi(cfg.problem);
    const double start = traj.locations.front();
    const double theta_init =
        cfg.theta_init ? *cfg.theta_init
                       : start - xi / (cfg.problem.alpha * cfg.problem.smooth_L);
    ttalab::model::QuadraticInstance inst{cfg.problem, start, xi, theta_init};
    inst.validate();

    const auto learn = ttalab::recovery::estimate_learnability(
        inst, traj, cfg.baseline, cfg.n_runs, cfg.problem.eps);

    const double ep = ttalab::bounds::eps_prime(cfg.problem);
    ttalab::model::QuadraticInstance shift_inst = inst;
    shift_inst.location_m = start + cfg.problem.delta_W;
    ttalab::streams::DistributionTrajectory post;
    post.locations = {shift_inst.location_m};
    auto rec_cfg = cfg.baseline;
    rec_cfg.master_seed = ttalab::stats::derive_seed(cfg.baseline.master_seed, 2);
    const auto rec = ttalab::recovery::estimate_recovery(
        shift_inst, post, rec_cfg, cfg.n_runs, cfg.recovery_t_max,
        ttalab::recovery::Estimator::uniform_tail);

    const double rho_bound = ttalab::bounds::learnability_transfer(
        cfg.problem, quantized.shift_count, rec.tau_hat, traj.horizon());
    const double m_bound = ttalab::bounds::default_excess_bound_M(cfg.problem);
    const double regret = ttalab::bounds::regret_bound(
        cfg.problem.eps, m_bound, std::min(learn.rho_hat, 1.0), traj.horizon());

    json out{{"tool_version", ttalab::io::kToolVersion},
             {"rho_hat", learn.rho_hat},
             {"rho_stderr", learn.rho_stderr},
             {"rho_bound", rho_bound},
             {"eps_prime", ep},
             {"tau_eps_prime", rec.tau_hat},
             {"quantized_shifts", quantized.shift_count},
             {"horizon_T", traj.horizon()},
             {"cumulative_excess", learn.mean_cumulative_excess},
             {"cum_excess_stderr", learn.cum_excess_stderr},
             {"regret_bound", regret},
             {"excess_bound_M", m_bound},
             {"boundary_hits", learn.total_boundary_hits},
             {"feasibility", ttalab::bench::feasibility_to_json(flags)},
             {"config", ttalab::config::learnability_config_to_json(cfg)}};
    emit(dump_json(out), out_path);
    return kExitOk;
}

int cmd_bounds(const std::string& config_path, const std::string& out_path) {
    const auto cfg =
        ttalab::config::parse_bounds_config(ttalab::config::load_json_file(config_path));
    emit(dump_json(ttalab::bench::bounds_report_json(cfg)), out_path);
    return kExitOk;
}

int cmd_repro_tables(const std::string& preset_name, int n_runs,
                     std::uint64_t master_seed, const std::string& out_dir,
                     bool emit_plot_data) {
    const auto preset = ttalab::bench::resolve_preset(preset_name);
    ttalab::bench::ReproOptions opt;
    opt.n_runs = n_runs;
    opt.master_seed = master_seed;

    const auto alpha_table = ttalab::bench::repro_table_alpha(preset, opt);
    const auto b_table = ttalab::bench::repro_table_b(preset, opt);

    std::cout << "# vary alpha (B=" << preset.params.batch_B << ")\n"
              << alpha_table.to_csv() << "# vary B (alpha="
              << ttalab::io::format_double(preset.params.alpha) << ")\n"
              << b_table.to_csv();

    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        const fs::path dir(out_dir);
        ttalab::io::write_text_file(dir / "vary_alpha.csv", alpha_table.to_csv());
        ttalab::io::write_text_file(dir / "vary_b.csv", b_table.to_csv());
        json meta{{"vary_alpha", alpha_table.meta}, {"vary_b", b_table.meta}};
        ttalab::io::write_text_file(dir / "repro_meta.json", dump_json(meta));
        if (emit_plot_data)
            ttalab::io::write_text_file(
                dir / "plot_data.csv",
                ttalab::bench::tables_to_plot_csv(alpha_table, b_table));
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for recovery complexity on non-stationary streams"};
    app.require_subcommand(1);

    // quantize
    std::string traj_path, quant_out;
    double delta_w = 0.0;
    auto* quantize = app.add_subcommand("quantize", "Greedy-quantize a trajectory CSV");
    quantize->add_option("traj", traj_path, "trajectory CSV (t,location)")->required();
    quantize->add_option("--delta-w", delta_w, "resolution parameter")->required();
    quantize->add_option("--out", quant_out, "output CSV path (default stdout)");

    // calibrate-mixing
    double rho = 0.0, mix_sigma = 1.0;
    int lags = 10;
    long mix_samples = 1000000;
    std::uint64_t mix_seed = 1;
    std::string mix_out;
    auto* calibrate =
        app.add_subcommand("calibrate-mixing", "Empirical lag-covariance table");
    calibrate->add_option("--rho", rho, "geometric mixing decay in [0,1)")->required();
    calibrate->add_option("--lags", lags, "maximum lag")->required();
    calibrate->add_option("--samples", mix_samples, "stream length");
    calibrate->add_option("--sigma", mix_sigma, "emission std");
    calibrate->add_option("--seed", mix_seed, "rng seed");
    calibrate->add_option("--out", mix_out, "output CSV path (default stdout)");

    // recover
    std::string recover_cfg, recover_out, recover_curve, recover_dump;
    auto* recover = app.add_subcommand("recover", "Monte Carlo recovery-time estimate");
    recover->add_option("--config", recover_cfg, "JSON config")->required();
    recover->add_option("--out", recover_out, "summary JSON path (default stdout)");
    recover->add_option("--curve-out", recover_curve, "failure-curve CSV path");
    recover->add_option("--dump-run", recover_dump,
                        "per-step CSV (t,theta,excess) of the first run");

    // learnability
    std::string learn_cfg, learn_out;
    auto* learnability =
        app.add_subcommand("learnability", "Stream-level violation-rate experiment");
    learnability->add_option("--config", learn_cfg, "JSON config")->required();
    learnability->add_option("--out", learn_out, "report JSON path (default stdout)");

    // bounds
    std::string bounds_cfg, bounds_out;
    auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form bound report");
    bounds_cmd->add_option("--config", bounds_cfg, "JSON config")->required();
    bounds_cmd->add_option("--out", bounds_out, "report JSON path (default stdout)");

    // repro-tables
    std::string preset_name = "canonical", tables_out;
    int tables_runs = 0;
    std::uint64_t tables_seed = 0;
    bool plot_data = false;
    auto* repro = app.add_subcommand("repro-tables", "Recovery scaling tables");
    repro->add_option("--preset", preset_name, "preset name (canonical)");
    repro->add_option("--n-runs", tables_runs, "Monte Carlo runs per grid point");
    repro->add_option("--seed", tables_seed, "master seed override");
    repro->add_option("--out", tables_out, "output directory");
    repro->add_flag("--emit-plot-data", plot_data, "also write long-format plot CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (quantize->parsed()) return cmd_quantize(traj_path, delta_w, quant_out);
        if (calibrate->parsed())
            return cmd_calibrate_mixing(rho, lags, mix_samples, mix_sigma, mix_seed,
                                        mix_out);
        if (recover->parsed())
            return cmd_recover(recover_cfg, recover_out, recover_curve, recover_dump);
        if (learnability->parsed()) return cmd_learnability(learn_cfg, learn_out);
        if (bounds_cmd->parsed()) return cmd_bounds(bounds_cfg, bounds_out);
        if (repro->parsed())
            return cmd_repro_tables(preset_name, tables_runs, tables_seed, tables_out,
                                    plot_data);
    } catch (const ttalab::BridgeInfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
