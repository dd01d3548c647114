#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "c4shadow/pipeline.hpp"
#include "c4shadow/util.hpp"

namespace {

using namespace c4s;

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> noise;
    std::optional<std::string> variant;
    std::optional<std::int64_t> shots;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "experiment config file")->required();
    cmd->add_option("--seed", o.seed, "override the run seed");
    cmd->add_option("--out", o.out, "override the output directory");
    cmd->add_option("--noise", o.noise, "override the noise preset (none, h1-like)");
    cmd->add_option("--variant", o.variant, "override the circuit variant");
    cmd->add_option("--shots", o.shots, "override shots per setting");
}

ExperimentConfig load_with_overrides(const CommonOpts& o) {
    ExperimentConfig cfg = load_config(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.out) cfg.out_dir = *o.out;
    if (o.noise) cfg.noise = NoiseSpec{*o.noise, {}, {}, {}, {}};
    if (o.variant) cfg.variant = variant_from_name(*o.variant);
    if (o.shots) cfg.shots = *o.shots;
    cfg.validate();
    return cfg;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write \"" + path + "\"");
    f << text;
}

std::string single_variant_label(const ExperimentConfig& cfg) {
    if (cfg.variant == CircuitVariant::Both)
        throw ConfigError("pick one variant for this command (--variant)");
    return variant_name(cfg.variant);
}

void cmd_solve(const CommonOpts& o) {
    ExperimentConfig cfg = load_with_overrides(o);
    PipelineContext ctx = prepare_context(cfg);
    std::cout << "{\n";
    std::cout << "  \"energy\": " << g12(ctx.ground.energy) << ",\n";
    std::cout << "  \"degenerate\": " << (ctx.ground.degeneracy_flag ? "true" : "false")
              << ",\n";
    std::cout << "  \"residual\": " << g12(ctx.ground.residual) << ",\n";
    std::cout << "  \"amplitudes\": [";
    for (std::size_t i = 0; i < ctx.ground.state.amp.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << '[' << g12(ctx.ground.state.amp[i].real()) << ", "
                  << g12(ctx.ground.state.amp[i].imag()) << ']';
    }
    std::cout << "]";
    if (ctx.hamiltonian.n_qubits == 2) {
        double fid = state_fidelity(prepare_state(ctx.angles), ctx.ground.state);
        std::cout << ",\n  \"angles\": {\"alpha\": " << g12(ctx.angles.alpha)
                  << ", \"beta\": " << g12(ctx.angles.beta)
                  << ", \"gamma\": " << g12(ctx.angles.gamma) << "},\n";
        std::cout << "  \"fidelity\": " << g12(fid) << "\n";
    } else {
        std::cout << "\n";
    }
    std::cout << "}\n";
}

void print_record_line(const ResultRecord& r) {
    std::cout << r.variant << ": energy = " << g12(r.energy) << " +/- " << g12(r.std_error)
              << " Ha, CI [" << g12(r.ci_low) << ", " << g12(r.ci_high) << "], delta "
              << g12(r.delta_mha) << " mHa, accepted " << r.accepted << "/" << r.total
              << ", chemical accuracy " << (r.chemical_accuracy ? "yes" : "no") << "\n";
}

void cmd_run(const CommonOpts& o) {
    ExperimentConfig cfg = load_with_overrides(o);
    PipelineResult res = run_pipeline(cfg);
    for (const auto& r : res.results) print_record_line(r);
    if (res.comparison) {
        std::cout << "prob(" << res.comparison->label_a << " closer to truth) = "
                  << g12(res.comparison->prob_a_better) << ", meets 97% level: "
                  << (res.comparison->meets_97_level ? "yes" : "no") << "\n";
    }
    for (const auto& f : res.files) std::cout << "wrote " << f << "\n";
}

void cmd_estimate(const CommonOpts& o, const std::string& store_path) {
    ExperimentConfig cfg = load_with_overrides(o);
    std::string label = single_variant_label(cfg);
    ShotStore store = ShotStore::load_file(store_path);
    PipelineContext ctx = prepare_context(cfg);
    ResultRecord rec = estimate_record(cfg, ctx, store, label);
    std::ostringstream os;
    write_result_json(rec, os);
    std::string path = out_path(cfg, "result_" + label + ".json");
    write_file(path, os.str());
    std::cout << os.str();
    std::cerr << "wrote " << path << "\n";
}

void cmd_sweep(const CommonOpts& o, const std::string& store_path) {
    ExperimentConfig cfg = load_with_overrides(o);
    std::string label = single_variant_label(cfg);
    ShotStore store = ShotStore::load_file(store_path);
    PipelineContext ctx = prepare_context(cfg);
    auto points = sweep_series(cfg, ctx, store);
    std::ostringstream os;
    sweep_csv(points, os);
    std::string path = out_path(cfg, "sweep_" + label + ".csv");
    write_file(path, os.str());
    std::cout << os.str();
    std::cerr << "wrote " << path << "\n";
}

void cmd_audit(const CommonOpts& o, const std::string& block_arg,
               const std::string& setting_arg) {
    ExperimentConfig cfg = load_with_overrides(o);
    PipelineContext ctx = prepare_context(cfg);

    std::vector<FaultBlock> blocks;
    if (block_arg == "each")
        blocks = {FaultBlock::Prep, FaultBlock::Rotations, FaultBlock::Measurement};
    else
        blocks = {fault_block_from_name(block_arg)};
    std::vector<LogicalSetting> settings;
    if (setting_arg == "all")
        settings.assign(all_settings().begin(), all_settings().end());
    else
        settings = {setting_from_name(setting_arg)};

    std::ostringstream csv;
    csv << "block,setting,location,pauli,class\n";
    for (FaultBlock b : blocks) {
        for (LogicalSetting s : settings) {
            AuditReport rep = fault_audit(b, s, ctx.angles);
            for (const auto& row : rep.rows)
                csv << fault_block_name(b) << ',' << setting_name(s) << ',' << row.location
                    << ',' << row.pauli << ',' << fault_class_name(row.cls) << '\n';
            std::cout << "block=" << fault_block_name(b) << " setting=" << setting_name(s)
                      << ": benign " << rep.benign << ", detected " << rep.detected
                      << ", undetected-logical " << rep.undetected_logical
                      << " (fault-free acceptance " << g12(rep.baseline_acceptance) << ")\n";
        }
    }
    std::string path = out_path(cfg, "audit.csv");
    write_file(path, csv.str());
    std::cout << "wrote " << path << "\n";
}

void cmd_compare(const CommonOpts& o, const std::string& store_a, const std::string& store_b,
                 const std::string& label_a, const std::string& label_b) {
    ExperimentConfig cfg = load_with_overrides(o);
    PipelineContext ctx = prepare_context(cfg);
    ShotStore a = ShotStore::load_file(store_a);
    ShotStore b = ShotStore::load_file(store_b);
    CompareRecord cr = compare_stores(cfg, ctx, a, b, label_a, label_b);
    std::ostringstream os;
    write_compare_json(cr, os);
    std::string path = out_path(cfg, "compare.json");
    write_file(path, os.str());
    std::cout << os.str();
    std::cerr << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Logical-shadow energy estimation experiment driver"};
    app.require_subcommand(1);

    CommonOpts solve_o, run_o, est_o, sweep_o, audit_o, cmp_o;
    std::string est_store, sweep_store, cmp_store_a, cmp_store_b;
    std::string audit_block = "each", audit_setting = "all";
    std::string cmp_label_a = "encoded", cmp_label_b = "unencoded";

    CLI::App* solve = app.add_subcommand("solve", "ground state, angles and fidelity");
    add_common(solve, solve_o);
    solve->callback([&] { cmd_solve(solve_o); });

    CLI::App* run = app.add_subcommand("run", "full pipeline: simulate, store, estimate");
    add_common(run, run_o);
    run->callback([&] { cmd_run(run_o); });

    CLI::App* estimate = app.add_subcommand("estimate", "re-estimate from a shot store");
    add_common(estimate, est_o);
    estimate->add_option("--store", est_store, "shot store file")->required();
    estimate->callback([&] { cmd_estimate(est_o, est_store); });

    CLI::App* sweep = app.add_subcommand("sweep", "bootstrap a growing-prefix series");
    add_common(sweep, sweep_o);
    sweep->add_option("--store", sweep_store, "shot store file")->required();
    sweep->callback([&] { cmd_sweep(sweep_o, sweep_store); });

    CLI::App* audit = app.add_subcommand("audit", "exhaustive single-fault classification");
    add_common(audit, audit_o);
    audit->add_option("--block", audit_block,
                      "prep, rotations, measurement, all, or `each` for the three blocks");
    audit->add_option("--setting", audit_setting, "XX, XZ, ZX, ZZ or all");
    audit->callback([&] { cmd_audit(audit_o, audit_block, audit_setting); });

    CLI::App* compare = app.add_subcommand("compare", "paired bootstrap of two stores");
    add_common(compare, cmp_o);
    compare->add_option("--store-a", cmp_store_a, "first shot store")->required();
    compare->add_option("--store-b", cmp_store_b, "second shot store")->required();
    compare->add_option("--label-a", cmp_label_a, "name for the first store");
    compare->add_option("--label-b", cmp_label_b, "name for the second store");
    compare->callback(
        [&] { cmd_compare(cmp_o, cmp_store_a, cmp_store_b, cmp_label_a, cmp_label_b); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const SimulationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const EstimationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
