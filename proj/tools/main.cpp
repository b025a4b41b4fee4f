// gyrohap command-line front end: measure / analyze / synth.
#include <CLI11.hpp>

#include <iostream>

#include "gyrohap/commands.hpp"
#include "gyrohap/config.hpp"
#include "gyrohap/errors.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Haptic torque rendering simulator and rating analysis pipeline"};
    app.require_subcommand(1);

    // measure
    gyrohap::MeasureOptions measure;
    std::string measure_config;
    std::string measure_condition;
    std::uint64_t measure_seed = 0;
    auto* cmd_measure = app.add_subcommand(
        "measure", "Run impedance conditions through the actuator model, export trace CSVs");
    cmd_measure->add_option("-c,--config", measure_config,
                            "Run configuration file (INI); defaults used when absent");
    cmd_measure
        ->add_option("-o,--out", measure.out_dir, "Output directory for trace and summary CSVs")
        ->capture_default_str();
    auto* cond_opt = cmd_measure->add_option("--condition", measure_condition,
                                             "Run only this condition (e.g. increased-inertia)");
    auto* seed_opt_m =
        cmd_measure->add_option("--seed", measure_seed, "Override the [imu] seed");
    std::string dump_config;
    cmd_measure->add_option("--dump-config", dump_config,
                            "Write the effective configuration to this file and exit");

    // analyze
    gyrohap::AnalyzeCmdOptions analyze;
    int analyze_factors = 0;
    std::string analyze_rule = "elbow";
    std::string analyze_method = "paf";
    auto* cmd_analyze = app.add_subcommand(
        "analyze", "Factor-analyze a ratings CSV (scree, loadings, scores, condition means)");
    cmd_analyze->add_option("ratings", analyze.ratings_path, "Ratings CSV file")->required();
    cmd_analyze->add_option("-o,--out", analyze.out_dir, "Output directory")
        ->capture_default_str();
    auto* factors_opt = cmd_analyze->add_option(
        "-k,--factors", analyze_factors, "Fix the number of factors (overrides --rule)");
    cmd_analyze
        ->add_option("--rule", analyze_rule, "Factor-count rule: elbow (scree) or kaiser")
        ->check(CLI::IsMember({"elbow", "kaiser"}))
        ->capture_default_str();
    cmd_analyze
        ->add_option("--method", analyze_method,
                     "Extraction: paf (principal axis) or pc (principal components)")
        ->check(CLI::IsMember({"paf", "pc"}))
        ->capture_default_str();

    // synth
    gyrohap::SynthCmdOptions synth;
    std::string synth_model;
    auto* cmd_synth = app.add_subcommand(
        "synth", "Generate factor-structured synthetic ratings plus the generating model");
    cmd_synth->add_option("-o,--out", synth.out_path, "Output ratings CSV path")
        ->capture_default_str();
    auto* model_opt = cmd_synth->add_option(
        "--model", synth_model, "Loading-matrix CSV to generate from (default: built-in 7x4)");
    cmd_synth->add_option("-n,--observations", synth.observations, "Number of rating rows")
        ->capture_default_str();
    cmd_synth->add_option("--noise", synth.noise_std, "Unique-noise standard deviation")
        ->capture_default_str();
    cmd_synth->add_option("--scale", synth.scale, "Continuous-to-Likert gain")
        ->capture_default_str();
    cmd_synth->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_measure->parsed()) {
            if (!measure_config.empty()) {
                measure.config_path = measure_config;
            }
            if (!dump_config.empty()) {
                gyrohap::RunConfig cfg = measure.config_path
                                             ? gyrohap::load_run_config(*measure.config_path)
                                             : gyrohap::default_run_config();
                gyrohap::save_run_config(cfg, dump_config);
                std::cout << "wrote " << dump_config << "\n";
                return 0;
            }
            if (cond_opt->count() > 0) {
                measure.condition = measure_condition;
            }
            if (seed_opt_m->count() > 0) {
                measure.seed = measure_seed;
            }
            gyrohap::run_measure(measure, std::cout);
        } else if (cmd_analyze->parsed()) {
            if (factors_opt->count() > 0) {
                analyze.factors = analyze_factors;
            }
            analyze.rule = analyze_rule == "kaiser" ? gyrohap::FactorCountRule::Kaiser
                                                    : gyrohap::FactorCountRule::PaperElbow;
            analyze.method = analyze_method == "pc"
                                 ? gyrohap::ExtractionMethod::PrincipalComponents
                                 : gyrohap::ExtractionMethod::PrincipalAxis;
            gyrohap::run_analyze(analyze, std::cout);
        } else if (cmd_synth->parsed()) {
            if (model_opt->count() > 0) {
                synth.model_path = synth_model;
            }
            gyrohap::run_synth(synth, std::cout);
        }
    } catch (const gyrohap::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gyrohap::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
