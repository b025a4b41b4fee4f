#include "gyrohap/commands.hpp"

#include <fstream>
#include <ostream>

#include "gyrohap/csv.hpp"
#include "gyrohap/errors.hpp"
#include "gyrohap/factor_io.hpp"
#include "gyrohap/synth.hpp"

namespace gyrohap {

namespace {

void write_measure_summary(const std::vector<ConditionTrace>& traces,
                           const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << "condition,rms_error,peak_desired,normalized_rmse,dominant_oscillation_hz,"
           "saturated_samples,unstable\n";
    for (const ConditionTrace& t : traces) {
        size_t saturated = 0;
        for (const TraceSample& s : t.samples) {
            saturated += s.saturated ? 1 : 0;
        }
        out << t.condition << ',' << csv::format_double(t.metrics.rms_error) << ','
            << csv::format_double(t.metrics.peak_desired) << ','
            << csv::format_double(t.metrics.normalized_rmse) << ',';
        if (t.metrics.dominant_oscillation_hz) {
            out << csv::format_double(*t.metrics.dominant_oscillation_hz);
        }
        out << ',' << saturated << ',' << (t.unstable ? 1 : 0) << '\n';
    }
}

}  // namespace

MeasureReport run_measure(const MeasureOptions& options, std::ostream& log) {
    RunConfig config =
        options.config_path ? load_run_config(*options.config_path) : default_run_config();
    if (options.seed) {
        config.imu.seed = *options.seed;
    }

    std::vector<Condition> to_run;
    if (options.condition) {
        for (const Condition& c : config.conditions) {
            if (c.name == *options.condition) {
                to_run.push_back(c);
            }
        }
        if (to_run.empty()) {
            throw ConfigError("unknown condition '" + *options.condition + "'");
        }
    } else {
        to_run = config.conditions;
    }

    std::filesystem::create_directories(options.out_dir);

    MeasureReport report;
    bool any_unstable = false;
    for (const Condition& condition : to_run) {
        ConditionTrace trace = run_condition(condition, config.swing, config.harness());
        const std::filesystem::path file = options.out_dir / (condition.name + ".csv");
        export_trace(trace, file);
        log << condition.name << ": nrmse=" << csv::format_double(trace.metrics.normalized_rmse)
            << " peak=" << csv::format_double(trace.metrics.peak_desired);
        if (trace.metrics.dominant_oscillation_hz) {
            log << " ring_hz=" << csv::format_double(*trace.metrics.dominant_oscillation_hz);
        }
        if (trace.unstable) {
            log << " UNSTABLE (trace truncated)";
            any_unstable = true;
        }
        log << '\n';
        report.trace_files.push_back(file);
        report.traces.push_back(std::move(trace));
    }

    report.summary_file = options.out_dir / "summary.csv";
    write_measure_summary(report.traces, report.summary_file);

    if (any_unstable) {
        throw NumericalError("measure: at least one condition diverged; see summary at " +
                             report.summary_file.string());
    }
    return report;
}

AnalyzeReport run_analyze(const AnalyzeCmdOptions& options, std::ostream& log) {
    const RatingMatrix ratings = load_ratings(options.ratings_path);
    const ObservationMatrix obs = average_repetitions(ratings);

    AnalyzeOptions analyze;
    analyze.extraction.method = options.method;
    if (options.factors) {
        analyze.rule = FactorCountRule::Fixed;
        analyze.fixed_k = *options.factors;
    } else {
        analyze.rule = options.rule;
    }

    AnalyzeReport report;
    report.model = analyze_observations(obs, analyze);

    std::filesystem::create_directories(options.out_dir);
    report.scree_file = options.out_dir / "scree.csv";
    report.loadings_file = options.out_dir / "loadings.csv";
    report.summary_file = options.out_dir / "summary.csv";
    report.scores_file = options.out_dir / "scores.csv";
    report.means_file = options.out_dir / "condition_means.csv";

    write_scree_csv(report.model.eigenvalues, report.scree_file);
    write_loadings_csv(report.model.loadings, report.model.pair_labels, report.loadings_file);
    write_summary_csv(report.model.summary, report.summary_file);
    write_scores_csv(report.model.scores, obs.row_participant, obs.row_condition,
                     report.scores_file);
    write_condition_means_csv(report.model.condition_means, report.means_file);

    log << "observations: " << obs.values.rows() << ", variables: " << obs.values.cols()
        << ", factors: " << report.model.n_factors << '\n';
    print_summary(report.model.summary, log);
    return report;
}

SynthReport run_synth(const SynthCmdOptions& options, std::ostream& log) {
    SynthSpec spec;
    spec.observations = options.observations;
    spec.noise_std = options.noise_std;
    spec.scale = options.scale;
    spec.seed = options.seed;
    if (options.model_path) {
        spec.loadings = read_loadings_csv(*options.model_path);
    } else {
        spec.loadings = default_synth_loadings();
    }

    const RatingMatrix ratings = synthesize_ratings(spec);

    SynthReport report;
    report.ratings_file = options.out_path;
    if (options.out_path.has_parent_path()) {
        std::filesystem::create_directories(options.out_path.parent_path());
    }
    save_ratings(ratings, report.ratings_file);

    std::filesystem::path model_file = options.out_path;
    model_file.replace_extension();
    model_file += "_model.csv";
    write_loadings_csv(spec.loadings, ratings.pair_labels, model_file);
    report.model_file = model_file;
    report.rows = static_cast<int>(ratings.records.size());

    log << "wrote " << report.rows << " rows to " << report.ratings_file.string()
        << " (model: " << report.model_file.string() << ")\n";
    return report;
}

}  // namespace gyrohap
