#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gyrohap/config.hpp"
#include "gyrohap/factor_analysis.hpp"
#include "gyrohap/harness.hpp"

namespace gyrohap {

/// measure: run the impedance conditions through the actuator model and
/// export one trace CSV per condition plus a metrics summary.
struct MeasureOptions {
    std::optional<std::filesystem::path> config_path;  ///< defaults when absent
    std::filesystem::path out_dir = "out";
    std::optional<std::string> condition;  ///< run a single named condition
    std::optional<std::uint64_t> seed;     ///< overrides the [imu] seed
};

struct MeasureReport {
    std::vector<ConditionTrace> traces;
    std::vector<std::filesystem::path> trace_files;
    std::filesystem::path summary_file;
};

MeasureReport run_measure(const MeasureOptions& options, std::ostream& log);

/// analyze: factor pipeline over a ratings CSV; writes scree, loadings,
/// summary, scores and condition-means CSVs next to `out_dir`.
struct AnalyzeCmdOptions {
    std::filesystem::path ratings_path;
    std::filesystem::path out_dir = "out";
    std::optional<int> factors;  ///< overrides the elbow rule
    FactorCountRule rule = FactorCountRule::PaperElbow;
    ExtractionMethod method = ExtractionMethod::PrincipalAxis;
};

struct AnalyzeReport {
    FactorModel model;
    std::filesystem::path scree_file, loadings_file, summary_file, scores_file, means_file;
};

AnalyzeReport run_analyze(const AnalyzeCmdOptions& options, std::ostream& log);

/// synth: factor-structured test ratings plus the generating loading
/// matrix saved alongside for oracle comparison.
struct SynthCmdOptions {
    std::filesystem::path out_path = "ratings.csv";
    std::optional<std::filesystem::path> model_path;  ///< custom loading matrix
    int observations = 200;
    double noise_std = 0.3;
    double scale = 1.2;
    std::uint64_t seed = 42;
};

struct SynthReport {
    std::filesystem::path ratings_file;
    std::filesystem::path model_file;
    int rows = 0;
};

SynthReport run_synth(const SynthCmdOptions& options, std::ostream& log);

}  // namespace gyrohap
