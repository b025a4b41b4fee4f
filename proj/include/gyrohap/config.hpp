#pragma once

#include <filesystem>
#include <vector>

#include "gyrohap/harness.hpp"

namespace gyrohap {

/// Full configuration of a measurement run. Serialized as an INI file
/// with sections [plant] [cmg] [imu] [swing] [conditions]; every key has
/// a documented default and unknown keys are rejected.
struct RunConfig {
    PlantParams plant;
    FlywheelSpec flywheel;
    CmgState cmg;  ///< phi doubles as the initial gimbal angle
    ImuModel imu;
    SwingProfile swing;
    std::vector<Condition> conditions;  ///< Table-1 set unless overridden

    HarnessConfig harness() const;
    void validate() const;
};

/// Defaults: calibrated plant inertia, the device flywheel constants, the
/// stock swing profile and the five stock conditions (their tip inertia
/// tied to the plant inertia).
RunConfig default_run_config();

RunConfig load_run_config(const std::filesystem::path& path);

void save_run_config(const RunConfig& config, const std::filesystem::path& path);

}  // namespace gyrohap
