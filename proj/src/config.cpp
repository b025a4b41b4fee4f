#include "gyrohap/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "gyrohap/csv.hpp"
#include "gyrohap/errors.hpp"

namespace gyrohap {

namespace {

double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

std::string shape_name(SwingShape shape) {
    return shape == SwingShape::Sinusoid ? "sinusoid" : "minimum-jerk";
}

SwingShape parse_shape(std::string_view text, int line_no) {
    if (text == "sinusoid") {
        return SwingShape::Sinusoid;
    }
    if (text == "minimum-jerk") {
        return SwingShape::MinimumJerk;
    }
    throw ConfigError("config line " + std::to_string(line_no) + ": unknown swing shape '" +
                      std::string(text) + "' (expected sinusoid or minimum-jerk)");
}

struct ConditionDraft {
    Condition condition;
    bool tip_inertia_set = false;
};

}  // namespace

HarnessConfig RunConfig::harness() const {
    HarnessConfig h;
    h.plant = plant;
    h.flywheel = flywheel;
    h.cmg_initial = cmg;
    h.imu = imu;
    return h;
}

void RunConfig::validate() const {
    plant.validate();
    flywheel.validate();
    cmg.validate();
    imu.validate();
    swing.validate();
    if (conditions.empty()) {
        throw ConfigError("config: no conditions defined");
    }
    for (const Condition& c : conditions) {
        if (c.name.empty()) {
            throw ConfigError("config: condition with empty name");
        }
        c.params.validate();
    }
}

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.conditions = table1_conditions();
    for (Condition& c : cfg.conditions) {
        c.params.tip_inertia = cfg.plant.inertia_total;
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }

    RunConfig cfg;
    // Conditions are rebuilt from scratch if the file has a [conditions]
    // section; name order follows first appearance.
    std::vector<ConditionDraft> drafts;
    bool conditions_section_seen = false;

    auto find_draft = [&](std::string_view name) -> ConditionDraft& {
        for (ConditionDraft& d : drafts) {
            if (d.condition.name == name) {
                return d;
            }
        }
        ConditionDraft d;
        d.condition.name = std::string(name);
        drafts.push_back(std::move(d));
        return drafts.back();
    };

    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = csv::trim(line);
        if (sv.empty() || sv.front() == '#' || sv.front() == ';') {
            continue;
        }
        if (sv.front() == '[') {
            if (sv.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": malformed section header");
            }
            section = std::string(csv::trim(sv.substr(1, sv.size() - 2)));
            if (section != "plant" && section != "cmg" && section != "imu" &&
                section != "swing" && section != "conditions") {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unknown section [" + section + "]");
            }
            if (section == "conditions") {
                conditions_section_seen = true;
            }
            continue;
        }

        const size_t eq = sv.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key(csv::trim(sv.substr(0, eq)));
        const std::string_view value = csv::trim(sv.substr(eq + 1));
        const std::string ctx = "[" + section + "] " + key + " (line " +
                                std::to_string(line_no) + ")";
        if (section.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": key '" + key + "' outside any section");
        }

        if (section == "plant") {
            if (key == "inertia_total") {
                cfg.plant.inertia_total = csv::parse_double(value, ctx);
            } else if (key == "damping_inherent") {
                cfg.plant.damping_inherent = csv::parse_double(value, ctx);
            } else if (key == "time_step") {
                cfg.plant.time_step = csv::parse_double(value, ctx);
            } else {
                throw ConfigError("config: unknown key '" + key + "' in [plant] (line " +
                                  std::to_string(line_no) + ")");
            }
        } else if (section == "cmg") {
            if (key == "flywheel_inertia") {
                cfg.flywheel.inertia_fw = csv::parse_double(value, ctx);
            } else if (key == "spin_rate_rpm") {
                cfg.flywheel.spin_rate = rpm_to_rad_per_s(csv::parse_double(value, ctx));
            } else if (key == "rate_limit") {
                cfg.cmg.rate_limit = csv::parse_double(value, ctx);
            } else if (key == "angle_min_deg") {
                cfg.cmg.angle_min = deg_to_rad(csv::parse_double(value, ctx));
            } else if (key == "angle_max_deg") {
                cfg.cmg.angle_max = deg_to_rad(csv::parse_double(value, ctx));
            } else if (key == "initial_angle_deg") {
                cfg.cmg.phi = deg_to_rad(csv::parse_double(value, ctx));
            } else {
                throw ConfigError("config: unknown key '" + key + "' in [cmg] (line " +
                                  std::to_string(line_no) + ")");
            }
        } else if (section == "imu") {
            if (key == "sample_rate") {
                cfg.imu.sample_rate = csv::parse_double(value, ctx);
            } else if (key == "gyro_noise_std") {
                cfg.imu.gyro_noise_std = csv::parse_double(value, ctx);
            } else if (key == "quantization") {
                cfg.imu.quantization = csv::parse_double(value, ctx);
            } else if (key == "filter_cutoff") {
                cfg.imu.filter_cutoff = csv::parse_double(value, ctx);
            } else if (key == "seed") {
                cfg.imu.seed = static_cast<std::uint64_t>(csv::parse_long(value, ctx));
            } else {
                throw ConfigError("config: unknown key '" + key + "' in [imu] (line " +
                                  std::to_string(line_no) + ")");
            }
        } else if (section == "swing") {
            if (key == "amplitude") {
                cfg.swing.amplitude = csv::parse_double(value, ctx);
            } else if (key == "frequency") {
                cfg.swing.frequency = csv::parse_double(value, ctx);
            } else if (key == "n_swings") {
                cfg.swing.n_swings = static_cast<int>(csv::parse_long(value, ctx));
            } else if (key == "rest_between") {
                cfg.swing.rest_between = csv::parse_double(value, ctx);
            } else if (key == "shape") {
                cfg.swing.shape = parse_shape(value, line_no);
            } else {
                throw ConfigError("config: unknown key '" + key + "' in [swing] (line " +
                                  std::to_string(line_no) + ")");
            }
        } else {  // conditions
            const size_t dot = key.find('.');
            if (dot == std::string::npos || dot == 0 || dot + 1 >= key.size()) {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": condition keys look like <name>.<param>, got '" + key +
                                  "'");
            }
            const std::string name = key.substr(0, dot);
            const std::string param = key.substr(dot + 1);
            ConditionDraft& draft = find_draft(name);
            if (param == "delta_I") {
                draft.condition.params.delta_inertia = csv::parse_double(value, ctx);
            } else if (param == "delta_D") {
                draft.condition.params.delta_damping = csv::parse_double(value, ctx);
            } else if (param == "k_r") {
                draft.condition.params.k_r = csv::parse_double(value, ctx);
            } else if (param == "c_r") {
                draft.condition.params.c_r = csv::parse_double(value, ctx);
            } else if (param == "tip_inertia") {
                draft.condition.params.tip_inertia = csv::parse_double(value, ctx);
                draft.tip_inertia_set = true;
            } else {
                throw ConfigError("config: unknown condition parameter '" + param +
                                  "' for '" + name + "' (line " + std::to_string(line_no) +
                                  ")");
            }
        }
    }

    if (conditions_section_seen) {
        cfg.conditions.clear();
        for (ConditionDraft& d : drafts) {
            if (!d.tip_inertia_set) {
                d.condition.params.tip_inertia = cfg.plant.inertia_total;
            }
            cfg.conditions.push_back(std::move(d.condition));
        }
    } else {
        cfg.conditions = table1_conditions();
        for (Condition& c : cfg.conditions) {
            c.params.tip_inertia = cfg.plant.inertia_total;
        }
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    return cfg;
}

void save_run_config(const RunConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write config file " + path.string());
    }
    const auto d = csv::format_double;
    out << "[plant]\n"
        << "inertia_total = " << d(config.plant.inertia_total) << "\n"
        << "damping_inherent = " << d(config.plant.damping_inherent) << "\n"
        << "time_step = " << d(config.plant.time_step) << "\n\n";
    // round the derived rpm to 1e-9 so stock values print clean
    const double rpm =
        std::round(config.flywheel.spin_rate * 60.0 / (2.0 * std::numbers::pi) * 1e9) / 1e9;
    out << "[cmg]\n"
        << "flywheel_inertia = " << d(config.flywheel.inertia_fw) << "\n"
        << "spin_rate_rpm = " << d(rpm) << "\n"
        << "rate_limit = " << d(config.cmg.rate_limit) << "\n"
        << "angle_min_deg = " << d(rad_to_deg(config.cmg.angle_min)) << "\n"
        << "angle_max_deg = " << d(rad_to_deg(config.cmg.angle_max)) << "\n"
        << "initial_angle_deg = " << d(rad_to_deg(config.cmg.phi)) << "\n\n";
    out << "[imu]\n"
        << "sample_rate = " << d(config.imu.sample_rate) << "\n"
        << "gyro_noise_std = " << d(config.imu.gyro_noise_std) << "\n"
        << "quantization = " << d(config.imu.quantization) << "\n"
        << "filter_cutoff = " << d(config.imu.filter_cutoff) << "\n"
        << "seed = " << config.imu.seed << "\n\n";
    out << "[swing]\n"
        << "amplitude = " << d(config.swing.amplitude) << "\n"
        << "frequency = " << d(config.swing.frequency) << "\n"
        << "n_swings = " << config.swing.n_swings << "\n"
        << "rest_between = " << d(config.swing.rest_between) << "\n"
        << "shape = " << shape_name(config.swing.shape) << "\n\n";
    out << "[conditions]\n";
    for (const Condition& c : config.conditions) {
        out << c.name << ".delta_I = " << d(c.params.delta_inertia) << "\n"
            << c.name << ".delta_D = " << d(c.params.delta_damping) << "\n"
            << c.name << ".k_r = " << d(c.params.k_r) << "\n"
            << c.name << ".c_r = " << d(c.params.c_r) << "\n"
            << c.name << ".tip_inertia = " << d(c.params.tip_inertia) << "\n";
    }
    if (!out) {
        throw ConfigError("write failed for config file " + path.string());
    }
}

}  // namespace gyrohap
