#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gyrohap/config.hpp"
#include "gyrohap/errors.hpp"

using namespace gyrohap;

namespace {

std::filesystem::path write_temp_config(const char* name, const std::string& body) {
    const auto dir = std::filesystem::temp_directory_path() / "gyrohap_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << body;
    return path;
}

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("defaults are valid and carry the five stock conditions") {
    const RunConfig cfg = default_run_config();
    CHECK_NOTHROW(cfg.validate());
    REQUIRE(cfg.conditions.size() == 5);
    CHECK(cfg.plant.inertia_total == doctest::Approx(1.27e-3));
    CHECK(cfg.flywheel.inertia_fw == doctest::Approx(1.27e-5));
    // elastic tip inertia is tied to the plant inertia
    CHECK(cfg.conditions[4].params.tip_inertia == cfg.plant.inertia_total);
}

TEST_CASE("config round-trips through save and load") {
    RunConfig cfg = default_run_config();
    cfg.swing.amplitude = 0.73;
    cfg.swing.shape = SwingShape::Sinusoid;
    cfg.imu.seed = 77;
    cfg.cmg.rate_limit = 15.0;

    const auto path = write_temp_config("roundtrip.ini", "");
    save_run_config(cfg, path);
    const RunConfig loaded = load_run_config(path);

    CHECK(loaded.swing.amplitude == cfg.swing.amplitude);
    CHECK(loaded.swing.shape == SwingShape::Sinusoid);
    CHECK(loaded.imu.seed == 77);
    CHECK(loaded.cmg.rate_limit == 15.0);
    CHECK(loaded.plant.inertia_total == cfg.plant.inertia_total);
    REQUIRE(loaded.conditions.size() == 5);
    CHECK(loaded.conditions[4].params.k_r == 0.2);
    CHECK(loaded.conditions[4].params.c_r == 0.001);
}

TEST_CASE("partial files override only the given keys") {
    const auto path = write_temp_config("partial.ini",
                                        "[swing]\n"
                                        "amplitude = 0.25\n"
                                        "\n"
                                        "[plant]\n"
                                        "inertia_total = 0.002\n");
    const RunConfig cfg = load_run_config(path);
    CHECK(cfg.swing.amplitude == 0.25);
    CHECK(cfg.swing.frequency == 1.0);  // default kept
    CHECK(cfg.plant.inertia_total == 0.002);
    // stock conditions inherit the overridden plant inertia as tip inertia
    CHECK(cfg.conditions[4].params.tip_inertia == 0.002);
}

TEST_CASE("unknown keys and sections are rejected with the key name") {
    const auto bad_key = write_temp_config("bad_key.ini", "[plant]\ninertia = 1\n");
    CHECK_THROWS_WITH_AS(load_run_config(bad_key), doctest::Contains("inertia"), ConfigError);

    const auto bad_section = write_temp_config("bad_section.ini", "[engine]\nx = 1\n");
    CHECK_THROWS_WITH_AS(load_run_config(bad_section), doctest::Contains("engine"), ConfigError);

    const auto bad_cond =
        write_temp_config("bad_cond.ini", "[conditions]\nfoo.delta_X = 1\n");
    CHECK_THROWS_WITH_AS(load_run_config(bad_cond), doctest::Contains("delta_X"), ConfigError);
}

TEST_CASE("malformed values are rejected") {
    const auto path = write_temp_config("bad_value.ini", "[plant]\ntime_step = fast\n");
    CHECK_THROWS_AS(load_run_config(path), ConfigError);

    const auto no_eq = write_temp_config("no_eq.ini", "[plant]\ntime_step 0.001\n");
    CHECK_THROWS_AS(load_run_config(no_eq), ConfigError);

    const auto invalid = write_temp_config("invalid.ini", "[plant]\ninertia_total = -1\n");
    CHECK_THROWS_AS(load_run_config(invalid), ConfigError);
}

TEST_CASE("a conditions section replaces the stock set") {
    const auto path = write_temp_config("custom_cond.ini",
                                        "[conditions]\n"
                                        "gentle.delta_I = 0.001\n"
                                        "gentle.delta_D = 0.005\n"
                                        "springy.k_r = 0.1\n"
                                        "springy.c_r = 0.002\n"
                                        "springy.tip_inertia = 0.003\n");
    const RunConfig cfg = load_run_config(path);
    REQUIRE(cfg.conditions.size() == 2);
    CHECK(cfg.conditions[0].name == "gentle");
    CHECK(cfg.conditions[0].params.delta_inertia == 0.001);
    CHECK(cfg.conditions[0].params.tip_inertia == cfg.plant.inertia_total);
    CHECK(cfg.conditions[1].name == "springy");
    CHECK(cfg.conditions[1].params.tip_inertia == 0.003);
}

TEST_CASE("comments and blank lines are ignored") {
    const auto path = write_temp_config("comments.ini",
                                        "# top comment\n"
                                        "\n"
                                        "[imu]\n"
                                        "; semicolon comment\n"
                                        "seed = 5\n");
    CHECK(load_run_config(path).imu.seed == 5);
}

TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(load_run_config("/nonexistent/gyrohap.ini"), ConfigError);
}

TEST_SUITE_END();
