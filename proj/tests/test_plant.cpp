#include <doctest.h>

#include <limits>
#include <stdexcept>

#include <cmath>
#include <numbers>

#include "gyrohap/errors.hpp"
#include "gyrohap/plant.hpp"

using namespace gyrohap;

TEST_SUITE_BEGIN("plant");

TEST_CASE("zero torque at rest only advances time") {
    PlantParams params;
    PlantState rest;
    const PlantState next = plant_step(rest, 0.0, 0.0, params);
    CHECK(next.theta == 0.0);
    CHECK(next.omega == 0.0);
    CHECK(next.omega_dot == 0.0);
    CHECK(next.time == doctest::Approx(params.time_step));
}

TEST_CASE("unit torque on unit inertia") {
    PlantParams params;
    params.inertia_total = 1.0;
    params.damping_inherent = 0.0;
    params.time_step = 1e-3;
    const PlantState next = plant_step(PlantState{}, 1.0, 0.0, params);
    CHECK(next.omega_dot == doctest::Approx(1.0));
    CHECK(next.omega == doctest::Approx(0.001));
}

TEST_CASE("constant torque ramp matches omega = tau*t/I within 0.1%") {
    PlantParams params;  // default inertia 1.27e-3
    const double tau = 0.01;
    const auto trace = simulate(params, [&](const PlantState&) { return tau; }, 1.0);
    REQUIRE(trace.size() == 1001);
    const double expected = tau * 1.0 / params.inertia_total;  // 7.874...
    CHECK(std::abs(trace.back().omega - expected) / expected < 1e-3);
}

TEST_CASE("zero-torque simulate returns all-rest states") {
    PlantParams params;
    const auto trace = simulate(params, [](const PlantState&) { return 0.0; }, 1.0);
    REQUIRE(trace.size() == 1001);
    for (const auto& s : trace) {
        CHECK(s.omega == 0.0);
        CHECK(s.theta == 0.0);
    }
}

TEST_CASE("sinusoidal torque: omega lags torque by a quarter period on pure inertia") {
    PlantParams params;
    const double f = 1.0;
    auto torque = [&](const PlantState& s) {
        return 0.01 * std::sin(2.0 * std::numbers::pi * f * s.time);
    };
    const auto trace = simulate(params, torque, 3.0);

    // locate the last torque peak and the following omega peak
    double t_tau_peak = 0.0, t_omega_peak = 0.0;
    double best_tau = -1.0, best_omega = -1.0;
    for (const auto& s : trace) {
        if (s.time < 2.0 || s.time >= 3.0) {
            continue;
        }
        const double tau = 0.01 * std::sin(2.0 * std::numbers::pi * f * s.time);
        if (tau > best_tau) {
            best_tau = tau;
            t_tau_peak = s.time;
        }
        if (s.omega > best_omega) {
            best_omega = s.omega;
            t_omega_peak = s.time;
        }
    }
    double lag = (t_omega_peak - t_tau_peak) * 2.0 * std::numbers::pi * f;
    if (lag < 0.0) {
        lag += 2.0 * std::numbers::pi;
    }
    CHECK(lag == doctest::Approx(std::numbers::pi / 2.0).epsilon(0.05));
}

TEST_CASE("negative total damping grows the speed envelope monotonically") {
    PlantParams params;
    PlantState initial;
    initial.omega = 0.5;
    // torque source injecting negative damping: tau = +c*omega
    const auto trace = simulate(
        params, [](const PlantState& s) { return 0.005 * s.omega; }, 1.0, initial);
    for (size_t i = 1; i < trace.size(); ++i) {
        CHECK(std::abs(trace[i].omega) >= std::abs(trace[i - 1].omega));
    }
    CHECK(std::abs(trace.back().omega) > std::abs(initial.omega));
}

TEST_CASE("energy bookkeeping: work equals kinetic-energy change within 0.5% per 1000 steps") {
    PlantParams params;
    params.damping_inherent = 0.0;
    PlantState state;
    state.omega = 5.0;

    const double ke0 = 0.5 * params.inertia_total * state.omega * state.omega;
    double work = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double tau = 0.005 * std::sin(2.0 * std::numbers::pi * 1.3 * state.time);
        const PlantState next = plant_step(state, tau, 0.0, params);
        work += tau * (next.theta - state.theta);
        state = next;
    }
    const double dke = 0.5 * params.inertia_total * state.omega * state.omega - ke0;
    CHECK(std::abs(dke - work) <= 0.005 * std::max(std::abs(work), ke0));
}

TEST_CASE("halving the time step changes the final state by < 0.2%") {
    auto torque = [](const PlantState& s) {
        return 0.01 * std::sin(2.0 * std::numbers::pi * 2.0 * s.time) + 0.002;
    };
    PlantParams coarse;
    PlantParams fine = coarse;
    fine.time_step = coarse.time_step / 2.0;
    const auto a = simulate(coarse, torque, 1.0);
    const auto b = simulate(fine, torque, 1.0);
    const double scale = std::max(std::abs(b.back().omega), 1e-9);
    CHECK(std::abs(a.back().omega - b.back().omega) / scale < 2e-3);
}

TEST_CASE("step is deterministic bit for bit") {
    PlantParams params;
    PlantState s;
    s.theta = 0.123;
    s.omega = -4.56;
    const PlantState a = plant_step(s, 0.0123, -0.004, params);
    const PlantState b = plant_step(s, 0.0123, -0.004, params);
    CHECK(a.theta == b.theta);
    CHECK(a.omega == b.omega);
    CHECK(a.omega_dot == b.omega_dot);
    CHECK(a.time == b.time);
}

TEST_CASE("non-finite inputs are rejected") {
    PlantParams params;
    CHECK_THROWS_AS(plant_step(PlantState{}, std::nan(""), 0.0, params), std::invalid_argument);
    PlantState bad;
    bad.omega = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(plant_step(bad, 0.0, 0.0, params), std::invalid_argument);
    PlantParams zero_inertia;
    zero_inertia.inertia_total = 0.0;
    CHECK_THROWS_AS(plant_step(PlantState{}, 0.0, 0.0, zero_inertia), std::invalid_argument);
}

TEST_CASE("failing torque source aborts with a partial-trace diagnostic") {
    PlantParams params;
    auto torque = [](const PlantState& s) {
        if (s.time > 0.5) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return 0.01;
    };
    CHECK_THROWS_WITH_AS(simulate(params, torque, 1.0),
                         doctest::Contains("non-finite"), NumericalError);
}

TEST_SUITE_END();
