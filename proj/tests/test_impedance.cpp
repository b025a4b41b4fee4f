#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gyrohap/harness.hpp"
#include "gyrohap/impedance.hpp"

using namespace gyrohap;

namespace {

// Minimum-jerk stroke acceleration: displacement D over [0, T], zero outside.
double stroke_accel(double D, double T, double t) {
    if (t < 0.0 || t > T) {
        return 0.0;
    }
    const double u = t / T;
    return D / (T * T) * (60.0 * u - 180.0 * u * u + 120.0 * u * u * u);
}

struct RingTrace {
    std::vector<double> t;
    std::vector<double> torque;
};

RingTrace ring_after_stroke(const ImpedanceParams& params, double duration, double dt) {
    RingTrace trace;
    ElasticState state;
    for (double t = 0.0; t <= duration; t += dt) {
        const auto r = elastic_step(state, stroke_accel(0.5, 0.5, t), dt, params);
        state = r.state;
        trace.t.push_back(t);
        trace.torque.push_back(r.torque);
    }
    return trace;
}

// Least-squares fit of ln|peak| over the local maxima of |y|; returns the
// decay time constant.
double fit_decay_constant(const std::vector<double>& t, const std::vector<double>& y,
                          double t_from) {
    std::vector<double> pt, pv;
    for (size_t i = 1; i + 1 < t.size(); ++i) {
        if (t[i] < t_from) {
            continue;
        }
        const double a = std::abs(y[i]);
        if (a > std::abs(y[i - 1]) && a >= std::abs(y[i + 1]) && a > 0.0) {
            pt.push_back(t[i]);
            pv.push_back(std::log(a));
        }
    }
    REQUIRE(pt.size() >= 4);
    const double n = static_cast<double>(pt.size());
    double st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
    for (size_t i = 0; i < pt.size(); ++i) {
        st += pt[i];
        sv += pv[i];
        stt += pt[i] * pt[i];
        stv += pt[i] * pv[i];
    }
    const double slope = (n * stv - st * sv) / (n * stt - st * st);
    return -1.0 / slope;
}

}  // namespace

TEST_SUITE_BEGIN("impedance");

TEST_CASE("zero elastic gains give zero torque under any motion") {
    ImpedanceParams params;  // k_r = c_r = 0
    ElasticState state;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> accel(0.0, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const auto r = elastic_step(state, accel(rng), 1e-3, params);
        state = r.state;
        CHECK(r.torque == 0.0);
    }
}

TEST_CASE("static bend produces T_e = -k_r * dtheta") {
    ImpedanceParams params;
    params.k_r = 0.2;
    ElasticState state;
    state.theta2 = 0.1;  // tip ahead of the base by 0.1 rad, both at rest
    const auto r = elastic_step(state, 0.0, 1e-3, params);
    CHECK(r.torque == doctest::Approx(-0.02).epsilon(1e-9));
}

TEST_CASE("stock elastic gains ring near 2 Hz and decay with tau = 2 I / c_r") {
    ImpedanceParams params;
    params.k_r = 0.2;
    params.c_r = 0.001;
    params.tip_inertia = 1.27e-3;

    const RingTrace trace = ring_after_stroke(params, 8.0, 1e-3);

    std::vector<double> rt, rv;
    for (size_t i = 0; i < trace.t.size(); ++i) {
        if (trace.t[i] >= 1.0) {
            rt.push_back(trace.t[i]);
            rv.push_back(trace.torque[i]);
        }
    }
    const auto freq = dominant_frequency(rt, rv);
    REQUIRE(freq.has_value());
    CHECK(std::abs(*freq - 2.0) <= 0.1);

    const double tau = fit_decay_constant(trace.t, trace.torque, 1.0);
    const double expected = 2.0 * params.tip_inertia / params.c_r;  // 2.54 s
    CHECK(std::abs(tau - expected) / expected <= 0.10);
}

TEST_CASE("ring frequency tracks sqrt(k_r/I)/2pi within 2%") {
    for (double k_r : {0.05, 0.2, 0.8}) {
        ImpedanceParams params;
        params.k_r = k_r;
        params.c_r = 1e-4;
        params.tip_inertia = 1.27e-3;

        const RingTrace trace = ring_after_stroke(params, 6.0, 1e-3);
        std::vector<double> rt, rv;
        for (size_t i = 0; i < trace.t.size(); ++i) {
            if (trace.t[i] >= 1.0) {
                rt.push_back(trace.t[i]);
                rv.push_back(trace.torque[i]);
            }
        }
        const auto freq = dominant_frequency(rt, rv);
        REQUIRE(freq.has_value());
        const double expected =
            std::sqrt(k_r / params.tip_inertia) / (2.0 * std::numbers::pi);
        CHECK(std::abs(*freq - expected) / expected <= 0.02);
    }
}

TEST_CASE("zero base acceleration from the zero state stays silent") {
    ImpedanceParams params;
    params.k_r = 0.2;
    params.c_r = 0.001;
    ElasticState state = ElasticState::reset();
    for (int i = 0; i < 5000; ++i) {
        const auto r = elastic_step(state, 0.0, 1e-3, params);
        state = r.state;
        CHECK(r.torque == 0.0);
    }
}

TEST_CASE("generated torque substitutions") {
    ImpedanceParams inertia_up;
    inertia_up.delta_inertia = 0.002;
    CHECK(generated_torque(0.0, 1.0, 0.0, inertia_up) == doctest::Approx(-0.002));

    ImpedanceParams damping_down;
    damping_down.delta_damping = -0.02;
    CHECK(generated_torque(1.0, 0.0, 0.0, damping_down) == doctest::Approx(0.02));

    ImpedanceParams zero;
    CHECK(generated_torque(3.7, -12.0, 0.0, zero) == 0.0);
}

TEST_CASE("generated torque scales bit-exactly under binary scaling") {
    ImpedanceParams params;
    params.delta_inertia = 0.002;
    params.delta_damping = -0.013;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> dist(0.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double w = dist(rng), a = dist(rng), te = dist(rng);
        for (double s : {0.5, 2.0, 1024.0}) {
            CHECK(generated_torque(s * w, s * a, s * te, params) ==
                  s * generated_torque(w, a, te, params));
        }
    }
}

TEST_CASE("pure damping torque is always dissipative (and energizing when negative)") {
    ImpedanceParams pos;
    pos.delta_damping = 0.02;
    ImpedanceParams neg;
    neg.delta_damping = -0.02;
    std::mt19937_64 rng(13);
    std::normal_distribution<double> dist(0.0, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const double w = dist(rng);
        CHECK(generated_torque(w, 0.0, 0.0, pos) * w <= 0.0);
        CHECK(generated_torque(w, 0.0, 0.0, neg) * w >= 0.0);
    }
}

TEST_CASE("stock condition table") {
    const auto& conditions = table1_conditions();
    REQUIRE(conditions.size() == 5);

    const Condition* inertia = find_condition("increased-inertia");
    REQUIRE(inertia != nullptr);
    CHECK(inertia->params.delta_inertia == 0.002);
    CHECK(inertia->params.delta_damping == 0.0);
    CHECK(inertia->params.k_r == 0.0);
    CHECK(inertia->params.c_r == 0.0);

    const Condition* elastic = find_condition("elasticity-increase");
    REQUIRE(elastic != nullptr);
    CHECK(elastic->params.k_r == 0.2);
    CHECK(elastic->params.c_r == 0.001);

    CHECK(find_condition("decreased-inertia")->params.delta_inertia == -0.002);
    CHECK(find_condition("damping-increase")->params.delta_damping == 0.02);
    CHECK(find_condition("damping-decrease")->params.delta_damping == -0.02);
    CHECK(find_condition("no-such-condition") == nullptr);
}

TEST_CASE("divergence is flagged, not thrown") {
    ImpedanceParams params;
    params.k_r = 2e5;  // far beyond the stable step size
    params.c_r = 0.0;
    params.tip_inertia = 1.27e-3;
    ElasticState state;
    bool diverged = false;
    for (double t = 0.0; t < 2.0 && !diverged; t += 1e-3) {
        const auto r = elastic_step(state, stroke_accel(0.5, 0.5, t), 1e-3, params);
        state = r.state;
        diverged = r.diverged;
    }
    CHECK(diverged);
}

TEST_CASE("parameter validation") {
    ImpedanceParams bad;
    bad.k_r = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ImpedanceParams{};
    bad.c_r = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ImpedanceParams{};
    bad.tip_inertia = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    ImpedanceParams ok;
    ok.delta_inertia = -0.002;  // negative deltas are legitimate
    ok.delta_damping = -0.02;
    CHECK_NOTHROW(ok.validate());
}

TEST_SUITE_END();
