#include <doctest.h>

#include <random>

#include "qbattery/basis.hpp"
#include "qbattery/evolution.hpp"
#include "qbattery/fidelity.hpp"
#include "qbattery/gates.hpp"

using namespace qbattery;

namespace {

DetuningSchedule random_schedule(int n_qubits, std::mt19937& rng, int max_segments = 3) {
    std::uniform_real_distribution<double> dur(0.1, 2.0);
    std::uniform_real_distribution<double> det(-5.0, 5.0);
    std::uniform_int_distribution<int> nseg(1, max_segments);
    DetuningSchedule s;
    const int k = nseg(rng);
    for (int j = 0; j < k; ++j) {
        ScheduleSegment seg;
        seg.duration = dur(rng);
        seg.delta.resize(n_qubits);
        for (int q = 0; q < n_qubits; ++q) seg.delta(q) = det(rng);
        s.segments.push_back(seg);
    }
    return s;
}

}  // namespace

TEST_CASE("propagator at t = 0 is the identity") {
    SystemConfig c{2, 1.0, 3, -1};
    const auto u = propagator(build_dressed(c, DetuningVector::Zero(2)), 0.0);
    CHECK((u.matrix - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("resonant pi pulse: |0> -> -i |1> at t = pi/(2 g sqrt(n_fb))") {
    SystemConfig c{1, 1.0, 1, -1};
    const auto u = propagator(build_dressed(c, DetuningVector::Zero(1)), M_PI / 2.0);
    CHECK(std::abs(u.matrix(1, 0) - Complex(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(u.matrix(0, 0)) < 1e-12);
}

TEST_CASE("semigroup property and unitarity") {
    std::mt19937 rng(5);
    SystemConfig c{2, 1.0, 3, -1};
    const auto h = build_dressed(c, DetuningVector::Constant(2, 1.7));
    const auto u1 = propagator(h, 0.41);
    const auto u2 = propagator(h, 1.13);
    const auto u12 = propagator(h, 1.54);
    CHECK((u1.matrix * u2.matrix - u12.matrix).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(u1.unitarity_defect() < 1e-10);
    CHECK(u12.unitarity_defect() < 1e-10);
}

TEST_CASE("single-segment X gate transfers the full population") {
    SystemConfig c{1, 1.0, 4, -1};
    DetuningSchedule s;
    s.segments.push_back({M_PI / 4.0, DetuningVector::Zero(1)});  // pi/(2 g sqrt(4))
    const QuantumState out = run_schedule(ground_state(c), s);
    CHECK(std::abs(excited_population(out, 0) - 1.0) < 1e-12);
}

TEST_CASE("schedule followed by its reverse returns a real initial state") {
    std::mt19937 rng(17);
    SystemConfig c{2, 1.0, 3, -1};
    const DetuningSchedule s = random_schedule(2, rng);
    QuantumState mid = run_schedule(ground_state(c), s);
    mid.amplitudes = mid.amplitudes.conjugate();  // time reversal (real Hamiltonians)
    const QuantumState back = run_schedule(mid, s.reversed());
    CHECK(state_fidelity(back, ground_state(c)) > 1.0 - 1e-10);
}

TEST_CASE("sequential charging is exact in the decoupled-spectator limit") {
    SystemConfig c{2, 1.0, 2, -1};
    DetuningSchedule s;
    ScheduleSegment seg1{M_PI / (2.0 * std::sqrt(2.0)), DetuningVector::Constant(2, kDecoupledPark)};
    seg1.delta(0) = 0.0;
    ScheduleSegment seg2{M_PI / 2.0, DetuningVector::Constant(2, kDecoupledPark)};
    seg2.delta(1) = 0.0;
    s.segments = {seg1, seg2};
    const QuantumState out = run_schedule(ground_state(c), s);
    CHECK(std::norm(out.amplitudes(3)) > 1.0 - 1e-10);
    CHECK(std::abs(s.total_time() - (M_PI / 2.0) * (1.0 / std::sqrt(2.0) + 1.0)) < 1e-12);
}

TEST_CASE("measurement basics") {
    SystemConfig c{2, 1.0, 2, -1};

    SUBCASE("deterministic outcome on a basis state") {
        std::mt19937_64 rng(1);
        const auto m = measure_qubit(basis_state(c, 0b10u), 0, rng);
        CHECK(m.outcome == 1);
        CHECK(m.probability == doctest::Approx(1.0));
        CHECK(state_fidelity(m.post_state, basis_state(c, 0b10u)) > 1.0 - 1e-12);
    }

    SUBCASE("fixed seed gives a deterministic branch") {
        SystemConfig c1{1, 1.0, 2, -1};
        DetuningSchedule s;
        s.segments.push_back({M_PI / (4.0 * std::sqrt(2.0)), DetuningVector::Zero(1)});
        const QuantumState half = run_schedule(ground_state(c1), s);
        std::mt19937_64 rng_a(42), rng_b(42);
        const auto ma = measure_qubit(half, 0, rng_a);
        const auto mb = measure_qubit(half, 0, rng_b);
        CHECK(ma.outcome == mb.outcome);
        CHECK(ma.probability == doctest::Approx(0.5).epsilon(1e-9));
        // collapsing the qubit pins the implied battery photon number
        CHECK(state_fidelity(ma.post_state, basis_state(c1, static_cast<unsigned>(ma.outcome))) >
              1.0 - 1e-12);
    }

    SUBCASE("outcome frequencies match the Born rule within 5 sigma") {
        SystemConfig c1{1, 1.0, 2, -1};
        DetuningSchedule s;
        s.segments.push_back({M_PI / (4.0 * std::sqrt(2.0)), DetuningVector::Zero(1)});
        const QuantumState half = run_schedule(ground_state(c1), s);
        const double p = excited_population(half, 0);
        const int n = 10000;
        int ones = 0;
        for (int i = 0; i < n; ++i) {
            std::mt19937_64 rng(1000 + i);
            ones += measure_qubit(half, 0, rng).outcome;
        }
        const double sigma = std::sqrt(n * p * (1.0 - p));
        CHECK(std::abs(ones - n * p) < 5.0 * sigma);
    }
}

TEST_CASE("norm and energy bookkeeping under random schedules") {
    std::mt19937 rng(99);
    SystemConfig c{2, 1.0, 3, 5};
    for (int trial = 0; trial < 10; ++trial) {
        const DetuningSchedule s = random_schedule(2, rng);
        const QuantumState dressed = run_schedule(ground_state(c), s);
        CHECK(std::abs(dressed.norm() - 1.0) < 1e-12);

        const QuantumState full = run_schedule(ground_state(c, BasisTag::Full), s);
        const Matrix nfb = full_excitation_number(c);
        const double expect = std::real(full.amplitudes.dot(nfb * full.amplitudes));
        CHECK(std::abs(expect - c.n_fb) < 1e-10);
        // dressed bookkeeping: <n_q> + implied photons = n_fb by construction
        CHECK(mean_qubit_excitations(dressed) <= c.n_fb + 1e-12);
    }
}

TEST_CASE("dressed and full representations evolve identically") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 5; ++trial) {
        SystemConfig c{2, 1.0, 3, 3};
        const DetuningSchedule s = random_schedule(2, rng);
        const QuantumState dressed = run_schedule(ground_state(c), s);
        const QuantumState full = run_schedule(ground_state(c, BasisTag::Full), s);
        const Vector restricted = restrict_full_to_dressed(full.amplitudes, c);
        CHECK(std::norm(dressed.amplitudes.dot(restricted)) > 1.0 - 1e-9);
    }
}

TEST_CASE("schedule json round trip and validation") {
    DetuningSchedule s;
    s.segments.push_back({0.25, (DetuningVector(2) << 1.5, -3.0).finished()});
    s.segments.push_back({1.0, (DetuningVector(2) << 0.0, 50.0).finished()});
    const DetuningSchedule back = DetuningSchedule::from_json(s.to_json());
    REQUIRE(back.segments.size() == 2);
    CHECK(back.segments[0].duration == 0.25);
    CHECK(back.segments[1].delta(1) == 50.0);

    DetuningSchedule empty;
    CHECK_THROWS_AS(empty.validate(2), std::invalid_argument);
    DetuningSchedule bad;
    bad.segments.push_back({-1.0, DetuningVector::Zero(2)});
    CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
}
