#include <doctest.h>

#include "qbattery/fidelity.hpp"
#include "qbattery/gates.hpp"
#include "qbattery/operators.hpp"
#include "qbattery/optimizer.hpp"

using namespace qbattery;

TEST_CASE("nelder-mead minimizes a bounded quadratic") {
    auto f = [](const Eigen::VectorXd& x) {
        return (x(0) - 0.3) * (x(0) - 0.3) + 2.0 * (x(1) + 1.2) * (x(1) + 1.2);
    };
    Eigen::VectorXd x0(2), lo(2), hi(2);
    x0 << 1.0, 1.0;
    lo << -5.0, -5.0;
    hi << 5.0, 5.0;
    const auto r = nelder_mead(f, x0, lo, hi, {});
    CHECK(r.value < 1e-12);
    CHECK(std::abs(r.x(0) - 0.3) < 1e-5);
    CHECK(std::abs(r.x(1) + 1.2) < 1e-5);
    // best-so-far trace is non-increasing
    for (size_t i = 1; i < r.best_trace.size(); ++i) CHECK(r.best_trace[i] <= r.best_trace[i - 1]);
}

TEST_CASE("solve recovers the analytic single-qubit X") {
    SystemConfig c{1, 1.0, 4, -1};
    OptimizationProblem p;
    p.config = c;
    p.ansatz.n_segments = 1;
    p.ansatz.free_qubits = {0};
    p.ansatz.base_delta = DetuningVector::Zero(1);
    p.ansatz.duration_hi = 5.0;
    p.kind = ObjectiveKind::StateFidelity;
    p.target_state = Vector::Zero(2);
    p.target_state(1) = 1.0;
    p.opts.starts = 8;
    p.opts.seed = 3;
    p.opts.stop_when_below = 1e-9;
    const OptimizationResult r = solve(p);
    CHECK(r.fidelity > 1.0 - 1e-8);
    CHECK(r.schedule.segments[0].duration == doctest::Approx(M_PI / 4.0).epsilon(2e-2));
}

TEST_CASE("analytic seeding converges within a few evaluations") {
    SystemConfig c{1, 1.0, 4, -1};
    OptimizationProblem p;
    p.config = c;
    p.ansatz.n_segments = 1;
    p.ansatz.free_qubits = {0};
    p.ansatz.base_delta = DetuningVector::Zero(1);
    p.ansatz.duration_hi = 5.0;
    p.kind = ObjectiveKind::StateFidelity;
    p.target_state = Vector::Zero(2);
    p.target_state(1) = 1.0;
    Eigen::VectorXd seed(2);
    seed << 0.0, M_PI / 4.0;  // closed-form optimum
    p.analytic_seeds = {seed};
    p.opts.starts = 1;
    p.opts.stop_when_below = 1e-8;
    const OptimizationResult r = solve(p);
    CHECK(r.fidelity > 1.0 - 1e-8);
    CHECK(r.evaluations <= 10);
}

TEST_CASE("reproducibility: same seed, same result") {
    SystemConfig c{2, 1.0, 3, -1};
    auto run = [&]() {
        OptimizationProblem p;
        p.config = c;
        p.ansatz.n_segments = 1;
        p.ansatz.free_qubits = {0, 1};
        p.ansatz.base_delta = DetuningVector::Zero(2);
        p.kind = ObjectiveKind::StateFidelity;
        p.target_state = Vector::Zero(4);
        p.target_state(3) = 1.0;
        p.opts.starts = 6;
        p.opts.seed = 12345;
        p.opts.max_evals_per_start = 400;
        return solve(p);
    };
    const OptimizationResult a = run();
    const OptimizationResult b = run();
    CHECK(a.error == b.error);
    CHECK(a.evaluations == b.evaluations);
    REQUIRE(a.schedule.segments.size() == b.schedule.segments.size());
    for (size_t i = 0; i < a.schedule.segments.size(); ++i) {
        CHECK(a.schedule.segments[i].duration == b.schedule.segments[i].duration);
        CHECK((a.schedule.segments[i].delta - b.schedule.segments[i].delta).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("dof bound") {
    CHECK(dof_bound(1) == 2);
    CHECK(dof_bound(2) == 5);
    CHECK(dof_bound(5) == 171);  // (4^5 - 1)/6 = 170.5 rounds up
}

TEST_CASE("two-qubit local gate: one step solves exactly via the closed form") {
    SystemConfig c{2, 1.0, 2, -1};
    const double t_closed = M_PI / (c.g * (std::sqrt(2.0) - 1.0));
    CHECK(t_closed == doctest::Approx(7.5845).epsilon(1e-4));
    const LocalGateResult direct = evaluate_local_gate(c, 0, {{0.0, t_closed}});
    CHECK(direct.worst_pair_fidelity == doctest::Approx(1.0).epsilon(1e-10));

    LocalSearchOptions opts;
    opts.multistart.seed = 7;
    opts.multistart.starts = 24;
    const LocalGateResult searched = local_gate_search(c, 0, 1, opts);
    CHECK(searched.worst_pair_fidelity > 1.0 - 1e-6);
    CHECK(searched.population_transfer > 0.05);
    CHECK(searched.population_transfer < 0.95);
}

TEST_CASE("local gate blocks depend only on the battery occupation") {
    SystemConfig c{3, 1.0, 5, -1};
    const auto blocks = local_gate_blocks(c, {{1.3, 2.0}, {-4.0, 1.1}});
    CHECK(blocks.size() == 3);  // n in {3, 4, 5}
    for (const auto& [n, u] : blocks) {
        CHECK((u.adjoint() * u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("su2 rotation extraction") {
    SystemConfig c{1, 1.0, 1, -1};
    const Matrix rx = dressed_rotation(c, 0, 'X', 0.77);
    const auto [angle, axis] = su2_rotation(rx);
    CHECK(angle == doctest::Approx(0.77));
    CHECK(axis(0) == doctest::Approx(1.0));
    CHECK(std::abs(axis(1)) < 1e-12);
}
