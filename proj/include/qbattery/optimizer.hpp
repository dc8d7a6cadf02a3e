#pragma once

#include <functional>
#include <map>

#include "qbattery/evolution.hpp"

namespace qbattery {

struct NelderMeadOptions {
    int max_evals = 5000;
    double simplex_tol = 1e-9;      // scaled simplex diameter
    double target_error = -1.0;     // stop early when the objective drops below this
    double initial_step = 0.08;     // scaled initial simplex edge
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    long evaluations = 0;
    bool converged = false;
    std::vector<double> best_trace;  // non-increasing best-so-far values
};

/// Bounded Nelder-Mead descent. Parameters are scaled to [0,1] by the box
/// bounds internally; evaluations outside the box are clamped.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi, const NelderMeadOptions& opts = {});

/// Parameterization of a schedule: per segment, one detuning per free qubit
/// plus the duration. Non-free qubits keep base_delta.
struct ScheduleAnsatz {
    int n_segments = 1;
    std::vector<int> free_qubits;
    DetuningVector base_delta;
    double delta_lo = -80.0, delta_hi = 80.0;
    double duration_lo = 1e-3, duration_hi = 200.0;

    int params_per_segment() const { return static_cast<int>(free_qubits.size()) + 1; }
    int n_params() const { return n_segments * params_per_segment(); }
    Eigen::VectorXd lower_bounds() const;
    Eigen::VectorXd upper_bounds() const;
    DetuningSchedule to_schedule(const Eigen::VectorXd& params) const;
    Eigen::VectorXd from_schedule(const DetuningSchedule& schedule) const;
};

enum class ObjectiveKind { StateFidelity, AverageGateFidelity };

struct MultistartOptions {
    int starts = 32;
    uint64_t seed = 0;
    int max_evals_per_start = 5000;
    long max_total_evals = 100000;
    double stop_when_below = -1.0;  // early exit once a start reaches this error
};

struct OptimizationProblem {
    SystemConfig config;
    ScheduleAnsatz ansatz;
    ObjectiveKind kind = ObjectiveKind::StateFidelity;
    Vector initial_state;  // dressed; defaults to |0...0>
    Vector target_state;
    Matrix target_unitary;
    std::vector<Eigen::VectorXd> analytic_seeds;
    MultistartOptions opts;
};

struct OptimizationResult {
    DetuningSchedule schedule;
    double error = 1.0;  // 1 - fidelity
    double fidelity = 0.0;
    long evaluations = 0;
    bool converged = false;
    std::vector<double> best_trace;
};

/// Multi-start derivative-free refinement over the ansatz parameters.
/// Deterministic for a fixed seed (quasi-random start placement).
OptimizationResult solve(const OptimizationProblem& problem);

/// Generic multistart driver for custom objectives (minimization).
OptimizationResult solve_custom(const std::function<double(const Eigen::VectorXd&)>& objective,
                                const ScheduleAnsatz& ansatz,
                                const std::vector<Eigen::VectorXd>& analytic_seeds,
                                const MultistartOptions& opts);

// ---- Local energy-changing gate (SM-S7 style block search) ----

/// 2x2 propagators of a target-qubit schedule for each battery occupation
/// n (spectators frozen): steps given as (detuning, duration) pairs.
std::map<int, Matrix> local_gate_blocks(const SystemConfig& config,
                                        const std::vector<std::pair<double, double>>& steps);

struct LocalGateResult {
    DetuningSchedule schedule;  // full width, spectators parked
    std::vector<std::pair<double, double>> steps;
    std::map<int, Matrix> blocks;      // by subsystem quanta n
    double worst_pair_fidelity = 0.0;  // min over block pairs of 1/4 |Tr(Ua^dag Ub)|^2
    double average_fidelity = 0.0;     // spectator-configuration weighted, vs the n_fb-1 block
    double rotation_angle = 0.0;       // common rotation extracted from the reference block
    Eigen::Vector3d rotation_axis = Eigen::Vector3d::Zero();
    double population_transfer = 0.0;  // |<1|U_ref|0>|^2
    long evaluations = 0;
    bool converged = false;
};

struct LocalSearchOptions {
    MultistartOptions multistart{48, 0, 3000, 200000, 1e-9};
    double park = 50.0;  // park level recorded in the emitted schedule
    double min_transfer = 0.05, max_transfer = 0.95;
};

/// Searches detuning steps on one qubit that realize the same non-trivial
/// rotation for every spectator configuration.
LocalGateResult local_gate_search(const SystemConfig& config, int target_qubit, int n_steps,
                                  const LocalSearchOptions& opts = {});

/// Evaluate a given step sequence with the block metrics (no search).
LocalGateResult evaluate_local_gate(const SystemConfig& config, int target_qubit,
                                    const std::vector<std::pair<double, double>>& steps,
                                    const LocalSearchOptions& opts = {});

/// Rotation (angle in [0, 2pi), unit axis) of a 2x2 unitary, global phase
/// removed.
std::pair<double, Eigen::Vector3d> su2_rotation(const Matrix& u);

/// Detuning steps needed in principle for an arbitrary N-qubit unitary:
/// ceil((4^N - 1) / (N + 1)).
long dof_bound(int n_qubits);

}  // namespace qbattery
