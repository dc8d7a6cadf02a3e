#include "qbattery/circuits.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qbattery/basis.hpp"
#include "qbattery/fidelity.hpp"
#include "qbattery/operators.hpp"

namespace qbattery {

namespace {
constexpr double kPi = std::numbers::pi;
}

double stabilizer_expectation(const QuantumState& state, const std::string& pauli) {
    if (state.basis != BasisTag::Dressed) throw std::invalid_argument("stabilizers act on dressed states");
    const Matrix p = pauli_string_matrix(state.config, pauli);
    const Complex e = state.amplitudes.dot(p * state.amplitudes);
    return std::real(e);
}

BranchPolicy branch_policy_from_string(const std::string& name) {
    if (name == "sample") return BranchPolicy::Sample;
    if (name == "zero") return BranchPolicy::PostSelectZero;
    if (name == "one") return BranchPolicy::PostSelectOne;
    if (name == "both") return BranchPolicy::BothBranches;
    throw std::invalid_argument("unknown branch policy: " + name);
}

nlohmann::json GateRecord::to_json() const {
    return {{"name", name},
            {"schedule", schedule.to_json()},
            {"fidelity_to_target", fidelity_to_target},
            {"evaluations", evaluations},
            {"replaces_previous", replaces_previous}};
}

nlohmann::json MeasurementRecord::to_json() const {
    return {{"qubit", qubit}, {"outcome", outcome}, {"probability", probability}};
}

nlohmann::json CircuitRun::to_json(bool include_state) const {
    nlohmann::json gates_json = nlohmann::json::array();
    for (const auto& g : gates) gates_json.push_back(g.to_json());
    nlohmann::json meas_json = nlohmann::json::array();
    for (const auto& m : measurements) meas_json.push_back(m.to_json());
    nlohmann::json j = {{"seed", seed},
                        {"label", label},
                        {"gates", gates_json},
                        {"measurements", meas_json},
                        {"stabilizers", stabilizers},
                        {"logical_fidelity", logical_fidelity}};
    if (include_state) {
        nlohmann::json amps = nlohmann::json::array();
        for (int i = 0; i < final_state.amplitudes.size(); ++i) {
            amps.push_back({final_state.amplitudes(i).real(), final_state.amplitudes(i).imag()});
        }
        j["final_state"] = amps;
    }
    return j;
}

nlohmann::json EncodePlusResult::to_json(bool include_state) const {
    nlohmann::json branches_json = nlohmann::json::array();
    for (const auto& b : branches) branches_json.push_back(b.to_json(include_state));
    return {{"branches", branches_json}, {"branch_probability_sum", branch_probability_sum}};
}

SystemConfig qec_default_config() {
    SystemConfig c;
    c.n_qubits = 5;
    c.n_fb = 7;
    c.g = 1.0;
    return c;
}

Vector ideal_ghz(const SystemConfig& config, int ancilla_outcome) {
    config.validate_dressed();
    if (config.n_qubits != 5) throw std::invalid_argument("the QEC circuit uses 5 qubits");
    Vector v = Vector::Zero(config.dressed_dim());
    const unsigned anc = ancilla_outcome ? 1u : 0u;  // ancilla = qubit 4 = least significant bit
    v(anc) = 1.0 / std::sqrt(2.0);          // |0000> (x) |anc>
    v(0b11110u | anc) = 1.0 / std::sqrt(2.0);  // |1111> (x) |anc>
    return v;
}

Vector ideal_logical_plus(const SystemConfig& config, int ancilla_outcome) {
    const Vector ghz = ideal_ghz(config, ancilla_outcome);
    const Matrix iixx = pauli_string_matrix(config, "IIXXI");
    Vector v = ghz + iixx * ghz;
    return v / v.norm();
}

namespace {

struct GateStage {
    std::string name;
    int segments = 1;
    Vector target;  // ideal state after this gate
    std::vector<Eigen::VectorXd> seeds;
};

ScheduleAnsatz circuit_ansatz(const SystemConfig& config, int segments, double park) {
    ScheduleAnsatz a;
    a.n_segments = segments;
    a.free_qubits.resize(config.n_qubits);
    for (int q = 0; q < config.n_qubits; ++q) a.free_qubits[q] = q;
    a.base_delta = DetuningVector::Constant(config.n_qubits, park);
    return a;
}

/// Seed helper: one parameter vector from per-segment (delta values, duration).
Eigen::VectorXd make_seed(const ScheduleAnsatz& ansatz,
                          const std::vector<std::pair<DetuningVector, double>>& segs) {
    Eigen::VectorXd x(ansatz.n_params());
    const int pps = ansatz.params_per_segment();
    for (int s = 0; s < ansatz.n_segments; ++s) {
        const auto& [delta, dur] = segs[s];
        for (size_t q = 0; q < ansatz.free_qubits.size(); ++q) x(s * pps + q) = delta(ansatz.free_qubits[q]);
        x(s * pps + pps - 1) = dur;
    }
    return x;
}

struct StageResult {
    GateRecord record;
    QuantumState state;
};

StageResult run_stage(const QuantumState& state, const GateStage& stage, const EncodeOptions& opts,
                      int gate_index) {
    OptimizationProblem problem;
    problem.config = state.config;
    problem.ansatz = circuit_ansatz(state.config, stage.segments, opts.park);
    problem.ansatz.duration_hi = 250.0;
    problem.kind = ObjectiveKind::StateFidelity;
    problem.initial_state = state.amplitudes;
    problem.target_state = stage.target;
    problem.analytic_seeds = stage.seeds;
    problem.opts.starts = opts.starts;
    problem.opts.seed = opts.seed + 7919 * static_cast<uint64_t>(gate_index);
    problem.opts.max_evals_per_start = opts.max_evals_per_start;
    problem.opts.max_total_evals = opts.max_total_evals;
    problem.opts.stop_when_below = 2e-6;

    const OptimizationResult res = solve(problem);
    StageResult out;
    out.record.name = stage.name;
    out.record.schedule = res.schedule;
    out.record.fidelity_to_target = res.fidelity;
    out.record.evaluations = res.evaluations;
    out.state = run_schedule(state, res.schedule);
    return out;
}

/// Ideal |0>_L preparation chain in the dressed representation.
struct ZeroChain {
    Vector after_charge;  // product pi/2 state on the data qubits
    Vector after_ent;     // entangled cat
    Vector ghz;
};

ZeroChain ideal_zero_chain(const SystemConfig& config, double ent_delta) {
    ZeroChain chain;
    Vector psi = ground_state(config).amplitudes;
    for (int q = 0; q < 4; ++q) psi = dressed_rotation(config, q, 'X', 0.5 * kPi) * psi;
    chain.after_charge = psi;
    const double t_ent = entangling_time(config, ent_delta);
    chain.after_ent = dispersive_subset_propagator(config, {0, 1, 2, 3}, ent_delta, t_ent) * psi;
    chain.ghz = ideal_ghz(config);
    return chain;
}

std::vector<Eigen::VectorXd> charge_seeds(const SystemConfig& config, const ScheduleAnsatz& ansatz,
                                          double park) {
    // Resonant quarter pulse on the data qubits, split across the segments.
    const double t_total = kPi / (4.0 * config.g * std::sqrt(static_cast<double>(config.n_fb)));
    std::vector<Eigen::VectorXd> seeds;
    for (double scale : {1.0, 1.3, 0.7}) {
        std::vector<std::pair<DetuningVector, double>> segs;
        for (int s = 0; s < ansatz.n_segments; ++s) {
            DetuningVector d = DetuningVector::Zero(config.n_qubits);
            d(4) = park;
            segs.push_back({d, scale * t_total / ansatz.n_segments});
        }
        seeds.push_back(make_seed(ansatz, segs));
    }
    return seeds;
}

std::vector<Eigen::VectorXd> ent_seeds(const SystemConfig& config, const ScheduleAnsatz& ansatz,
                                       const std::vector<int>& qubits, double delta, double park) {
    const double t_ent = entangling_time(config, delta);
    std::vector<Eigen::VectorXd> seeds;
    for (double dscale : {1.0, 0.995, 1.005}) {
        std::vector<std::pair<DetuningVector, double>> segs;
        DetuningVector d = DetuningVector::Constant(config.n_qubits, park);
        for (int q : qubits) d(q) = delta * dscale;
        segs.push_back({d, t_ent});
        seeds.push_back(make_seed(ansatz, segs));
    }
    return seeds;
}

std::vector<Eigen::VectorXd> local_seeds(const SystemConfig& config, const ScheduleAnsatz& ansatz,
                                         double park) {
    // Z-flavored: strong detunings, short segments; plus gentle resonant taps.
    std::vector<Eigen::VectorXd> seeds;
    for (double d0 : {park, -park, 8.0, -8.0}) {
        std::vector<std::pair<DetuningVector, double>> segs;
        for (int s = 0; s < ansatz.n_segments; ++s) {
            DetuningVector d = DetuningVector::Constant(config.n_qubits, d0);
            d(4) = park;
            segs.push_back({d, 0.3 + 0.1 * s});
        }
        seeds.push_back(make_seed(ansatz, segs));
    }
    return seeds;
}

std::vector<Eigen::VectorXd> ancilla_pulse_seeds(const SystemConfig& config,
                                                 const ScheduleAnsatz& ansatz, double park) {
    // The probe pi/2 must act the same on both battery branches of the GHZ
    // state (photon numbers n_fb and n_fb - 4). Seed with durations that
    // satisfy the matching condition Omega_hi t = Omega_lo t + 2 pi j while
    // landing the rotation angle near pi/2 mod 2 pi.
    const double w_hi = 2.0 * config.g * std::sqrt(static_cast<double>(config.n_fb));
    const double w_lo = 2.0 * config.g * std::sqrt(static_cast<double>(std::max(1, config.n_fb - 4)));
    double best_t = kPi / (2.0 * w_hi);
    double best_miss = 10.0;
    for (int j = 1; j <= 14; ++j) {
        const double t = 2.0 * kPi * j / (w_hi - w_lo);
        const double theta = std::fmod(w_hi * t, 2.0 * kPi);
        const double miss = std::abs(theta - 0.5 * kPi);
        if (miss < best_miss) {
            best_miss = miss;
            best_t = t;
        }
    }
    std::vector<Eigen::VectorXd> seeds;
    for (double t0 : {best_t, kPi / (2.0 * w_hi)}) {
        std::vector<std::pair<DetuningVector, double>> segs;
        for (int s = 0; s < ansatz.n_segments; ++s) {
            DetuningVector d = DetuningVector::Constant(config.n_qubits, park);
            d(4) = 0.0;
            segs.push_back({d, t0 / ansatz.n_segments});
        }
        seeds.push_back(make_seed(ansatz, segs));
    }
    return seeds;
}

void add_stabilizers(CircuitRun& run, const QuantumState& state) {
    for (const char* p : {"XXXXI", "ZZIII", "IIZZI", "IZZII", "IIXXI"}) {
        run.stabilizers[std::string(p).substr(0, 4)] = stabilizer_expectation(state, p);
    }
}

StageResult polish_sequence(const QuantumState& initial, const Vector& target,
                            const std::vector<GateRecord>& records, const EncodeOptions& opts,
                            int gate_index) {
    int total_segments = 0;
    for (const auto& r : records) total_segments += static_cast<int>(r.schedule.segments.size());
    ScheduleAnsatz ansatz = circuit_ansatz(initial.config, total_segments, opts.park);
    ansatz.duration_hi = 250.0;
    DetuningSchedule joined;
    for (const auto& r : records) {
        for (const auto& seg : r.schedule.segments) joined.segments.push_back(seg);
    }
    OptimizationProblem problem;
    problem.config = initial.config;
    problem.ansatz = ansatz;
    problem.kind = ObjectiveKind::StateFidelity;
    problem.initial_state = initial.amplitudes;
    problem.target_state = target;
    problem.analytic_seeds = {ansatz.from_schedule(joined)};
    problem.opts.starts = 1;  // pure refinement of the assembled schedule
    problem.opts.seed = opts.seed + 7919 * static_cast<uint64_t>(gate_index);
    problem.opts.max_evals_per_start = 4 * opts.max_evals_per_start;
    problem.opts.max_total_evals = opts.max_total_evals;
    problem.opts.stop_when_below = 5e-7;

    const OptimizationResult res = solve(problem);
    StageResult out;
    out.record.name = "end_to_end_polish";
    out.record.schedule = res.schedule;
    out.record.fidelity_to_target = res.fidelity;
    out.record.evaluations = res.evaluations;
    out.record.replaces_previous = true;
    QuantumState start = initial;
    out.state = run_schedule(start, res.schedule);
    return out;
}

}  // namespace

CircuitRun encode_logical_zero(const SystemConfig& config, const EncodeOptions& opts) {
    config.validate_dressed();
    if (config.n_qubits != 5) throw std::invalid_argument("the QEC circuit uses 5 qubits");

    const ZeroChain chain = ideal_zero_chain(config, opts.ent_delta);
    CircuitRun run;
    run.seed = opts.seed;
    run.label = "logical_zero";

    QuantumState state = ground_state(config);
    const QuantumState initial = state;

    GateStage charge{"collective_charge_pi_half", opts.charge_steps, chain.after_charge, {}};
    {
        ScheduleAnsatz a = circuit_ansatz(config, charge.segments, opts.park);
        charge.seeds = charge_seeds(config, a, opts.park);
    }
    GateStage ent{"entangling_4q", 1, chain.after_ent, {}};
    {
        ScheduleAnsatz a = circuit_ansatz(config, 1, opts.park);
        ent.seeds = ent_seeds(config, a, {0, 1, 2, 3}, opts.ent_delta, opts.park);
    }
    GateStage local{"local_to_ghz", opts.local_steps, chain.ghz, {}};
    {
        ScheduleAnsatz a = circuit_ansatz(config, local.segments, opts.park);
        local.seeds = local_seeds(config, a, opts.park);
    }

    int gate_index = 0;
    for (const GateStage& stage : {charge, ent, local}) {
        StageResult r = run_stage(state, stage, opts, gate_index++);
        state = r.state;
        run.gates.push_back(std::move(r.record));
    }

    if (opts.end_to_end_polish) {
        StageResult polished = polish_sequence(initial, chain.ghz, run.gates, opts, gate_index++);
        if (polished.record.fidelity_to_target > state_fidelity(chain.ghz, state.amplitudes)) {
            state = polished.state;
            run.gates.push_back(std::move(polished.record));
        }
    }

    run.final_state = state;
    run.logical_fidelity = state_fidelity(chain.ghz, state.amplitudes);
    add_stabilizers(run, state);
    return run;
}

namespace {

struct ProbeChain {
    Vector pre_measurement;
    std::array<Vector, 2> ideal_branch;       // ideal post-measurement states
    std::array<double, 2> ideal_probability;  // Born probabilities
    std::array<bool, 2> needs_sign_fix;       // IIXX = -1 branch
};

ProbeChain ideal_probe_chain(const SystemConfig& config, double ent_delta) {
    ProbeChain chain;
    Vector psi = ideal_ghz(config);
    const Matrix r_anc = dressed_rotation(config, 4, 'X', 0.5 * kPi);
    const Matrix u_local =
        dressed_rotation(config, 2, 'Y', -0.5 * kPi) * dressed_rotation(config, 3, 'Y', -0.5 * kPi);
    const double t_ent = entangling_time(config, ent_delta);
    const Matrix u_ent = dispersive_subset_propagator(config, {2, 3}, ent_delta, t_ent);

    psi = r_anc * psi;
    psi = u_local.adjoint() * psi;
    psi = u_ent * psi;
    psi = u_local * psi;
    psi = r_anc * psi;
    chain.pre_measurement = psi;

    QuantumState s;
    s.config = config;
    s.basis = BasisTag::Dressed;
    s.amplitudes = psi;
    for (int outcome : {0, 1}) {
        const MeasurementOutcome m = project_qubit(s, 4, outcome);
        chain.ideal_branch[outcome] = m.post_state.amplitudes;
        chain.ideal_probability[outcome] = m.probability;
        chain.needs_sign_fix[outcome] = stabilizer_expectation(m.post_state, "IIXXI") < 0.0;
    }
    return chain;
}

}  // namespace

EncodePlusResult encode_logical_plus(const SystemConfig& config, const EncodeOptions& opts) {
    config.validate_dressed();
    const CircuitRun zero_run = encode_logical_zero(config, opts);
    const ProbeChain chain = ideal_probe_chain(config, opts.ent_delta);

    // Probe stages, optimized against the ideal chain applied to the ideal GHZ.
    Vector ideal = ideal_ghz(config);
    const Matrix r_anc = dressed_rotation(config, 4, 'X', 0.5 * kPi);
    const Matrix u_local =
        dressed_rotation(config, 2, 'Y', -0.5 * kPi) * dressed_rotation(config, 3, 'Y', -0.5 * kPi);
    const double t_ent = entangling_time(config, opts.ent_delta);
    const Matrix u_ent = dispersive_subset_propagator(config, {2, 3}, opts.ent_delta, t_ent);

    QuantumState state = zero_run.final_state;
    std::vector<GateRecord> probe_records;

    std::vector<GateStage> stages;
    {
        ideal = r_anc * ideal;
        GateStage s{"probe_pi_half_a", opts.ancilla_steps, ideal, {}};
        ScheduleAnsatz a = circuit_ansatz(config, s.segments, opts.park);
        s.seeds = ancilla_pulse_seeds(config, a, opts.park);
        stages.push_back(std::move(s));
    }
    {
        ideal = u_local.adjoint() * ideal;
        GateStage s{"probe_basis_change", opts.correction_steps, ideal, {}};
        ScheduleAnsatz a = circuit_ansatz(config, s.segments, opts.park);
        s.seeds = local_seeds(config, a, opts.park);
        stages.push_back(std::move(s));
    }
    {
        ideal = u_ent * ideal;
        GateStage s{"probe_entangling_2q", 1, ideal, {}};
        ScheduleAnsatz a = circuit_ansatz(config, 1, opts.park);
        s.seeds = ent_seeds(config, a, {2, 3}, opts.ent_delta, opts.park);
        stages.push_back(std::move(s));
    }
    {
        ideal = u_local * ideal;
        GateStage s{"probe_basis_restore", opts.correction_steps, ideal, {}};
        ScheduleAnsatz a = circuit_ansatz(config, s.segments, opts.park);
        s.seeds = local_seeds(config, a, opts.park);
        stages.push_back(std::move(s));
    }
    {
        ideal = r_anc * ideal;
        GateStage s{"probe_pi_half_b", opts.ancilla_steps, ideal, {}};
        ScheduleAnsatz a = circuit_ansatz(config, s.segments, opts.park);
        s.seeds = ancilla_pulse_seeds(config, a, opts.park);
        stages.push_back(std::move(s));
    }

    int gate_index = 100;
    for (const GateStage& stage : stages) {
        StageResult r = run_stage(state, stage, opts, gate_index++);
        state = r.state;
        probe_records.push_back(std::move(r.record));
    }

    if (opts.end_to_end_polish) {
        StageResult polished =
            polish_sequence(zero_run.final_state, chain.pre_measurement, probe_records, opts, gate_index++);
        if (polished.record.fidelity_to_target >
            state_fidelity(chain.pre_measurement, state.amplitudes)) {
            state = polished.state;
            probe_records.push_back(std::move(polished.record));
        }
    }

    // Mid-circuit measurement of the ancilla.
    std::vector<int> outcomes;
    std::mt19937_64 rng(opts.seed);
    switch (opts.policy) {
        case BranchPolicy::Sample: outcomes = {measure_qubit(state, 4, rng).outcome}; break;
        case BranchPolicy::PostSelectZero: outcomes = {0}; break;
        case BranchPolicy::PostSelectOne: outcomes = {1}; break;
        case BranchPolicy::BothBranches: outcomes = {0, 1}; break;
    }

    EncodePlusResult result;
    for (int outcome : outcomes) {
        const MeasurementOutcome m = project_qubit(state, 4, outcome);
        result.branch_probability_sum += m.probability;
        CircuitRun run;
        run.seed = opts.seed;
        run.label = "logical_plus_branch_" + std::to_string(outcome);
        run.gates = zero_run.gates;
        for (const auto& r : probe_records) run.gates.push_back(r);
        run.measurements.push_back({4, outcome, m.probability});

        // Branch-dependent correction: the -1 branch needs Z on q0 and q2;
        // both branches get an optimized phase cleanup toward |+>_L.
        const Vector target = ideal_logical_plus(config, outcome);
        GateStage fix{"branch_correction", opts.correction_steps, target, {}};
        ScheduleAnsatz a = circuit_ansatz(config, fix.segments, opts.park);
        fix.seeds = local_seeds(config, a, opts.park);
        StageResult r = run_stage(m.post_state, fix, opts, gate_index + outcome);
        run.gates.push_back(r.record);
        run.final_state = r.state;
        run.logical_fidelity = state_fidelity(target, r.state.amplitudes);
        add_stabilizers(run, r.state);
        result.branches.push_back(std::move(run));
    }
    return result;
}

}  // namespace qbattery
