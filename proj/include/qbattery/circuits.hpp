#pragma once

#include <map>

#include "qbattery/gates.hpp"
#include "qbattery/optimizer.hpp"

namespace qbattery {

/// <psi| P |psi> for a tensor-product Pauli string ("XXXXI", letters indexed
/// by qubit, qubit 0 most significant).
double stabilizer_expectation(const QuantumState& state, const std::string& pauli);

enum class BranchPolicy { Sample, PostSelectZero, PostSelectOne, BothBranches };

BranchPolicy branch_policy_from_string(const std::string& name);

struct GateRecord {
    std::string name;
    DetuningSchedule schedule;
    double fidelity_to_target = 0.0;
    long evaluations = 0;
    bool replaces_previous = false;  // end-to-end polish stages re-run the whole sequence

    nlohmann::json to_json() const;
};

struct MeasurementRecord {
    int qubit = 0;
    int outcome = 0;
    double probability = 0.0;

    nlohmann::json to_json() const;
};

struct CircuitRun {
    uint64_t seed = 0;
    std::string label;
    std::vector<GateRecord> gates;
    std::vector<MeasurementRecord> measurements;
    std::map<std::string, double> stabilizers;
    double logical_fidelity = 0.0;
    QuantumState final_state;

    nlohmann::json to_json(bool include_state = false) const;
};

struct EncodeOptions {
    uint64_t seed = 20240915;
    BranchPolicy policy = BranchPolicy::Sample;
    int charge_steps = 3;      // |0...0> -> product pi/2 state
    int local_steps = 3;       // cat -> GHZ local stage
    int ancilla_steps = 2;     // probe pi/2 pulses
    int correction_steps = 2;  // per-branch cleanup
    int starts = 24;
    int max_evals_per_start = 4000;
    long max_total_evals = 100000;  // per gate optimization
    double park = kDefaultPark;
    double ent_delta = 20.0;  // units of g
    bool end_to_end_polish = true;
};

/// The five-qubit system of the flagship experiment: four data qubits plus
/// one ancilla, n_fb = 7. Simulations run in g = 1 units; kQecPhysicalG
/// converts reported times to seconds for the hardware the parameters were
/// chosen for.
SystemConfig qec_default_config();
inline constexpr double kQecPhysicalG = 2.0 * 3.14159265358979323846 * 0.015e9;  // rad/s

/// GHZ on the data qubits (logical |0>), ancilla in |b>.
Vector ideal_ghz(const SystemConfig& config, int ancilla_outcome = 0);
/// Logical |+> = (1 + IIXX) GHZ / sqrt(2), ancilla in |b>.
Vector ideal_logical_plus(const SystemConfig& config, int ancilla_outcome = 0);

/// Encode the logical |0> (4-qubit GHZ) with optimized detuning schedules:
/// charging stage, one 4-qubit entangling gate, local correction stage.
CircuitRun encode_logical_zero(const SystemConfig& config, const EncodeOptions& opts = {});

struct EncodePlusResult {
    std::vector<CircuitRun> branches;  // one run unless policy = BothBranches
    double branch_probability_sum = 0.0;

    nlohmann::json to_json(bool include_state = false) const;
};

/// Encode the logical |+>: logical |0>, then an IIXX parity probe through
/// the ancilla with branch-dependent corrections after the mid-circuit
/// measurement.
EncodePlusResult encode_logical_plus(const SystemConfig& config, const EncodeOptions& opts = {});

}  // namespace qbattery
