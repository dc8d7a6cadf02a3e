#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qbattery/hamiltonian.hpp"

namespace qbattery {

struct QuantumState {
    Vector amplitudes;
    BasisTag basis = BasisTag::Dressed;
    SystemConfig config;

    double norm() const { return amplitudes.norm(); }
    void assert_normalized(double tol = 1e-12) const;
};

/// |0...0> with the battery holding all n_fb quanta.
QuantumState ground_state(const SystemConfig& config, BasisTag basis = BasisTag::Dressed);

/// Dressed computational basis state |bits>.
QuantumState basis_state(const SystemConfig& config, unsigned bits);

/// Full-space product state |0...0> (x) |coherent(n_mean)>.
QuantumState coherent_ground_state(const SystemConfig& config, double n_mean);

struct ScheduleSegment {
    double duration = 0.0;
    DetuningVector delta;
};

/// Ordered piecewise-constant detuning segments, the architecture's only
/// control knob. JSON: {"segments":[{"duration":t,"delta":[...]},...]}.
struct DetuningSchedule {
    std::vector<ScheduleSegment> segments;

    double total_time() const;
    void validate(int n_qubits) const;
    DetuningSchedule reversed() const;  // time-reverse (same segments, reversed order)

    nlohmann::json to_json() const;
    static DetuningSchedule from_json(const nlohmann::json& j);
};

struct Propagator {
    Matrix matrix;
    BasisTag basis = BasisTag::Dressed;

    double unitarity_defect() const;
};

/// U = exp(-i H t) via Hermitian eigendecomposition (exact for constant H).
Propagator propagator(const HermitianOperator& h, double time);

/// Propagator of a whole schedule in the dressed representation.
Propagator schedule_propagator(const SystemConfig& config, const DetuningSchedule& schedule);

/// Propagator of a whole schedule in the full representation.
Propagator schedule_propagator_full(const SystemConfig& config, const DetuningSchedule& schedule);

QuantumState run_schedule(const QuantumState& state, const DetuningSchedule& schedule);

QuantumState apply(const Propagator& u, const QuantumState& state);

/// Spectral cache for scanning observables over time under one Hamiltonian.
class SpectralEvolution {
  public:
    SpectralEvolution(const HermitianOperator& h, const Vector& initial);

    Vector state_at(double t) const;
    /// |<target|psi(t)>|^2 without forming the state (O(dim) per t).
    double overlap_probability(const Vector& target, double t) const;

  private:
    Eigen::VectorXd eigenvalues_;
    Matrix eigenvectors_;
    Vector coeffs_;  // V^dag psi0
};

struct MeasurementOutcome {
    int qubit = 0;
    int outcome = 0;
    double probability = 0.0;
    QuantumState post_state;
};

/// Projective measurement of one qubit in the dressed or full basis. The
/// branch is sampled from the Born rule with the supplied generator.
MeasurementOutcome measure_qubit(const QuantumState& state, int qubit, std::mt19937_64& rng);

/// Deterministic variant: project onto the requested outcome.
MeasurementOutcome project_qubit(const QuantumState& state, int qubit, int outcome);

/// Probability that `qubit` is measured in |1>.
double excited_population(const QuantumState& state, int qubit);

/// <n_q> = expected number of qubit excitations.
double mean_qubit_excitations(const QuantumState& state);

}  // namespace qbattery
