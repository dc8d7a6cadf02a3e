#pragma once

#include <vector>

#include "qbattery/config.hpp"

namespace qbattery {

// Sign convention for the detuning term. The qubit term enters every builder
// as kDetuningTermSign * Delta_i * |1_i><1_i|, i.e. H carries -Delta_i
// (supplement convention, Delta_i = omega_R - omega_i). The battery frequency
// is eliminated (rotating frame), so the full and dressed builders share one
// frame and one spectrum per excitation block.
inline constexpr double kDetuningTermSign = -1.0;

using DetuningVector = RealVector;

struct HermitianOperator {
    Matrix matrix;
    BasisTag basis = BasisTag::Dressed;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Full Tavis-Cummings Hamiltonian on the truncated qubits (x) Fock space.
HermitianOperator build_full(const SystemConfig& config, const DetuningVector& delta);

/// Dressed-operator Hamiltonian on the conserved 2^N subspace:
/// H = -sum_i Delta_i s_d+ s_d- + g sum_i (s_d+ sqrt(n_fb - n_q) + h.c.)
HermitianOperator build_dressed(const SystemConfig& config, const DetuningVector& delta);

/// Collective Hamiltonian on the (N+1)-dimensional symmetric subspace for a
/// uniform detuning. Matches the symmetric-sector restriction of
/// build_dressed exactly (same constant offset conventions).
HermitianOperator build_collective(const SystemConfig& config, double uniform_delta);

/// Dispersive (Schrieffer-Wolff) Hamiltonian
///   H = (Delta + 2 g^2/Delta (n_fb - N/2)) Jz + 2 g^2/Delta Jz^2
///       - g^2/Delta J- J+
/// expressed on the dressed 2^N space of the involved qubits, so that
/// multi-block objects such as the two-qubit U_ent matrix come out directly.
HermitianOperator build_dispersive(const SystemConfig& config, double uniform_delta,
                                   int n_qubits_involved);

/// Ideal dispersive propagator exp(-i H_disp t) acting on a subset of qubits
/// of the dressed space, block per configuration of the remaining (frozen)
/// qubits: a frozen configuration with k excitations leaves n_fb - k quanta
/// for the subset. This is the reference model for entangling gates and for
/// the controlled-parity protocol.
Matrix dispersive_subset_propagator(const SystemConfig& config, const std::vector<int>& subset,
                                    double uniform_delta, double time);

/// Number operator n_fb = a^dag a + sum_i s+ s- on the full space.
Matrix full_excitation_number(const SystemConfig& config);

}  // namespace qbattery
