#pragma once

#include "qbattery/config.hpp"

namespace qbattery {

// Single-qubit and collective operators as dense matrices on the dressed
// 2^N space. Dressed ladder operators act like plain qubit raising/lowering
// there (the battery shift is implicit in the basis), so sigma_d^+ flips a
// 0 bit to 1. All of these are valid only when n_fb >= N.

Matrix dressed_sigma_plus(const SystemConfig& config, int qubit);
Matrix dressed_sigma_minus(const SystemConfig& config, int qubit);
Matrix dressed_pauli(const SystemConfig& config, int qubit, char letter);  // I, X, Y or Z

/// Total qubit excitation number, diag(popcount).
Matrix qubit_number_operator(const SystemConfig& config);

/// Jz = N/2 - n_q, diagonal.
Matrix collective_jz(const SystemConfig& config);

/// J+ = sum_i sigma_d,i^- (removes one excitation, raises m_J).
Matrix collective_jplus(const SystemConfig& config);

/// J- J+ on the dressed space (diagonal within each Dicke ladder).
Matrix collective_jminus_jplus(const SystemConfig& config);

/// J^2 = Jx^2 + Jy^2 + Jz^2 on the dressed space.
Matrix collective_j_squared(const SystemConfig& config);

/// Tensor-product Pauli string, e.g. "ZZII". Length must equal n_qubits.
Matrix pauli_string_matrix(const SystemConfig& config, const std::string& letters);

/// exp(-i angle/2 * P) for a single-qubit dressed Pauli axis, used to build
/// ideal reference gates for circuit targets.
Matrix dressed_rotation(const SystemConfig& config, int qubit, char axis, double angle);

}  // namespace qbattery
