#pragma once

#include "qbattery/evolution.hpp"

namespace qbattery {

/// |<a|b>|^2, phase-insensitive. States must share a basis.
double state_fidelity(const QuantumState& a, const QuantumState& b);
double state_fidelity(const Vector& a, const Vector& b);

/// F = |Tr(U_ideal^dag U_actual)|^2 / dim^2.
double average_gate_fidelity(const Matrix& u_ideal, const Matrix& u_actual);
double average_gate_fidelity(const Propagator& u_ideal, const Propagator& u_actual);

/// Trace formula restricted to a subspace: F = |Tr(P U1^dag P U2 P)|^2 / d_P^2
/// with d_P = rank of the (idempotent) projector.
double subspace_process_fidelity(const Matrix& u1, const Matrix& u2, const Matrix& projector);

/// First-order collective charging error 2 (pi/8)^2 / r^2 for r = n_fb / N.
double charging_error_oracle(double r);

/// Refinement keeping the finite-n term of the same expansion:
/// 2 (pi/8)^2 (1/r)(1/r - 1/n_fb).
double charging_error_oracle(double r, int n_fb);

}  // namespace qbattery
