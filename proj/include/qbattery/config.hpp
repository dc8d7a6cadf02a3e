#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

namespace qbattery {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Which state space a matrix or state vector is expressed in.
enum class BasisTag {
    Dressed,  // 2^N conserved-excitation subspace, index = qubit bitstring
    Full,     // qubits (x) truncated Fock space, index = photons * 2^N + bits
    Dicke     // symmetric collective subspace, index = excitation count 0..N
};

std::string to_string(BasisTag tag);

/// Static description of one battery-qubit system. All Hilbert spaces,
/// Hamiltonians and schedules are derived from this. Times are measured in
/// 1/g and detunings in units of g when g = 1 (the default).
struct SystemConfig {
    int n_qubits = 1;
    double g = 1.0;          // qubit-battery coupling (rad/time)
    int n_fb = 1;            // conserved excitation count (battery + qubits)
    int photon_cutoff = -1;  // full space only; -1 means "defaults to n_fb"

    int dressed_dim() const { return 1 << n_qubits; }
    int dicke_dim() const { return n_qubits + 1; }
    int cutoff() const { return photon_cutoff >= 0 ? photon_cutoff : n_fb; }
    int full_dim() const { return (cutoff() + 1) * dressed_dim(); }

    /// The dressed 2^N representation needs n_fb >= N so that the dressed
    /// ladder operators obey Pauli algebra (|0_i, 0_ph> never occurs).
    bool dressed_valid() const { return n_fb >= n_qubits; }

    void validate() const;
    void validate_dressed() const;
    void validate_full() const;

    nlohmann::json to_json() const;
    static SystemConfig from_json(const nlohmann::json& j);
};

/// Photon cutoff for a coherent-state battery of mean photon number n_mean,
/// chosen so the truncated tail probability stays below ~1e-10.
int coherent_cutoff(double n_mean);

}  // namespace qbattery
