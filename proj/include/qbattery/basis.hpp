#pragma once

#include <vector>

#include "qbattery/config.hpp"

namespace qbattery {

// Ordering contracts (all matrices and golden files depend on these):
//  - dressed index = integer value of the qubit bitstring, qubit 0 most
//    significant; the battery holds n_fb - popcount(bits) photons.
//  - full index = photons * 2^N + bits (photons-major).
//  - dicke index k = collective excitation count, m_j = N/2 - k; half-integers
//    are stored doubled (2j, 2m) to keep them exact.

struct DressedBasisState {
    unsigned bits = 0;
    int implied_photons = 0;
};

struct FullBasisState {
    unsigned bits = 0;
    int photons = 0;
};

struct DickeBasisState {
    int twice_j = 0;
    int twice_m = 0;
};

int popcount_bits(unsigned bits);

/// Bit of qubit `q` (0-based, qubit 0 most significant) in a dressed index.
int qubit_bit(unsigned bits, int qubit, int n_qubits);

std::vector<DressedBasisState> enumerate_dressed(const SystemConfig& config);
std::vector<FullBasisState> enumerate_full(const SystemConfig& config);
std::vector<DickeBasisState> enumerate_dicke(const SystemConfig& config);

int full_index(const SystemConfig& config, unsigned bits, int photons);

/// Places dressed amplitudes at their (n_fb - popcount, bits) slots in the
/// full space. Norm is preserved exactly.
Vector embed_dressed_in_full(const Vector& dressed, const SystemConfig& config);

/// Restriction of a full-space vector to the n_fb block, as a dressed vector.
/// Inverse of embed_dressed_in_full on that block.
Vector restrict_full_to_dressed(const Vector& full, const SystemConfig& config);

struct SymmetricProjection {
    Vector dicke_amplitudes;  // overlap with |N/2, m_J>, index k = N/2 - m_J
    double residual_norm = 0.0;
};

SymmetricProjection symmetric_projection(const Vector& dressed, const SystemConfig& config);

/// Normalized equal-weight superposition of all bitstrings with k excitations.
Vector dicke_state_in_dressed(const SystemConfig& config, int k);

}  // namespace qbattery
