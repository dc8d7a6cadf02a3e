#include "qbattery/basis.hpp"

#include <bit>
#include <cmath>

namespace qbattery {

int popcount_bits(unsigned bits) { return std::popcount(bits); }

int qubit_bit(unsigned bits, int qubit, int n_qubits) {
    return static_cast<int>((bits >> (n_qubits - 1 - qubit)) & 1u);
}

std::vector<DressedBasisState> enumerate_dressed(const SystemConfig& config) {
    config.validate_dressed();
    std::vector<DressedBasisState> states;
    states.reserve(config.dressed_dim());
    for (unsigned bits = 0; bits < static_cast<unsigned>(config.dressed_dim()); ++bits) {
        states.push_back({bits, config.n_fb - popcount_bits(bits)});
    }
    return states;
}

std::vector<FullBasisState> enumerate_full(const SystemConfig& config) {
    config.validate();
    std::vector<FullBasisState> states;
    states.reserve(config.full_dim());
    for (int ph = 0; ph <= config.cutoff(); ++ph) {
        for (unsigned bits = 0; bits < static_cast<unsigned>(config.dressed_dim()); ++bits) {
            states.push_back({bits, ph});
        }
    }
    return states;
}

std::vector<DickeBasisState> enumerate_dicke(const SystemConfig& config) {
    config.validate();
    std::vector<DickeBasisState> states;
    states.reserve(config.dicke_dim());
    for (int k = 0; k <= config.n_qubits; ++k) {
        states.push_back({config.n_qubits, config.n_qubits - 2 * k});
    }
    return states;
}

int full_index(const SystemConfig& config, unsigned bits, int photons) {
    return photons * config.dressed_dim() + static_cast<int>(bits);
}

Vector embed_dressed_in_full(const Vector& dressed, const SystemConfig& config) {
    config.validate_dressed();
    config.validate_full();
    if (dressed.size() != config.dressed_dim()) throw std::invalid_argument("dressed vector has wrong dimension");
    Vector full = Vector::Zero(config.full_dim());
    for (int i = 0; i < dressed.size(); ++i) {
        const int photons = config.n_fb - popcount_bits(static_cast<unsigned>(i));
        full(full_index(config, static_cast<unsigned>(i), photons)) = dressed(i);
    }
    return full;
}

Vector restrict_full_to_dressed(const Vector& full, const SystemConfig& config) {
    config.validate_dressed();
    config.validate_full();
    if (full.size() != config.full_dim()) throw std::invalid_argument("full vector has wrong dimension");
    Vector dressed = Vector::Zero(config.dressed_dim());
    for (int i = 0; i < dressed.size(); ++i) {
        const int photons = config.n_fb - popcount_bits(static_cast<unsigned>(i));
        dressed(i) = full(full_index(config, static_cast<unsigned>(i), photons));
    }
    return dressed;
}

Vector dicke_state_in_dressed(const SystemConfig& config, int k) {
    if (k < 0 || k > config.n_qubits) throw std::invalid_argument("excitation count out of range");
    Vector v = Vector::Zero(config.dressed_dim());
    int count = 0;
    for (unsigned bits = 0; bits < static_cast<unsigned>(config.dressed_dim()); ++bits) {
        if (popcount_bits(bits) == k) {
            v(bits) = 1.0;
            ++count;
        }
    }
    return v / std::sqrt(static_cast<double>(count));
}

SymmetricProjection symmetric_projection(const Vector& dressed, const SystemConfig& config) {
    if (dressed.size() != config.dressed_dim()) throw std::invalid_argument("dressed vector has wrong dimension");
    SymmetricProjection proj;
    proj.dicke_amplitudes = Vector::Zero(config.dicke_dim());
    Vector remainder = dressed;
    for (int k = 0; k <= config.n_qubits; ++k) {
        const Vector dk = dicke_state_in_dressed(config, k);
        const Complex amp = dk.dot(dressed);  // <D_k|psi>
        proj.dicke_amplitudes(k) = amp;
        remainder -= amp * dk;
    }
    proj.residual_norm = remainder.norm();
    return proj;
}

}  // namespace qbattery
