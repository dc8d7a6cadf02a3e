#include "qbattery/operators.hpp"

#include <cmath>

#include "qbattery/basis.hpp"

namespace qbattery {

namespace {
void check_qubit(const SystemConfig& config, int qubit) {
    if (qubit < 0 || qubit >= config.n_qubits) throw std::invalid_argument("qubit index out of range");
}
}  // namespace

Matrix dressed_sigma_plus(const SystemConfig& config, int qubit) {
    config.validate_dressed();
    check_qubit(config, qubit);
    const int dim = config.dressed_dim();
    const unsigned mask = 1u << (config.n_qubits - 1 - qubit);
    Matrix m = Matrix::Zero(dim, dim);
    for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
        if (!(s & mask)) m(s | mask, s) = 1.0;
    }
    return m;
}

Matrix dressed_sigma_minus(const SystemConfig& config, int qubit) {
    return dressed_sigma_plus(config, qubit).adjoint();
}

Matrix dressed_pauli(const SystemConfig& config, int qubit, char letter) {
    config.validate_dressed();
    check_qubit(config, qubit);
    const int dim = config.dressed_dim();
    const unsigned mask = 1u << (config.n_qubits - 1 - qubit);
    Matrix m = Matrix::Zero(dim, dim);
    const Complex im(0.0, 1.0);
    for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
        const bool excited = (s & mask) != 0;
        switch (letter) {
            case 'I': m(s, s) = 1.0; break;
            case 'X': m(s ^ mask, s) = 1.0; break;
            case 'Y': m(s ^ mask, s) = excited ? -im : im; break;  // Y = i(s+ - s-)
            case 'Z': m(s, s) = excited ? -1.0 : 1.0; break;
            default: throw std::invalid_argument("unknown Pauli letter");
        }
    }
    return m;
}

Matrix qubit_number_operator(const SystemConfig& config) {
    config.validate_dressed();
    const int dim = config.dressed_dim();
    Matrix m = Matrix::Zero(dim, dim);
    for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) m(s, s) = popcount_bits(s);
    return m;
}

Matrix collective_jz(const SystemConfig& config) {
    config.validate_dressed();
    const int dim = config.dressed_dim();
    Matrix m = Matrix::Zero(dim, dim);
    for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
        m(s, s) = 0.5 * config.n_qubits - popcount_bits(s);
    }
    return m;
}

Matrix collective_jplus(const SystemConfig& config) {
    config.validate_dressed();
    const int dim = config.dressed_dim();
    Matrix m = Matrix::Zero(dim, dim);
    for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
        for (int q = 0; q < config.n_qubits; ++q) {
            const unsigned mask = 1u << (config.n_qubits - 1 - q);
            if (s & mask) m(s & ~mask, s) += 1.0;
        }
    }
    return m;
}

Matrix collective_jminus_jplus(const SystemConfig& config) {
    const Matrix jp = collective_jplus(config);
    return jp.adjoint() * jp;
}

Matrix collective_j_squared(const SystemConfig& config) {
    // J^2 = J- J+ + Jz^2 + Jz with the paper's ladder convention.
    const Matrix jz = collective_jz(config);
    return collective_jminus_jplus(config) + jz * jz + jz;
}

Matrix pauli_string_matrix(const SystemConfig& config, const std::string& letters) {
    config.validate_dressed();
    if (static_cast<int>(letters.size()) != config.n_qubits) {
        throw std::invalid_argument("Pauli string length must equal n_qubits");
    }
    const int dim = config.dressed_dim();
    Matrix m = Matrix::Identity(dim, dim);
    for (int q = 0; q < config.n_qubits; ++q) {
        if (letters[q] == 'I') continue;
        m = dressed_pauli(config, q, letters[q]) * m;
    }
    return m;
}

Matrix dressed_rotation(const SystemConfig& config, int qubit, char axis, double angle) {
    const Matrix p = dressed_pauli(config, qubit, axis);
    const int dim = config.dressed_dim();
    // P^2 = I for X, Y, Z, so the exponential closes in {I, P}.
    return std::cos(0.5 * angle) * Matrix::Identity(dim, dim) -
           Complex(0.0, 1.0) * std::sin(0.5 * angle) * p;
}

}  // namespace qbattery
