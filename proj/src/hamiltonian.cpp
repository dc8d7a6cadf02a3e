#include "qbattery/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qbattery/basis.hpp"
#include "qbattery/operators.hpp"

namespace qbattery {

namespace {
void check_delta(const SystemConfig& config, const DetuningVector& delta) {
    if (delta.size() != config.n_qubits) throw std::invalid_argument("detuning vector has wrong length");
    if (!delta.allFinite()) throw std::invalid_argument("detunings must be finite");
}
}  // namespace

HermitianOperator build_full(const SystemConfig& config, const DetuningVector& delta) {
    config.validate_full();
    check_delta(config, delta);
    const int nq = config.n_qubits;
    const int qdim = config.dressed_dim();
    const int dim = config.full_dim();
    Matrix h = Matrix::Zero(dim, dim);
    for (int ph = 0; ph <= config.cutoff(); ++ph) {
        for (unsigned s = 0; s < static_cast<unsigned>(qdim); ++s) {
            const int row = full_index(config, s, ph);
            double diag = 0.0;
            for (int q = 0; q < nq; ++q) {
                if (qubit_bit(s, q, nq)) diag += kDetuningTermSign * delta(q);
            }
            h(row, row) = diag;
            // sigma_i^+ a : |s(q=0), ph> -> |s(q=1), ph-1>, element g sqrt(ph)
            if (ph == 0) continue;
            for (int q = 0; q < nq; ++q) {
                const unsigned mask = 1u << (nq - 1 - q);
                if (s & mask) continue;
                const int col = full_index(config, s | mask, ph - 1);
                const double v = config.g * std::sqrt(static_cast<double>(ph));
                h(col, row) += v;
                h(row, col) += v;
            }
        }
    }
    return {std::move(h), BasisTag::Full};
}

HermitianOperator build_dressed(const SystemConfig& config, const DetuningVector& delta) {
    config.validate_dressed();
    check_delta(config, delta);
    const int nq = config.n_qubits;
    const int dim = config.dressed_dim();
    Matrix h = Matrix::Zero(dim, dim);
    for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
        double diag = 0.0;
        for (int q = 0; q < nq; ++q) {
            if (qubit_bit(s, q, nq)) diag += kDetuningTermSign * delta(q);
        }
        h(s, s) = diag;
        // s_d+ sqrt(n_fb - n_q): evaluate the root at the source state.
        const double root = std::sqrt(static_cast<double>(config.n_fb - popcount_bits(s)));
        for (int q = 0; q < nq; ++q) {
            const unsigned mask = 1u << (nq - 1 - q);
            if (s & mask) continue;
            h(s | mask, s) += config.g * root;
            h(s, s | mask) += config.g * root;
        }
    }
    return {std::move(h), BasisTag::Dressed};
}

HermitianOperator build_collective(const SystemConfig& config, double uniform_delta) {
    config.validate_dressed();
    if (!std::isfinite(uniform_delta)) throw std::invalid_argument("detuning must be finite");
    const int n = config.n_qubits;
    Matrix h = Matrix::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        h(k, k) = kDetuningTermSign * uniform_delta * k;
        if (k < n) {
            // <k+1| J- A |k> = sqrt((N-k)(k+1)) sqrt(n_fb - k)
            const double v = config.g * std::sqrt(static_cast<double>((n - k) * (k + 1))) *
                             std::sqrt(static_cast<double>(config.n_fb - k));
            h(k + 1, k) = v;
            h(k, k + 1) = v;
        }
    }
    return {std::move(h), BasisTag::Dicke};
}

HermitianOperator build_dispersive(const SystemConfig& config, double uniform_delta,
                                   int n_qubits_involved) {
    if (uniform_delta == 0.0 || !std::isfinite(uniform_delta)) {
        throw std::invalid_argument("dispersive Hamiltonian requires a nonzero finite detuning");
    }
    if (n_qubits_involved < 1 || n_qubits_involved > config.n_qubits) {
        throw std::invalid_argument("n_qubits_involved out of range");
    }
    SystemConfig sub = config;
    sub.n_qubits = n_qubits_involved;
    sub.validate_dressed();

    const double chi = config.g * config.g / uniform_delta;
    const double c1 = uniform_delta + 2.0 * chi * (config.n_fb - 0.5 * n_qubits_involved);
    const Matrix jz = collective_jz(sub);
    Matrix h = c1 * jz + 2.0 * chi * jz * jz - chi * collective_jminus_jplus(sub);
    return {std::move(h), BasisTag::Dressed};
}

Matrix dispersive_subset_propagator(const SystemConfig& config, const std::vector<int>& subset,
                                    double uniform_delta, double time) {
    config.validate_dressed();
    if (subset.empty()) throw std::invalid_argument("subset must be non-empty");
    std::vector<bool> in_subset(config.n_qubits, false);
    for (int q : subset) {
        if (q < 0 || q >= config.n_qubits) throw std::invalid_argument("qubit index out of range");
        if (in_subset[q]) throw std::invalid_argument("duplicate qubit in subset");
        in_subset[q] = true;
    }
    const int ns = static_cast<int>(subset.size());
    const int nq = config.n_qubits;
    std::vector<int> frozen;
    for (int q = 0; q < nq; ++q) {
        if (!in_subset[q]) frozen.push_back(q);
    }

    const int dim = config.dressed_dim();
    Matrix u = Matrix::Zero(dim, dim);
    for (unsigned fc = 0; fc < (1u << frozen.size()); ++fc) {
        unsigned frozen_bits = 0;
        int frozen_exc = 0;
        for (size_t j = 0; j < frozen.size(); ++j) {
            if ((fc >> j) & 1u) {
                frozen_bits |= 1u << (nq - 1 - frozen[j]);
                ++frozen_exc;
            }
        }
        SystemConfig sub = config;
        sub.n_qubits = ns;
        sub.n_fb = config.n_fb - frozen_exc;
        const HermitianOperator hd = build_dispersive(sub, uniform_delta, ns);
        Eigen::SelfAdjointEigenSolver<Matrix> es(hd.matrix);
        const Matrix usub =
            es.eigenvectors() *
            (Complex(0, -1) * time * es.eigenvalues().array().cast<Complex>()).exp().matrix().asDiagonal() *
            es.eigenvectors().adjoint();
        // Scatter the subset block at this frozen configuration.
        for (unsigned a = 0; a < (1u << ns); ++a) {
            unsigned abits = frozen_bits;
            for (int j = 0; j < ns; ++j) {
                if ((a >> (ns - 1 - j)) & 1u) abits |= 1u << (nq - 1 - subset[j]);
            }
            for (unsigned b = 0; b < (1u << ns); ++b) {
                unsigned bbits = frozen_bits;
                for (int j = 0; j < ns; ++j) {
                    if ((b >> (ns - 1 - j)) & 1u) bbits |= 1u << (nq - 1 - subset[j]);
                }
                u(abits, bbits) = usub(a, b);
            }
        }
    }
    return u;
}

Matrix full_excitation_number(const SystemConfig& config) {
    config.validate_full();
    const int dim = config.full_dim();
    Matrix m = Matrix::Zero(dim, dim);
    for (int ph = 0; ph <= config.cutoff(); ++ph) {
        for (unsigned s = 0; s < static_cast<unsigned>(config.dressed_dim()); ++s) {
            const int idx = full_index(config, s, ph);
            m(idx, idx) = ph + popcount_bits(s);
        }
    }
    return m;
}

}  // namespace qbattery
