#include "qbattery/fidelity.hpp"

#include <cmath>
#include <numbers>

namespace qbattery {

namespace {
double clamp_fidelity(double f) {
    if (f < 0.0 && f > -1e-12) return 0.0;
    if (f > 1.0) {
        if (f > 1.0 + 1e-12) throw std::runtime_error("fidelity overflow beyond tolerance: " + std::to_string(f));
        return 1.0;
    }
    return f;
}
}  // namespace

double state_fidelity(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("state dimensions differ");
    return clamp_fidelity(std::norm(a.dot(b)));
}

double state_fidelity(const QuantumState& a, const QuantumState& b) {
    if (a.basis != b.basis) throw std::invalid_argument("states live in different bases");
    return state_fidelity(a.amplitudes, b.amplitudes);
}

double average_gate_fidelity(const Matrix& u_ideal, const Matrix& u_actual) {
    if (u_ideal.rows() != u_actual.rows() || u_ideal.cols() != u_actual.cols()) {
        throw std::invalid_argument("unitary dimensions differ");
    }
    const double dim = static_cast<double>(u_ideal.rows());
    const Complex tr = (u_ideal.adjoint() * u_actual).trace();
    return clamp_fidelity(std::norm(tr) / (dim * dim));
}

double average_gate_fidelity(const Propagator& u_ideal, const Propagator& u_actual) {
    if (u_ideal.basis != u_actual.basis) throw std::invalid_argument("propagators live in different bases");
    return average_gate_fidelity(u_ideal.matrix, u_actual.matrix);
}

double subspace_process_fidelity(const Matrix& u1, const Matrix& u2, const Matrix& projector) {
    if ((projector * projector - projector).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("projector is not idempotent");
    }
    const double d = std::real(projector.trace());
    if (d < 0.5) throw std::invalid_argument("zero-dimensional subspace");
    const Complex tr = (projector * u1.adjoint() * projector * u2 * projector).trace();
    return clamp_fidelity(std::norm(tr) / (d * d));
}

double charging_error_oracle(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("r must be > 0");
    const double c = std::numbers::pi / 8.0;
    return 2.0 * c * c / (r * r);
}

double charging_error_oracle(double r, int n_fb) {
    if (!(r > 0.0)) throw std::invalid_argument("r must be > 0");
    if (n_fb <= 0) throw std::invalid_argument("n_fb must be > 0");
    const double c = std::numbers::pi / 8.0;
    return 2.0 * c * c * (1.0 / r) * (1.0 / r - 1.0 / n_fb);
}

}  // namespace qbattery
