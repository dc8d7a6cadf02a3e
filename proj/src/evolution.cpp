#include "qbattery/evolution.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qbattery/basis.hpp"

namespace qbattery {

void QuantumState::assert_normalized(double tol) const {
    const double n = norm();
    if (std::abs(n - 1.0) > tol) {
        throw std::runtime_error("state norm drifted beyond tolerance: |norm-1| = " +
                                 std::to_string(std::abs(n - 1.0)));
    }
}

QuantumState ground_state(const SystemConfig& config, BasisTag basis) {
    QuantumState s;
    s.basis = basis;
    s.config = config;
    if (basis == BasisTag::Dressed) {
        config.validate_dressed();
        s.amplitudes = Vector::Zero(config.dressed_dim());
        s.amplitudes(0) = 1.0;
    } else if (basis == BasisTag::Full) {
        config.validate_full();
        s.amplitudes = Vector::Zero(config.full_dim());
        s.amplitudes(full_index(config, 0u, config.n_fb)) = 1.0;
    } else {
        config.validate_dressed();
        s.amplitudes = Vector::Zero(config.dicke_dim());
        s.amplitudes(0) = 1.0;
    }
    return s;
}

QuantumState basis_state(const SystemConfig& config, unsigned bits) {
    config.validate_dressed();
    if (bits >= static_cast<unsigned>(config.dressed_dim())) throw std::invalid_argument("bits out of range");
    QuantumState s;
    s.basis = BasisTag::Dressed;
    s.config = config;
    s.amplitudes = Vector::Zero(config.dressed_dim());
    s.amplitudes(bits) = 1.0;
    return s;
}

QuantumState coherent_ground_state(const SystemConfig& config, double n_mean) {
    config.validate();
    if (config.cutoff() < coherent_cutoff(n_mean)) {
        throw std::invalid_argument("photon_cutoff too small for the requested coherent state");
    }
    QuantumState s;
    s.basis = BasisTag::Full;
    s.config = config;
    s.amplitudes = Vector::Zero(config.full_dim());
    // c_n = e^{-nbar/2} alpha^n / sqrt(n!), built iteratively to avoid overflow.
    const double alpha = std::sqrt(n_mean);
    double log_cn = -0.5 * n_mean;  // log of c_0
    for (int n = 0; n <= config.cutoff(); ++n) {
        if (n > 0) log_cn += std::log(alpha) - 0.5 * std::log(static_cast<double>(n));
        s.amplitudes(full_index(config, 0u, n)) = std::exp(log_cn);
    }
    s.amplitudes /= s.amplitudes.norm();  // absorb the < 1e-10 truncated tail
    return s;
}

double DetuningSchedule::total_time() const {
    double t = 0.0;
    for (const auto& seg : segments) t += seg.duration;
    return t;
}

void DetuningSchedule::validate(int n_qubits) const {
    if (segments.empty()) throw std::invalid_argument("schedule must have at least one segment");
    for (const auto& seg : segments) {
        if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
            throw std::invalid_argument("segment durations must be positive and finite");
        }
        if (seg.delta.size() != n_qubits) throw std::invalid_argument("segment detuning vector has wrong length");
        if (!seg.delta.allFinite()) throw std::invalid_argument("detunings must be finite");
    }
}

DetuningSchedule DetuningSchedule::reversed() const {
    DetuningSchedule r;
    r.segments.assign(segments.rbegin(), segments.rend());
    return r;
}

nlohmann::json DetuningSchedule::to_json() const {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& seg : segments) {
        nlohmann::json delta = nlohmann::json::array();
        for (int i = 0; i < seg.delta.size(); ++i) delta.push_back(seg.delta(i));
        segs.push_back({{"duration", seg.duration}, {"delta", delta}});
    }
    return {{"segments", segs}};
}

DetuningSchedule DetuningSchedule::from_json(const nlohmann::json& j) {
    DetuningSchedule s;
    for (const auto& seg : j.at("segments")) {
        ScheduleSegment out;
        out.duration = seg.at("duration").get<double>();
        const auto& delta = seg.at("delta");
        out.delta.resize(delta.size());
        for (size_t i = 0; i < delta.size(); ++i) out.delta(i) = delta[i].get<double>();
        s.segments.push_back(std::move(out));
    }
    return s;
}

double Propagator::unitarity_defect() const {
    const int dim = static_cast<int>(matrix.rows());
    return (matrix.adjoint() * matrix - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

Propagator propagator(const HermitianOperator& h, double time) {
    if (time < 0.0 || !std::isfinite(time)) throw std::invalid_argument("propagation time must be >= 0");
    if (!h.matrix.allFinite()) throw std::runtime_error("Hamiltonian has non-finite entries");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    Propagator u;
    u.basis = h.basis;
    u.matrix = es.eigenvectors() *
               (Complex(0, -1) * time * es.eigenvalues().array().cast<Complex>()).exp().matrix().asDiagonal() *
               es.eigenvectors().adjoint();
    return u;
}

namespace {
Propagator schedule_propagator_impl(const SystemConfig& config, const DetuningSchedule& schedule,
                                    bool full) {
    schedule.validate(config.n_qubits);
    Propagator total;
    total.basis = full ? BasisTag::Full : BasisTag::Dressed;
    const int dim = full ? config.full_dim() : config.dressed_dim();
    total.matrix = Matrix::Identity(dim, dim);
    for (const auto& seg : schedule.segments) {
        const HermitianOperator h =
            full ? build_full(config, seg.delta) : build_dressed(config, seg.delta);
        total.matrix = propagator(h, seg.duration).matrix * total.matrix;
    }
    return total;
}
}  // namespace

Propagator schedule_propagator(const SystemConfig& config, const DetuningSchedule& schedule) {
    return schedule_propagator_impl(config, schedule, false);
}

Propagator schedule_propagator_full(const SystemConfig& config, const DetuningSchedule& schedule) {
    return schedule_propagator_impl(config, schedule, true);
}

QuantumState apply(const Propagator& u, const QuantumState& state) {
    if (u.basis != state.basis) throw std::invalid_argument("basis mismatch between propagator and state");
    QuantumState out = state;
    out.amplitudes = u.matrix * state.amplitudes;
    out.assert_normalized();
    out.amplitudes /= out.amplitudes.norm();
    return out;
}

QuantumState run_schedule(const QuantumState& state, const DetuningSchedule& schedule) {
    schedule.validate(state.config.n_qubits);
    QuantumState current = state;
    for (const auto& seg : schedule.segments) {
        const HermitianOperator h = state.basis == BasisTag::Full
                                        ? build_full(state.config, seg.delta)
                                        : build_dressed(state.config, seg.delta);
        current = apply(propagator(h, seg.duration), current);
    }
    return current;
}

SpectralEvolution::SpectralEvolution(const HermitianOperator& h, const Vector& initial) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
    coeffs_ = eigenvectors_.adjoint() * initial;
}

Vector SpectralEvolution::state_at(double t) const {
    const Vector phased =
        (Complex(0, -1) * t * eigenvalues_.array().cast<Complex>()).exp().matrix().cwiseProduct(coeffs_);
    return eigenvectors_ * phased;
}

double SpectralEvolution::overlap_probability(const Vector& target, double t) const {
    const Vector tcoeffs = eigenvectors_.adjoint() * target;
    Complex amp = 0.0;
    for (int k = 0; k < coeffs_.size(); ++k) {
        amp += std::conj(tcoeffs(k)) * std::exp(Complex(0, -1) * eigenvalues_(k) * t) * coeffs_(k);
    }
    return std::norm(amp);
}

namespace {
double outcome_probability(const QuantumState& state, int qubit, int outcome) {
    const SystemConfig& c = state.config;
    if (qubit < 0 || qubit >= c.n_qubits) throw std::invalid_argument("qubit index out of range");
    const int qdim = c.dressed_dim();
    double p = 0.0;
    for (int i = 0; i < state.amplitudes.size(); ++i) {
        const unsigned bits = static_cast<unsigned>(i % qdim);
        if (qubit_bit(bits, qubit, c.n_qubits) == outcome) p += std::norm(state.amplitudes(i));
    }
    return p;
}

QuantumState projected(const QuantumState& state, int qubit, int outcome, double p) {
    const SystemConfig& c = state.config;
    const int qdim = c.dressed_dim();
    QuantumState post = state;
    for (int i = 0; i < post.amplitudes.size(); ++i) {
        const unsigned bits = static_cast<unsigned>(i % qdim);
        if (qubit_bit(bits, qubit, c.n_qubits) != outcome) post.amplitudes(i) = 0.0;
    }
    post.amplitudes /= std::sqrt(p);
    return post;
}
}  // namespace

MeasurementOutcome measure_qubit(const QuantumState& state, int qubit, std::mt19937_64& rng) {
    if (state.basis == BasisTag::Dicke) throw std::invalid_argument("measurement requires dressed or full basis");
    const double p1 = outcome_probability(state, qubit, 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int outcome = unif(rng) < p1 ? 1 : 0;
    const double p = outcome == 1 ? p1 : 1.0 - p1;
    if (p < 1e-15) throw std::runtime_error("sampled a branch with vanishing probability");
    MeasurementOutcome m;
    m.qubit = qubit;
    m.outcome = outcome;
    m.probability = p;
    m.post_state = projected(state, qubit, outcome, p);
    return m;
}

MeasurementOutcome project_qubit(const QuantumState& state, int qubit, int outcome) {
    if (state.basis == BasisTag::Dicke) throw std::invalid_argument("measurement requires dressed or full basis");
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
    const double p = outcome_probability(state, qubit, outcome);
    if (p < 1e-15) throw std::runtime_error("projection onto a branch with vanishing probability");
    MeasurementOutcome m;
    m.qubit = qubit;
    m.outcome = outcome;
    m.probability = p;
    m.post_state = projected(state, qubit, outcome, p);
    return m;
}

double excited_population(const QuantumState& state, int qubit) {
    return outcome_probability(state, qubit, 1);
}

double mean_qubit_excitations(const QuantumState& state) {
    const int qdim = state.config.dressed_dim();
    double n = 0.0;
    for (int i = 0; i < state.amplitudes.size(); ++i) {
        n += popcount_bits(static_cast<unsigned>(i % qdim)) * std::norm(state.amplitudes(i));
    }
    return n;
}

}  // namespace qbattery
