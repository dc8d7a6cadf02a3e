#include "qbattery/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

#include "qbattery/fidelity.hpp"
#include "qbattery/gates.hpp"

namespace qbattery {

namespace {

constexpr double kPi = std::numbers::pi;

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

int thread_budget() {
    if (const char* env = std::getenv("QBATTERY_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi, const NelderMeadOptions& opts) {
    const int d = static_cast<int>(x0.size());
    if (lo.size() != d || hi.size() != d) throw std::invalid_argument("bound dimensions differ");
    const Eigen::VectorXd span = hi - lo;

    auto unscale = [&](const Eigen::VectorXd& s) -> Eigen::VectorXd {
        return lo + s.cwiseProduct(span);
    };
    long evals = 0;
    auto eval = [&](Eigen::VectorXd s) {
        s = s.cwiseMax(0.0).cwiseMin(1.0);
        ++evals;
        return objective(unscale(s));
    };

    std::vector<Eigen::VectorXd> simplex(d + 1);
    std::vector<double> value(d + 1);
    Eigen::VectorXd s0 = ((x0 - lo).cwiseQuotient(span)).cwiseMax(0.0).cwiseMin(1.0);
    simplex[0] = s0;
    for (int i = 1; i <= d; ++i) {
        simplex[i] = s0;
        simplex[i](i - 1) += s0(i - 1) + opts.initial_step > 1.0 ? -opts.initial_step : opts.initial_step;
    }

    NelderMeadResult res;
    double best = std::numeric_limits<double>::infinity();
    auto record = [&](double v) {
        best = std::min(best, v);
        res.best_trace.push_back(best);
    };
    for (int i = 0; i <= d; ++i) {
        value[i] = eval(simplex[i]);
        record(value[i]);
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    while (evals < opts.max_evals) {
        std::vector<int> order(d + 1);
        for (int i = 0; i <= d; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return value[a] < value[b]; });
        std::vector<Eigen::VectorXd> sx(d + 1);
        std::vector<double> sv(d + 1);
        for (int i = 0; i <= d; ++i) {
            sx[i] = simplex[order[i]];
            sv[i] = value[order[i]];
        }
        simplex = sx;
        value = sv;

        if (opts.target_error >= 0.0 && value[0] <= opts.target_error) break;

        double diameter = 0.0;
        for (int i = 1; i <= d; ++i) diameter = std::max(diameter, (simplex[i] - simplex[0]).norm());
        if (diameter < opts.simplex_tol) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
        for (int i = 0; i < d; ++i) centroid += simplex[i];
        centroid /= d;

        const Eigen::VectorXd xr = centroid + alpha * (centroid - simplex[d]);
        const double fr = eval(xr);
        record(fr);
        if (fr < value[0]) {
            const Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
            const double fe = eval(xe);
            record(fe);
            if (fe < fr) {
                simplex[d] = xe;
                value[d] = fe;
            } else {
                simplex[d] = xr;
                value[d] = fr;
            }
        } else if (fr < value[d - 1]) {
            simplex[d] = xr;
            value[d] = fr;
        } else {
            const Eigen::VectorXd xc = centroid + rho * (simplex[d] - centroid);
            const double fc = eval(xc);
            record(fc);
            if (fc < value[d]) {
                simplex[d] = xc;
                value[d] = fc;
            } else {
                for (int i = 1; i <= d; ++i) {
                    simplex[i] = simplex[0] + sigma * (simplex[i] - simplex[0]);
                    value[i] = eval(simplex[i]);
                    record(value[i]);
                }
            }
        }
    }

    int ibest = 0;
    for (int i = 1; i <= d; ++i) {
        if (value[i] < value[ibest]) ibest = i;
    }
    res.x = unscale(simplex[ibest].cwiseMax(0.0).cwiseMin(1.0));
    res.value = value[ibest];
    res.evaluations = evals;
    if (opts.target_error >= 0.0 && res.value <= opts.target_error) res.converged = true;
    return res;
}

Eigen::VectorXd ScheduleAnsatz::lower_bounds() const {
    Eigen::VectorXd lo(n_params());
    const int pps = params_per_segment();
    for (int s = 0; s < n_segments; ++s) {
        for (size_t q = 0; q < free_qubits.size(); ++q) lo(s * pps + q) = delta_lo;
        lo(s * pps + pps - 1) = duration_lo;
    }
    return lo;
}

Eigen::VectorXd ScheduleAnsatz::upper_bounds() const {
    Eigen::VectorXd hi(n_params());
    const int pps = params_per_segment();
    for (int s = 0; s < n_segments; ++s) {
        for (size_t q = 0; q < free_qubits.size(); ++q) hi(s * pps + q) = delta_hi;
        hi(s * pps + pps - 1) = duration_hi;
    }
    return hi;
}

DetuningSchedule ScheduleAnsatz::to_schedule(const Eigen::VectorXd& params) const {
    if (params.size() != n_params()) throw std::invalid_argument("parameter vector has wrong length");
    DetuningSchedule sched;
    const int pps = params_per_segment();
    for (int s = 0; s < n_segments; ++s) {
        ScheduleSegment seg;
        seg.delta = base_delta;
        for (size_t q = 0; q < free_qubits.size(); ++q) seg.delta(free_qubits[q]) = params(s * pps + q);
        seg.duration = params(s * pps + pps - 1);
        sched.segments.push_back(std::move(seg));
    }
    return sched;
}

Eigen::VectorXd ScheduleAnsatz::from_schedule(const DetuningSchedule& schedule) const {
    if (static_cast<int>(schedule.segments.size()) != n_segments) {
        throw std::invalid_argument("segment count mismatch");
    }
    Eigen::VectorXd params(n_params());
    const int pps = params_per_segment();
    for (int s = 0; s < n_segments; ++s) {
        for (size_t q = 0; q < free_qubits.size(); ++q) {
            params(s * pps + q) = schedule.segments[s].delta(free_qubits[q]);
        }
        params(s * pps + pps - 1) = schedule.segments[s].duration;
    }
    return params;
}

OptimizationResult solve_custom(const std::function<double(const Eigen::VectorXd&)>& objective,
                                const ScheduleAnsatz& ansatz,
                                const std::vector<Eigen::VectorXd>& analytic_seeds,
                                const MultistartOptions& opts) {
    const int d = ansatz.n_params();
    const Eigen::VectorXd lo = ansatz.lower_bounds();
    const Eigen::VectorXd hi = ansatz.upper_bounds();

    std::vector<Eigen::VectorXd> starts = analytic_seeds;
    const int offset = static_cast<int>(opts.seed % 1009);
    for (int i = static_cast<int>(starts.size()); i < opts.starts; ++i) {
        Eigen::VectorXd x(d);
        for (int k = 0; k < d; ++k) {
            const double u = halton(i + 1 + offset, kPrimes[k % 16]);
            x(k) = lo(k) + u * (hi(k) - lo(k));
        }
        starts.push_back(std::move(x));
    }

    NelderMeadOptions nm;
    nm.max_evals = opts.max_evals_per_start;
    nm.target_error = opts.stop_when_below;

    OptimizationResult best;
    best.error = std::numeric_limits<double>::infinity();
    long total_evals = 0;
    bool stopped = false;

    const int n_threads = std::max(1, std::min(thread_budget(), static_cast<int>(starts.size())));
    for (size_t base = 0; base < starts.size() && !stopped; base += n_threads) {
        const size_t batch = std::min(starts.size() - base, static_cast<size_t>(n_threads));
        std::vector<std::future<NelderMeadResult>> futures;
        for (size_t j = 0; j < batch; ++j) {
            if (total_evals >= opts.max_total_evals) break;
            futures.push_back(std::async(std::launch::async, [&, j]() {
                return nelder_mead(objective, starts[base + j], lo, hi, nm);
            }));
        }
        for (size_t j = 0; j < futures.size(); ++j) {
            NelderMeadResult r = futures[j].get();
            total_evals += r.evaluations;
            if (r.value < best.error) {
                best.error = r.value;
                best.schedule = ansatz.to_schedule(r.x);
                best.converged = r.converged;
                best.best_trace = std::move(r.best_trace);
            }
            if (opts.stop_when_below >= 0.0 && best.error <= opts.stop_when_below) {
                stopped = true;
                break;
            }
        }
        if (total_evals >= opts.max_total_evals) break;
    }
    best.evaluations = total_evals;
    best.fidelity = 1.0 - best.error;
    return best;
}

OptimizationResult solve(const OptimizationProblem& problem) {
    const SystemConfig config = problem.config;
    const ScheduleAnsatz& ansatz = problem.ansatz;
    Vector initial = problem.initial_state;
    if (initial.size() == 0) initial = ground_state(config).amplitudes;

    std::function<double(const Eigen::VectorXd&)> objective;
    if (problem.kind == ObjectiveKind::StateFidelity) {
        if (problem.target_state.size() == 0) throw std::invalid_argument("missing target state");
        objective = [config, ansatz, initial, target = problem.target_state](const Eigen::VectorXd& p) {
            const DetuningSchedule sched = ansatz.to_schedule(p);
            Vector psi = initial;
            for (const auto& seg : sched.segments) {
                psi = propagator(build_dressed(config, seg.delta), seg.duration).matrix * psi;
            }
            return 1.0 - state_fidelity(target, psi);
        };
    } else {
        if (problem.target_unitary.size() == 0) throw std::invalid_argument("missing target unitary");
        objective = [config, ansatz, target = problem.target_unitary](const Eigen::VectorXd& p) {
            const Propagator u = schedule_propagator(config, ansatz.to_schedule(p));
            return 1.0 - average_gate_fidelity(target, u.matrix);
        };
    }

    OptimizationResult res = solve_custom(objective, ansatz, problem.analytic_seeds, problem.opts);
    // Re-simulate the winning schedule; the reported objective must reproduce.
    const double check = objective(ansatz.from_schedule(res.schedule));
    if (std::abs(check - res.error) > 1e-12) {
        throw std::runtime_error("optimizer result failed to reproduce on re-simulation");
    }
    return res;
}

namespace {

/// exp(-i H t) for the 2x2 dressed block [[0, g sqrt(n)], [g sqrt(n), -delta]].
Matrix block_propagator(double g, int n, double delta, double t) {
    const double coupling = g * std::sqrt(static_cast<double>(n));
    const double a = -0.5 * delta;           // trace part
    const double bz = 0.5 * delta;           // H - aI = [[delta/2, c],[c, -delta/2]]
    const double bn = std::hypot(coupling, bz);
    const Complex phase = std::exp(Complex(0.0, -a * t));
    const double c = std::cos(bn * t);
    const double s = bn > 0.0 ? std::sin(bn * t) / bn : t;
    Matrix u(2, 2);
    const Complex i(0.0, 1.0);
    u(0, 0) = phase * (c - i * s * bz);
    u(0, 1) = phase * (-i * s * coupling);
    u(1, 0) = phase * (-i * s * coupling);
    u(1, 1) = phase * (c + i * s * bz);
    return u;
}

double pair_fidelity(const Matrix& a, const Matrix& b) {
    return 0.25 * std::norm((a.adjoint() * b).trace());
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::map<int, Matrix> local_gate_blocks(const SystemConfig& config,
                                        const std::vector<std::pair<double, double>>& steps) {
    config.validate_dressed();
    std::map<int, Matrix> blocks;
    for (int m = 0; m < config.n_qubits; ++m) {
        const int n = config.n_fb - m;
        Matrix u = Matrix::Identity(2, 2);
        for (const auto& [delta, duration] : steps) {
            u = block_propagator(config.g, n, delta, duration) * u;
        }
        blocks[n] = u;
    }
    return blocks;
}

std::pair<double, Eigen::Vector3d> su2_rotation(const Matrix& u) {
    if (u.rows() != 2 || u.cols() != 2) throw std::invalid_argument("expected a 2x2 unitary");
    Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const Complex phase = std::sqrt(det);
    Matrix v = u / phase;
    double cos_half = 0.5 * std::real(v(0, 0) + v(1, 1));
    cos_half = std::clamp(cos_half, -1.0, 1.0);
    double angle = 2.0 * std::acos(cos_half);
    const double sin_half = std::sin(0.5 * angle);
    Eigen::Vector3d axis = Eigen::Vector3d::Zero();
    if (std::abs(sin_half) > 1e-12) {
        axis(0) = -std::imag(v(0, 1)) / sin_half;
        axis(1) = -std::real(v(0, 1)) / sin_half;
        axis(2) = -std::imag(v(0, 0)) / sin_half;
        // canonical sign: largest-magnitude component positive
        int imax = 0;
        axis.cwiseAbs().maxCoeff(&imax);
        if (axis(imax) < 0) {
            axis = -axis;
            angle = 2.0 * kPi - angle;
        }
        axis.normalize();
    }
    return {angle, axis};
}

LocalGateResult evaluate_local_gate(const SystemConfig& config, int target_qubit,
                                    const std::vector<std::pair<double, double>>& steps,
                                    const LocalSearchOptions& opts) {
    if (target_qubit < 0 || target_qubit >= config.n_qubits) {
        throw std::invalid_argument("qubit index out of range");
    }
    LocalGateResult res;
    res.steps = steps;
    res.blocks = local_gate_blocks(config, steps);

    const int nref = config.n_qubits > 1 ? config.n_fb - 1 : config.n_fb;
    const Matrix& uref = res.blocks.at(nref);

    res.worst_pair_fidelity = 1.0;
    for (auto a = res.blocks.begin(); a != res.blocks.end(); ++a) {
        for (auto b = std::next(a); b != res.blocks.end(); ++b) {
            res.worst_pair_fidelity = std::min(res.worst_pair_fidelity, pair_fidelity(a->second, b->second));
        }
    }
    const int n_spec = config.n_qubits - 1;
    double avg = 0.0;
    for (int m = 0; m <= n_spec; ++m) {
        avg += binomial(n_spec, m) * pair_fidelity(res.blocks.at(config.n_fb - m), uref);
    }
    res.average_fidelity = avg / std::pow(2.0, n_spec);

    auto [angle, axis] = su2_rotation(uref);
    res.rotation_angle = angle;
    res.rotation_axis = axis;
    res.population_transfer = std::norm(uref(1, 0));

    for (const auto& [delta, duration] : steps) {
        ScheduleSegment seg;
        seg.duration = duration;
        seg.delta = DetuningVector::Constant(config.n_qubits, opts.park);
        seg.delta(target_qubit) = delta;
        res.schedule.segments.push_back(std::move(seg));
    }
    return res;
}

LocalGateResult local_gate_search(const SystemConfig& config, int target_qubit, int n_steps,
                                  const LocalSearchOptions& opts) {
    config.validate_dressed();
    if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");

    ScheduleAnsatz ansatz;
    ansatz.n_segments = n_steps;
    ansatz.free_qubits = {0};
    ansatz.base_delta = DetuningVector::Zero(1);

    auto to_steps = [n_steps](const Eigen::VectorXd& p) {
        std::vector<std::pair<double, double>> steps;
        for (int s = 0; s < n_steps; ++s) steps.push_back({p(2 * s), p(2 * s + 1)});
        return steps;
    };

    auto objective = [&, config, target_qubit](const Eigen::VectorXd& p) {
        const auto blocks = local_gate_blocks(config, to_steps(p));
        double worst = 1.0;
        for (auto a = blocks.begin(); a != blocks.end(); ++a) {
            for (auto b = std::next(a); b != blocks.end(); ++b) {
                worst = std::min(worst, pair_fidelity(a->second, b->second));
            }
        }
        const int nref = config.n_qubits > 1 ? config.n_fb - 1 : config.n_fb;
        const double transfer = std::norm(blocks.at(nref)(1, 0));
        double penalty = 0.0;
        if (transfer < opts.min_transfer) penalty = 10.0 * (opts.min_transfer - transfer);
        if (transfer > opts.max_transfer) penalty = 10.0 * (transfer - opts.max_transfer);
        return 1.0 - worst + penalty;
    };

    // Analytic seeds: the one-step matching condition Omega_n t = Omega_{n-1} t + 2 pi j
    // gives t = pi j / (g (sqrt(n) - sqrt(n-1))) at zero detuning; spread across steps.
    std::vector<Eigen::VectorXd> seeds;
    const double root_gap = std::sqrt(static_cast<double>(config.n_fb)) -
                            std::sqrt(static_cast<double>(std::max(1, config.n_fb - 1)));
    for (int j = 1; j <= 2; ++j) {
        const double t_match = kPi * j / (config.g * root_gap);
        if (t_match > ansatz.duration_hi * n_steps) continue;
        for (double d0 : {0.0, 6.5, -6.5}) {
            Eigen::VectorXd x(2 * n_steps);
            for (int s = 0; s < n_steps; ++s) {
                x(2 * s) = (s % 2 == 0 ? d0 : -d0);
                x(2 * s + 1) = std::min(t_match / n_steps, ansatz.duration_hi);
            }
            seeds.push_back(x);
        }
    }

    const OptimizationResult core = solve_custom(objective, ansatz, seeds, opts.multistart);
    Eigen::VectorXd best_params = ansatz.from_schedule(core.schedule);
    LocalGateResult res = evaluate_local_gate(config, target_qubit, to_steps(best_params), opts);
    res.evaluations = core.evaluations;
    res.converged = core.converged;
    return res;
}

long dof_bound(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    long long num = (1LL << (2 * n_qubits)) - 1;  // 4^N - 1
    return static_cast<long>((num + n_qubits) / (n_qubits + 1));
}

}  // namespace qbattery
