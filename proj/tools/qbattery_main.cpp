// qbattery command-line interface: every experiment emits CSV or JSON plus a
// run manifest, so figures and tables can be regenerated deterministically.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qbattery/circuits.hpp"
#include "qbattery/fidelity.hpp"
#include "qbattery/gates.hpp"
#include "qbattery/heatbudget.hpp"
#include "qbattery/manifest.hpp"
#include "qbattery/optimizer.hpp"

namespace {

using namespace qbattery;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

class Timer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
}

void finish(const std::string& subcommand, const json& params, uint64_t seed,
            const std::string& out_path, const Timer& timer) {
    if (out_path.empty() || out_path == "-") return;
    RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.parameters = params;
    manifest.seed = seed;
    manifest.outputs = {out_path};
    manifest.wall_time_s = timer.seconds();
    manifest.write(out_path + ".manifest.json");
}


int cmd_charge_sweep(int n_min, int n_max, const std::vector<double>& r_values,
                     const std::string& battery, const std::string& out, const Timer& timer) {
    if (n_min < 1 || n_max < n_min) throw CLI::ValidationError("qubit range invalid");
    std::vector<std::string> kinds;
    if (battery == "fock" || battery == "both") kinds.push_back("fock");
    if (battery == "coherent" || battery == "both") kinds.push_back("coherent");
    if (kinds.empty()) throw CLI::ValidationError("battery must be fock, coherent or both");

    std::string csv = kChargeSweepCsvHeader;
    for (int n = n_min; n <= n_max; ++n) {
        for (double r : r_values) {
            const int n_fb = static_cast<int>(std::lround(r * n));
            if (n_fb < n) continue;
            SystemConfig config;
            config.n_qubits = n;
            config.n_fb = n_fb;
            for (const std::string& kind : kinds) {
                const CollectiveChargeResult res =
                    kind == "fock" ? collective_charge(config) : collective_charge_coherent(config);
                char line[160];
                std::snprintf(line, sizeof(line), "%d,%.6g,%s,%.12g,%.12g,%.12g\n", n, r, kind.c_str(),
                              res.normalized_time, res.state_error, res.energy_error);
                csv += line;
            }
        }
    }
    write_text(out, csv);
    return 0;
}

int cmd_qec_encode(const std::string& state, uint64_t seed, const std::string& branch,
                   const std::string& out, bool include_state) {
    EncodeOptions opts;
    opts.seed = seed;
    opts.policy = branch_policy_from_string(branch);
    const SystemConfig config = qec_default_config();
    json j;
    if (state == "zero") {
        j = encode_logical_zero(config, opts).to_json(include_state);
    } else if (state == "plus") {
        j = encode_logical_plus(config, opts).to_json(include_state);
    } else {
        throw CLI::ValidationError("--state must be zero or plus");
    }
    j["config"] = config.to_json();
    j["g_physical_rad_per_s"] = kQecPhysicalG;
    write_text(out, j.dump(2) + "\n");
    return 0;
}

int cmd_local_gate_search(int n_qubits, int n_fb, int steps, uint64_t seed, const std::string& out) {
    SystemConfig config;
    config.n_qubits = n_qubits;
    config.n_fb = n_fb;
    config.validate_dressed();
    LocalSearchOptions opts;
    opts.multistart.seed = seed;
    const LocalGateResult res = local_gate_search(config, 0, steps, opts);
    json steps_json = json::array();
    for (const auto& [delta, duration] : res.steps) {
        steps_json.push_back({{"delta", delta}, {"duration", duration}});
    }
    json j = {{"config", config.to_json()},
              {"target_qubit", 0},
              {"steps", steps_json},
              {"schedule", res.schedule.to_json()},
              {"worst_pair_fidelity", res.worst_pair_fidelity},
              {"average_fidelity", res.average_fidelity},
              {"rotation_angle_over_pi", res.rotation_angle / 3.14159265358979323846},
              {"rotation_axis", {res.rotation_axis(0), res.rotation_axis(1), res.rotation_axis(2)}},
              {"population_transfer", res.population_transfer},
              {"evaluations", res.evaluations},
              {"converged", res.converged}};
    write_text(out, j.dump(2) + "\n");
    return 0;
}

std::string canonical_arch(const std::string& arch) {
    if (arch == "standard") return "standard";
    if (arch == "shared") return "shared_cavity";
    if (arch == "standard-sc") return "standard_sc";
    if (arch == "shared-sc") return "shared_cavity_sc";
    throw CLI::ValidationError("unknown architecture: " + arch);
}

int cmd_heat_budget(const std::string& arch, const std::string& config_path, const std::string& out) {
    HeatModel model = HeatModel::defaults();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw CLI::ValidationError("cannot read heat config " + config_path);
        model = HeatModel::from_json(json::parse(in));
    }
    const HeatReport report = model.qubit_limit(canonical_arch(arch));
    write_text(out, report.to_json().dump(2) + "\n");
    return 0;
}

int cmd_energy_curve(int depth, const std::string& config_path, const std::string& out) {
    HeatModel model = HeatModel::defaults();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw CLI::ValidationError("cannot read heat config " + config_path);
        model = HeatModel::from_json(json::parse(in));
    }
    std::string csv = kEnergyCurveCsvHeader;
    for (const std::string& arch : model.architecture_names()) {
        for (const EnergyPoint& p : model.rt_energy_curve(arch, depth)) {
            char line[128];
            std::snprintf(line, sizeof(line), "%d,%s,%.12g\n", p.depth, arch.c_str(), p.energy);
            csv += line;
        }
    }
    write_text(out, csv);
    return 0;
}

int cmd_evolve(const std::string& system_path, const std::string& schedule_path,
               const std::string& initial_bits, const std::string& out) {
    std::ifstream sys_in(system_path);
    if (!sys_in) throw CLI::ValidationError("cannot read system config " + system_path);
    const SystemConfig config = SystemConfig::from_json(json::parse(sys_in));
    std::ifstream sched_in(schedule_path);
    if (!sched_in) throw CLI::ValidationError("cannot read schedule " + schedule_path);
    const DetuningSchedule schedule = DetuningSchedule::from_json(json::parse(sched_in));
    schedule.validate(config.n_qubits);

    unsigned bits = 0;
    for (char c : initial_bits) {
        if (c != '0' && c != '1') throw CLI::ValidationError("--initial must be a bitstring");
        bits = (bits << 1) | static_cast<unsigned>(c - '0');
    }
    if (!initial_bits.empty() && static_cast<int>(initial_bits.size()) != config.n_qubits) {
        throw CLI::ValidationError("--initial length must equal n_qubits");
    }

    const QuantumState final_state = run_schedule(basis_state(config, bits), schedule);
    json amps = json::array();
    json populations = json::array();
    for (int i = 0; i < final_state.amplitudes.size(); ++i) {
        amps.push_back({final_state.amplitudes(i).real(), final_state.amplitudes(i).imag()});
        populations.push_back(std::norm(final_state.amplitudes(i)));
    }
    json j = {{"config", config.to_json()},
              {"initial_bits", initial_bits.empty() ? std::string(config.n_qubits, '0') : initial_bits},
              {"amplitudes", amps},
              {"populations", populations},
              {"mean_qubit_excitations", mean_qubit_excitations(final_state)}};
    write_text(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-battery computation simulator"};
    app.require_subcommand(1);

    std::string out = "-";
    uint64_t seed = 1;
    app.add_option("--out", out, "output path ('-' for stdout)")->capture_default_str();
    app.add_option("--seed", seed, "random seed recorded in the manifest")->capture_default_str();

    auto* sweep = app.add_subcommand("charge-sweep", "collective charging times and errors (Fig. 2 data)");
    int n_min = 1, n_max = 6;
    std::vector<double> r_values = {2, 4, 6, 9};
    std::string battery = "fock";
    sweep->add_option("--n-min", n_min)->capture_default_str();
    sweep->add_option("--n-max", n_max)->capture_default_str();
    sweep->add_option("--r", r_values, "battery quanta per qubit")->capture_default_str();
    sweep->add_option("--battery", battery, "fock | coherent | both")->capture_default_str();

    auto* qec = app.add_subcommand("qec-encode", "surface-code logical state encoding (Fig. 4 data)");
    std::string state = "zero", branch = "sample";
    bool include_state = false;
    qec->add_option("--state", state, "zero | plus")->capture_default_str();
    qec->add_option("--branch", branch, "sample | zero | one | both")->capture_default_str();
    qec->add_flag("--include-state", include_state, "dump final amplitudes");

    auto* local = app.add_subcommand("local-gate-search", "local energy-changing gate search (Fig. S2 data)");
    int lg_qubits = 3, lg_nfb = 5, lg_steps = 2;
    local->add_option("--qubits", lg_qubits)->capture_default_str();
    local->add_option("--nfb", lg_nfb)->capture_default_str();
    local->add_option("--steps", lg_steps)->capture_default_str();

    auto* heat = app.add_subcommand("heat-budget", "per-qubit heat loads and fridge qubit limits");
    std::string arch = "standard", heat_config;
    heat->add_option("--arch", arch, "standard | shared | standard-sc | shared-sc")->capture_default_str();
    heat->add_option("--config", heat_config, "JSON overriding the built-in channel parameters");

    auto* energy = app.add_subcommand("energy-curve", "room-temperature energy vs circuit depth (Fig. 5d)");
    int depth = 40;
    std::string energy_config;
    energy->add_option("--depth", depth)->capture_default_str();
    energy->add_option("--config", energy_config, "JSON overriding the built-in channel parameters");

    auto* evolve = app.add_subcommand("evolve", "run a detuning schedule on a dressed state");
    std::string system_path, schedule_path, initial_bits;
    evolve->add_option("--system", system_path, "SystemConfig JSON")->required();
    evolve->add_option("--schedule", schedule_path, "DetuningSchedule JSON")->required();
    evolve->add_option("--initial", initial_bits, "initial bitstring (default all zeros)");

    CLI11_PARSE(app, argc, argv);

    Timer timer;
    try {
        int rc = 0;
        json params;
        std::string name;
        if (*sweep) {
            name = "charge-sweep";
            params = {{"n_min", n_min}, {"n_max", n_max}, {"r", r_values}, {"battery", battery}};
            rc = cmd_charge_sweep(n_min, n_max, r_values, battery, out, timer);
        } else if (*qec) {
            name = "qec-encode";
            params = {{"state", state}, {"branch", branch}};
            rc = cmd_qec_encode(state, seed, branch, out, include_state);
        } else if (*local) {
            name = "local-gate-search";
            params = {{"qubits", lg_qubits}, {"nfb", lg_nfb}, {"steps", lg_steps}};
            rc = cmd_local_gate_search(lg_qubits, lg_nfb, lg_steps, seed, out);
        } else if (*heat) {
            name = "heat-budget";
            params = {{"arch", arch}, {"config", heat_config}};
            rc = cmd_heat_budget(arch, heat_config, out);
        } else if (*energy) {
            name = "energy-curve";
            params = {{"depth", depth}, {"config", energy_config}};
            rc = cmd_energy_curve(depth, energy_config, out);
        } else if (*evolve) {
            name = "evolve";
            params = {{"system", system_path}, {"schedule", schedule_path}, {"initial", initial_bits}};
            rc = cmd_evolve(system_path, schedule_path, initial_bits, out);
        }
        if (rc == 0) finish(name, params, seed, out, timer);
        return rc;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
