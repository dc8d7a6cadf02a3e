#include "qbattery/heatbudget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbattery {

namespace {

// Default channel parameters. Per-cable passive loads and per-qubit active
// loads follow the cryogenic wiring analysis this model is calibrated
// against; the published per-qubit totals are carried alongside because the
// published tables round the active components internally (the residual is
// reported, not hidden). The NbTi cold-plate passive is 240 nW per cable,
// back-solved from the per-qubit totals (the source table's "240 uW" is
// inconsistent with them by three orders of magnitude).
constexpr const char* kDefaultHeatData = R"JSON({
  "cables": {
    "SS_drive": {"cp": 365e-9, "mxc": 8.5e-9},
    "SS_flux":  {"cp": 270e-9, "mxc": 17e-9},
    "NbTi":     {"cp": 240e-9, "mxc": 11e-9},
    "OPT":      {"cp": 1e-9,   "mxc": 0.01e-9}
  },
  "active_per_qubit": {
    "drive":         {"cp": 250e-9, "mxc": 2.5e-9,  "duty": 0.2},
    "flux":          {"cp": 54e-9,  "mxc": 20e-9,   "duty": 1.0},
    "readout_drive": {"cp": 3e-9,   "mxc": 0.03e-9, "duty": 0.2},
    "pump":          {"cp": 25e-9,  "mxc": 2.5e-9,  "duty": 0.1}
  },
  "rt_extra_attenuation_db": {"drive": 20, "flux": 10, "readout_drive": 20, "pump": 20},
  "battery_init_rounds": 100,
  "qubits_per_battery": 10,
  "architectures": {
    "standard": {
      "cables_per_qubit": {"drive": 1.0, "flux": 1.0, "readout_drive": 0.125, "output": 0.125, "pump": 0.125},
      "cable_kinds": {"drive": "SS_drive", "flux": "SS_flux", "readout_drive": "SS_drive", "output": "NbTi", "pump": "SS_drive"},
      "active_channels": ["drive", "flux", "readout_drive", "pump"],
      "battery_powered": false,
      "published_total": {"cp": 1024e-9, "mxc": 52e-9}
    },
    "shared_cavity": {
      "cables_per_qubit": {"drive": 0.1, "flux": 1.0, "readout_drive": 0.125, "output": 0.125, "pump": 0.125},
      "cable_kinds": {"drive": "SS_drive", "flux": "SS_flux", "readout_drive": "SS_drive", "output": "NbTi", "pump": "SS_drive"},
      "active_channels": ["flux", "readout_drive", "pump"],
      "battery_powered": true,
      "published_total": {"cp": 497e-9, "mxc": 42e-9}
    },
    "standard_sc": {
      "cables_per_qubit": {"drive": 1.0, "flux": 1.0, "readout_drive": 0.125, "output": 0.125, "pump": 0.125},
      "cable_kinds": {"drive": "SS_drive", "flux": "OPT", "readout_drive": "SS_drive", "output": "NbTi", "pump": "SS_drive"},
      "active_channels": ["drive", "readout_drive", "pump"],
      "battery_powered": false,
      "published_total": {"cp": 701e-9, "mxc": 15.2e-9}
    },
    "shared_cavity_sc": {
      "cables_per_qubit": {"drive": 0.1, "flux": 1.0, "readout_drive": 0.125, "output": 0.125, "pump": 0.125},
      "cable_kinds": {"drive": "SS_drive", "flux": "OPT", "readout_drive": "SS_drive", "output": "NbTi", "pump": "SS_drive"},
      "active_channels": ["readout_drive", "pump"],
      "battery_powered": true,
      "published_total": {"cp": 173e-9, "mxc": 5.6e-9}
    }
  }
})JSON";

StagePower stage_from_json(const nlohmann::json& j) {
    return {j.at("cp").get<double>(), j.at("mxc").get<double>()};
}

}  // namespace

nlohmann::json HeatReport::to_json() const {
    return {{"architecture", architecture},
            {"passive_cp", passive.cp},
            {"passive_mxc", passive.mxc},
            {"active_cp", active.cp},
            {"active_mxc", active.mxc},
            {"total_cp", total.cp},
            {"total_mxc", total.mxc},
            {"published_total_cp", published_total.cp},
            {"published_total_mxc", published_total.mxc},
            {"residual_cp", residual.cp},
            {"residual_mxc", residual.mxc},
            {"qubit_limit_cp", qubit_limit_cp},
            {"qubit_limit_mxc", qubit_limit_mxc},
            {"qubit_limit", qubit_limit},
            {"limits_from_published", limits_from_published}};
}

HeatModel HeatModel::defaults() {
    return from_json(nlohmann::json::parse(kDefaultHeatData));
}

HeatModel HeatModel::from_json(const nlohmann::json& j) {
    HeatModel m;
    m.raw_ = j;
    for (const auto& [name, cable] : j.at("cables").items()) {
        m.cables_[name] = {name, stage_from_json(cable)};
    }
    const auto& actives = j.at("active_per_qubit");
    const auto& atten = j.at("rt_extra_attenuation_db");
    for (const auto& [name, arch_json] : j.at("architectures").items()) {
        ArchitectureConfig arch;
        arch.name = name;
        arch.qubits_per_battery = j.value("qubits_per_battery", 10);
        const bool battery = arch_json.value("battery_powered", false);
        arch.battery_init_rounds = battery ? j.value("battery_init_rounds", 0.0) : 0.0;
        const auto& counts = arch_json.at("cables_per_qubit");
        const auto& kinds = arch_json.at("cable_kinds");
        std::vector<std::string> active_channels =
            arch_json.at("active_channels").get<std::vector<std::string>>();
        for (const auto& [channel, count] : counts.items()) {
            ChannelConfig cc;
            cc.cables_per_qubit = count.get<double>();
            if (cc.cables_per_qubit < 0) throw std::invalid_argument("cable counts must be >= 0");
            cc.cable = kinds.at(channel).get<std::string>();
            if (!m.cables_.count(cc.cable)) throw std::invalid_argument("unknown cable kind " + cc.cable);
            const bool is_active = std::find(active_channels.begin(), active_channels.end(), channel) !=
                                   active_channels.end();
            if (is_active) {
                cc.active = stage_from_json(actives.at(channel));
                cc.duty_cycle = actives.at(channel).value("duty", 0.0);
            }
            if (atten.contains(channel)) cc.rt_extra_attenuation_db = atten.at(channel).get<double>();
            arch.channels[channel] = cc;
        }
        if (arch_json.contains("published_total")) {
            arch.published_total = stage_from_json(arch_json.at("published_total"));
            arch.has_published_total = true;
        }
        m.architectures_[name] = std::move(arch);
    }
    return m;
}

const ArchitectureConfig& HeatModel::architecture(const std::string& name) const {
    const auto it = architectures_.find(name);
    if (it == architectures_.end()) throw std::invalid_argument("unknown architecture: " + name);
    return it->second;
}

std::vector<std::string> HeatModel::architecture_names() const {
    std::vector<std::string> names;
    for (const auto& [name, arch] : architectures_) names.push_back(name);
    return names;
}

StagePower HeatModel::passive_per_qubit(const std::string& arch_name) const {
    const ArchitectureConfig& arch = architecture(arch_name);
    StagePower sum;
    for (const auto& [channel, cc] : arch.channels) {
        sum = sum + cables_.at(cc.cable).passive * cc.cables_per_qubit;
    }
    return sum;
}

StagePower HeatModel::active_per_qubit(const std::string& arch_name) const {
    const ArchitectureConfig& arch = architecture(arch_name);
    StagePower sum;
    for (const auto& [channel, cc] : arch.channels) sum = sum + cc.active;
    return sum;
}

HeatReport HeatModel::qubit_limit(const std::string& arch_name, double cooling_cp,
                                  double cooling_mxc) const {
    if (!(cooling_cp > 0) || !(cooling_mxc > 0)) throw std::invalid_argument("cooling powers must be > 0");
    const ArchitectureConfig& arch = architecture(arch_name);
    HeatReport r;
    r.architecture = arch_name;
    r.passive = passive_per_qubit(arch_name);
    r.active = active_per_qubit(arch_name);
    r.total = r.passive + r.active;
    if (r.total.cp <= 0 || r.total.mxc <= 0) throw std::invalid_argument("total heat per qubit is zero");
    r.published_total = arch.has_published_total ? arch.published_total : r.total;
    r.residual = r.total - r.published_total;
    r.limits_from_published = arch.has_published_total;
    r.qubit_limit_cp = static_cast<long>(std::floor(cooling_cp / r.published_total.cp));
    r.qubit_limit_mxc = static_cast<long>(std::floor(cooling_mxc / r.published_total.mxc));
    r.qubit_limit = std::min(r.qubit_limit_cp, r.qubit_limit_mxc);
    return r;
}

double HeatModel::rt_power_per_cycle(const std::string& arch_name) const {
    const ArchitectureConfig& arch = architecture(arch_name);
    double p = 0.0;
    for (const auto& [channel, cc] : arch.channels) {
        if (cc.active.cp <= 0) continue;
        p += cc.active.cp * std::pow(10.0, cc.rt_extra_attenuation_db / 10.0);
    }
    return p;
}

double HeatModel::rt_overhead_energy(const std::string& arch_name, double cycle_time) const {
    const ArchitectureConfig& arch = architecture(arch_name);
    if (arch.battery_init_rounds <= 0) return 0.0;
    const ChannelConfig& drive = arch.channels.at("drive");
    const double drive_rt_power =
        250e-9 * std::pow(10.0, drive.rt_extra_attenuation_db / 10.0);  // one average drive round
    const double rounds_per_qubit = arch.battery_init_rounds / arch.qubits_per_battery;
    return rounds_per_qubit * drive_rt_power * cycle_time;
}

std::vector<EnergyPoint> HeatModel::rt_energy_curve(const std::string& arch_name, int depth_cycles,
                                                    double cycle_time) const {
    if (depth_cycles < 0) throw std::invalid_argument("depth must be >= 0");
    const double overhead = rt_overhead_energy(arch_name, cycle_time);
    const double slope = rt_power_per_cycle(arch_name) * cycle_time;
    std::vector<EnergyPoint> curve;
    curve.reserve(depth_cycles + 1);
    for (int d = 0; d <= depth_cycles; ++d) curve.push_back({d, overhead + slope * d});
    return curve;
}

double HeatModel::crossover_depth(const std::string& arch_a, const std::string& arch_b,
                                  double cycle_time) const {
    const double oa = rt_overhead_energy(arch_a, cycle_time);
    const double ob = rt_overhead_energy(arch_b, cycle_time);
    const double sa = rt_power_per_cycle(arch_a) * cycle_time;
    const double sb = rt_power_per_cycle(arch_b) * cycle_time;
    if (sa >= sb) throw std::invalid_argument("no crossover: " + arch_a + " never becomes cheaper");
    return (oa - ob) / (sb - sa);
}

}  // namespace qbattery
