#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace qbattery {

// Cryogenic heat and energy calculator for the two coldest fridge stages
// (cold plate and mixing chamber). All powers in watts, energies in joules,
// times in seconds.

struct StagePower {
    double cp = 0.0;
    double mxc = 0.0;

    StagePower operator+(const StagePower& o) const { return {cp + o.cp, mxc + o.mxc}; }
    StagePower operator-(const StagePower& o) const { return {cp - o.cp, mxc - o.mxc}; }
    StagePower operator*(double f) const { return {cp * f, mxc * f}; }
};

struct CableKind {
    std::string name;
    StagePower passive;  // per cable
};

struct ChannelConfig {
    double cables_per_qubit = 0.0;
    std::string cable;        // key into the cable table
    StagePower active;        // per qubit, zero if the channel is passive-only
    double duty_cycle = 0.0;  // informational
    double rt_extra_attenuation_db = 0.0;
};

struct ArchitectureConfig {
    std::string name;
    std::map<std::string, ChannelConfig> channels;  // drive, flux, readout_drive, output, pump
    int qubits_per_battery = 10;
    double battery_init_rounds = 0.0;  // drive rounds spent charging, per battery
    StagePower published_total;        // per-qubit totals as published; used for limits
    bool has_published_total = false;
};

struct HeatReport {
    std::string architecture;
    StagePower passive, active, total;
    StagePower published_total;
    StagePower residual;  // total - published (paper-internal rounding)
    long qubit_limit_cp = 0, qubit_limit_mxc = 0, qubit_limit = 0;
    bool limits_from_published = false;

    nlohmann::json to_json() const;
};

struct EnergyPoint {
    int depth = 0;
    double energy = 0.0;  // joules per qubit
};

class HeatModel {
  public:
    static HeatModel defaults();
    static HeatModel from_json(const nlohmann::json& j);

    const ArchitectureConfig& architecture(const std::string& name) const;
    std::vector<std::string> architecture_names() const;

    StagePower passive_per_qubit(const std::string& arch) const;
    StagePower active_per_qubit(const std::string& arch) const;

    HeatReport qubit_limit(const std::string& arch, double cooling_cp = 1000e-6,
                           double cooling_mxc = 34e-6) const;

    /// Accumulated room-temperature input energy per qubit vs circuit depth.
    std::vector<EnergyPoint> rt_energy_curve(const std::string& arch, int depth_cycles,
                                             double cycle_time = 1e-6) const;

    /// RT input power per qubit during computation (the slope of the curve).
    double rt_power_per_cycle(const std::string& arch) const;
    /// Fixed battery-initialization energy per qubit (zero for drive archs).
    double rt_overhead_energy(const std::string& arch, double cycle_time = 1e-6) const;

    /// Depth at which `arch_a`'s accumulated energy drops below `arch_b`'s.
    double crossover_depth(const std::string& arch_a, const std::string& arch_b,
                           double cycle_time = 1e-6) const;

    const nlohmann::json& raw() const { return raw_; }

  private:
    std::map<std::string, CableKind> cables_;
    std::map<std::string, ArchitectureConfig> architectures_;
    nlohmann::json raw_;
};

}  // namespace qbattery
