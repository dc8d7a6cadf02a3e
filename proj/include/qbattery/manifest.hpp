#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace qbattery {

inline constexpr const char* kVersion = "0.1.0";

// Versioned CSV schemas; bump the tag when a column changes.
inline constexpr const char* kChargeSweepCsvHeader =
    "# qbattery charge-sweep v1\nn_qubits,r,battery,normalized_charge_time,state_error,energy_error\n";
inline constexpr const char* kEnergyCurveCsvHeader =
    "# qbattery energy-curve v1\ndepth,architecture,energy_joule_per_qubit\n";

/// Run record written alongside every CLI output; re-running the manifest's
/// subcommand with its parameters reproduces the outputs bit-for-bit.
struct RunManifest {
    std::string subcommand;
    nlohmann::json parameters;
    uint64_t seed = 0;
    std::string version = kVersion;
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
    void write(const std::string& path) const;
};

}  // namespace qbattery
