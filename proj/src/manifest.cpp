#include "qbattery/manifest.hpp"

#include <fstream>

namespace qbattery {

nlohmann::json RunManifest::to_json() const {
    return {{"subcommand", subcommand}, {"parameters", parameters}, {"seed", seed},
            {"version", version},       {"outputs", outputs},       {"wall_time_s", wall_time_s}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.parameters = j.at("parameters");
    m.seed = j.at("seed").get<uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.wall_time_s = j.value("wall_time_s", 0.0);
    return m;
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest to " + path);
    out << to_json().dump(2) << "\n";
}

}  // namespace qbattery
