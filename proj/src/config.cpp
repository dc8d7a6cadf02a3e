#include "qbattery/config.hpp"

#include <cmath>

namespace qbattery {

std::string to_string(BasisTag tag) {
    switch (tag) {
        case BasisTag::Dressed: return "dressed";
        case BasisTag::Full: return "full";
        case BasisTag::Dicke: return "dicke";
    }
    return "?";
}

void SystemConfig::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("coupling g must be finite and > 0");
    if (n_fb < 0) throw std::invalid_argument("n_fb must be >= 0");
}

void SystemConfig::validate_dressed() const {
    validate();
    if (!dressed_valid()) {
        throw std::invalid_argument("dressed representation requires n_fb >= n_qubits (got n_fb=" +
                                    std::to_string(n_fb) + ", N=" + std::to_string(n_qubits) + ")");
    }
}

void SystemConfig::validate_full() const {
    validate();
    if (cutoff() < n_fb) {
        throw std::invalid_argument("photon_cutoff must be >= n_fb for a full-space computation");
    }
}

nlohmann::json SystemConfig::to_json() const {
    return {{"n_qubits", n_qubits}, {"g", g}, {"n_fb", n_fb}, {"photon_cutoff", cutoff()}};
}

SystemConfig SystemConfig::from_json(const nlohmann::json& j) {
    SystemConfig c;
    c.n_qubits = j.at("n_qubits").get<int>();
    c.g = j.value("g", 1.0);
    c.n_fb = j.at("n_fb").get<int>();
    c.photon_cutoff = j.value("photon_cutoff", -1);
    c.validate();
    return c;
}

int coherent_cutoff(double n_mean) {
    if (n_mean < 0) throw std::invalid_argument("mean photon number must be >= 0");
    return static_cast<int>(std::ceil(n_mean + 6.0 * std::sqrt(n_mean) + 10.0));
}

}  // namespace qbattery
