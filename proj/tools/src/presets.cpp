#include "fading_cli/presets.hpp"

#include <stdexcept>

namespace fading_cli {

std::string model_name(Model m) { return m == Model::kmu_gamma ? "kmu-gamma" : "kmu-extreme-gamma"; }

Model parse_model(const std::string& name) {
    if (name == "kmu-gamma") return Model::kmu_gamma;
    if (name == "kmu-extreme-gamma") return Model::kmu_extreme_gamma;
    throw std::invalid_argument("model must be kmu-gamma or kmu-extreme-gamma, got '" + name + "'");
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = {
        {"fig1", Model::kmu_gamma, 0.0, 2.0, 0.0, 1.4, 1.2, "kappa", {0.5, 1.0, 2.0, 4.0}},
        {"fig2", Model::kmu_gamma, 1.0, 0.0, 0.0, 1.4, 1.2, "mu", {0.5, 1.0, 2.0, 3.5}},
        {"fig3", Model::kmu_extreme_gamma, 0.0, 0.0, 0.0, 1.2, 0.8, "m", {0.5, 1.0, 1.5}},
    };
    return all;
}

std::optional<Preset> find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return p;
    return std::nullopt;
}

}  // namespace fading_cli
