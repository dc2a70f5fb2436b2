#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fading_cli {

enum class Model { kmu_gamma, kmu_extreme_gamma };

std::string model_name(Model m);
Model parse_model(const std::string& name);

/// Parameter set of one figure: everything fixed except the swept parameter.
struct Preset {
    std::string name;
    Model model;
    double kappa = 0.0;  // unused for the Extreme model
    double mu = 0.0;
    double m = 0.0;      // unused for kappa-mu
    double b = 0.0;
    double omega = 0.0;
    std::string swept;
    std::vector<double> default_values;
};

/// fig1: kappa-mu/gamma, b=1.4, omega=1.2, mu=2, kappa swept.
/// fig2: kappa-mu/gamma, b=1.4, omega=1.2, kappa=1, mu swept.
/// fig3: Extreme/gamma, b=1.2, omega=0.8, m swept.
const std::vector<Preset>& presets();
std::optional<Preset> find_preset(const std::string& name);

}  // namespace fading_cli
