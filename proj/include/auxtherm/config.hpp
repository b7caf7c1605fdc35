#ifndef AUXTHERM_CONFIG_HPP
#define AUXTHERM_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "auxtherm/numerics.hpp"
#include "auxtherm/potentials.hpp"
#include "auxtherm/types.hpp"

namespace auxtherm::cli {

// Declarative run configuration, parsed from flat "[section] key = value"
// text. Sections: [medium], repeated [channel] or [pole] blocks, [task],
// [output], [quadrature]. Unknown sections or keys are rejected with the
// offending name and line number.
struct ChannelSpec {
    double mu = 0.0;
    double kappa = 1.0;
    double gamma = 0.0;
};

struct PoleSpec {
    double mu = 0.0;
    double strength = 0.0;
    std::optional<double> kappa;
    std::optional<double> gamma;
};

enum class GridSpacing { linear, log };

struct TaskConfig {
    std::optional<double> alpha;
    std::optional<std::vector<double>> tau_list;
    std::optional<double> tau_min, tau_max;
    std::optional<int> tau_points;
    GridSpacing tau_spacing = GridSpacing::linear;

    std::optional<std::vector<double>> t_list;
    std::optional<double> t_min, t_max;
    std::optional<int> t_points;
    GridSpacing t_spacing = GridSpacing::linear;

    std::optional<double> temperature;
    std::optional<std::vector<int>> m_list;
};

struct RunConfig {
    std::optional<Medium> medium;
    std::vector<ChannelSpec> channels;
    std::vector<PoleSpec> poles;
    TaskConfig task;
    std::string out_dir; // empty = not set; writing commands fall back to "."
    std::string prefactor = "paper";
    numerics::QuadratureSpec quadrature;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Channels from the config: explicit [channel] blocks, or [pole] blocks run
// through potentials::extract_channels. Exactly one of the two must be present.
std::vector<FieldChannel> build_channels(const RunConfig& config);

// Medium from the config; config_error when the [medium] section is missing.
Medium require_medium(const RunConfig& config);

// Expand a {min, max, points, spacing} or explicit-list grid description.
std::vector<double> expand_grid(std::optional<std::vector<double>> explicit_list,
                                std::optional<double> lo, std::optional<double> hi,
                                std::optional<int> points, GridSpacing spacing,
                                const std::string& what);

} // namespace auxtherm::cli

#endif
