#include "auxtherm/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "auxtherm/errors.hpp"

namespace auxtherm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw config_error("config error (line " + std::to_string(line) + "): " + what);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(v))
        fail(line, "value of '" + key + "' is not a finite number: '" + value + "'");
    return v;
}

int parse_int(const std::string& value, int line, const std::string& key) {
    const double v = parse_double(value, line, key);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        fail(line, "value of '" + key + "' is not an integer: '" + value + "'");
    return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty())
            items.push_back(item);
    }
    return items;
}

std::vector<double> parse_double_list(const std::string& value, int line,
                                      const std::string& key) {
    std::vector<double> out;
    for (const std::string& item : split_list(value))
        out.push_back(parse_double(item, line, key));
    if (out.empty())
        fail(line, "list value of '" + key + "' is empty");
    return out;
}

std::vector<int> parse_int_list(const std::string& value, int line, const std::string& key) {
    std::vector<int> out;
    for (const std::string& item : split_list(value))
        out.push_back(parse_int(item, line, key));
    if (out.empty())
        fail(line, "list value of '" + key + "' is empty");
    return out;
}

GridSpacing parse_spacing(const std::string& value, int line, const std::string& key) {
    if (value == "linear")
        return GridSpacing::linear;
    if (value == "log")
        return GridSpacing::log;
    fail(line, "value of '" + key + "' must be 'linear' or 'log', got '" + value + "'");
}

struct MediumDraft {
    std::optional<double> n_atoms, volume, mass, hbar, c;
};

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    MediumDraft medium_draft;
    bool medium_seen = false;

    enum class Section { none, medium, channel, pole, task, output, quadrature };
    Section section = Section::none;

    std::stringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        const auto comment = raw.find('#');
        if (comment != std::string::npos)
            raw.erase(comment);
        const std::string text_line = trim(raw);
        if (text_line.empty())
            continue;

        if (text_line.front() == '[') {
            if (text_line.back() != ']')
                fail(line, "malformed section header: '" + text_line + "'");
            const std::string name = trim(text_line.substr(1, text_line.size() - 2));
            if (name == "medium") {
                if (medium_seen)
                    fail(line, "duplicate [medium] section");
                medium_seen = true;
                section = Section::medium;
            } else if (name == "channel") {
                config.channels.emplace_back();
                section = Section::channel;
            } else if (name == "pole") {
                config.poles.emplace_back();
                section = Section::pole;
            } else if (name == "task") {
                section = Section::task;
            } else if (name == "output") {
                section = Section::output;
            } else if (name == "quadrature") {
                section = Section::quadrature;
            } else {
                fail(line, "unknown section '[" + name + "]'");
            }
            continue;
        }

        const auto eq = text_line.find('=');
        if (eq == std::string::npos)
            fail(line, "expected 'key = value', got '" + text_line + "'");
        const std::string key = trim(text_line.substr(0, eq));
        const std::string value = trim(text_line.substr(eq + 1));
        if (key.empty())
            fail(line, "empty key");
        if (value.empty())
            fail(line, "empty value for key '" + key + "'");

        switch (section) {
        case Section::none:
            fail(line, "key '" + key + "' outside of any [section]");
        case Section::medium:
            if (key == "n_atoms")
                medium_draft.n_atoms = parse_double(value, line, key);
            else if (key == "volume")
                medium_draft.volume = parse_double(value, line, key);
            else if (key == "mass")
                medium_draft.mass = parse_double(value, line, key);
            else if (key == "hbar")
                medium_draft.hbar = parse_double(value, line, key);
            else if (key == "c")
                medium_draft.c = parse_double(value, line, key);
            else
                fail(line, "unknown key '" + key + "' in [medium]");
            break;
        case Section::channel: {
            ChannelSpec& ch = config.channels.back();
            if (key == "mu")
                ch.mu = parse_double(value, line, key);
            else if (key == "kappa")
                ch.kappa = parse_double(value, line, key);
            else if (key == "gamma")
                ch.gamma = parse_double(value, line, key);
            else
                fail(line, "unknown key '" + key + "' in [channel]");
            break;
        }
        case Section::pole: {
            PoleSpec& pole = config.poles.back();
            if (key == "mu")
                pole.mu = parse_double(value, line, key);
            else if (key == "strength")
                pole.strength = parse_double(value, line, key);
            else if (key == "kappa")
                pole.kappa = parse_double(value, line, key);
            else if (key == "gamma")
                pole.gamma = parse_double(value, line, key);
            else
                fail(line, "unknown key '" + key + "' in [pole]");
            break;
        }
        case Section::task:
            if (key == "alpha")
                config.task.alpha = parse_double(value, line, key);
            else if (key == "tau_list")
                config.task.tau_list = parse_double_list(value, line, key);
            else if (key == "tau_min")
                config.task.tau_min = parse_double(value, line, key);
            else if (key == "tau_max")
                config.task.tau_max = parse_double(value, line, key);
            else if (key == "tau_points")
                config.task.tau_points = parse_int(value, line, key);
            else if (key == "tau_spacing")
                config.task.tau_spacing = parse_spacing(value, line, key);
            else if (key == "t_list")
                config.task.t_list = parse_double_list(value, line, key);
            else if (key == "t_min")
                config.task.t_min = parse_double(value, line, key);
            else if (key == "t_max")
                config.task.t_max = parse_double(value, line, key);
            else if (key == "t_points")
                config.task.t_points = parse_int(value, line, key);
            else if (key == "t_spacing")
                config.task.t_spacing = parse_spacing(value, line, key);
            else if (key == "temperature")
                config.task.temperature = parse_double(value, line, key);
            else if (key == "m_list")
                config.task.m_list = parse_int_list(value, line, key);
            else
                fail(line, "unknown key '" + key + "' in [task]");
            break;
        case Section::output:
            if (key == "dir")
                config.out_dir = value;
            else if (key == "format") {
                if (value != "csv")
                    fail(line, "the only supported output format is 'csv', got '" + value +
                                   "'");
            } else if (key == "prefactor") {
                if (value != "paper" && value != "dos")
                    fail(line, "prefactor must be 'paper' or 'dos', got '" + value + "'");
                config.prefactor = value;
            } else
                fail(line, "unknown key '" + key + "' in [output]");
            break;
        case Section::quadrature:
            if (key == "rel_tol")
                config.quadrature.rel_tol = parse_double(value, line, key);
            else if (key == "abs_tol")
                config.quadrature.abs_tol = parse_double(value, line, key);
            else if (key == "max_subdivisions")
                config.quadrature.max_subdivisions = parse_int(value, line, key);
            else
                fail(line, "unknown key '" + key + "' in [quadrature]");
            break;
        }
    }

    if (medium_seen) {
        if (!medium_draft.n_atoms || !medium_draft.volume)
            throw config_error("config error: [medium] requires n_atoms and volume");
        Medium medium;
        medium.n_atoms = *medium_draft.n_atoms;
        medium.volume = *medium_draft.volume;
        medium.mass = medium_draft.mass.value_or(1.0);
        medium.hbar = medium_draft.hbar.value_or(1.0);
        medium.c = medium_draft.c.value_or(1.0);
        try {
            medium.validate();
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("config error: ") + e.what());
        }
        config.medium = medium;
    }

    for (const ChannelSpec& ch : config.channels)
        if (!(ch.mu > 0.0))
            throw config_error("config error: every [channel] requires mu > 0");
    for (const PoleSpec& pole : config.poles) {
        if (!(pole.mu > 0.0))
            throw config_error("config error: every [pole] requires mu > 0");
        if (pole.strength == 0.0)
            throw config_error("config error: every [pole] requires a nonzero strength");
    }

    try {
        config.quadrature.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config error: ") + e.what());
    }

    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<FieldChannel> build_channels(const RunConfig& config) {
    if (!config.channels.empty() && !config.poles.empty())
        throw config_error("give either [channel] blocks or [pole] blocks, not both");

    std::vector<FieldChannel> channels;
    if (!config.channels.empty()) {
        for (const ChannelSpec& spec : config.channels) {
            FieldChannel ch;
            ch.mu = spec.mu;
            ch.kappa = spec.kappa;
            ch.gamma = spec.gamma;
            try {
                ch.validate();
            } catch (const std::invalid_argument& e) {
                throw config_error(std::string("invalid [channel]: ") + e.what());
            }
            channels.push_back(ch);
        }
        std::sort(channels.begin(), channels.end(),
                  [](const FieldChannel& a, const FieldChannel& b) { return a.mu < b.mu; });
        return channels;
    }

    if (config.poles.empty())
        throw config_error("no channels defined: add [channel] or [pole] blocks");

    std::vector<potentials::PoleTerm> terms;
    potentials::KappaPolicy policy;
    for (const PoleSpec& spec : config.poles) {
        terms.push_back({spec.mu, spec.strength, 1});
        if (spec.kappa || spec.gamma) {
            potentials::KappaPolicy::Override ov;
            ov.kappa = spec.kappa.value_or(1.0);
            ov.gamma = spec.gamma.value_or(-1.0);
            policy.by_mu[spec.mu] = ov;
        }
    }
    try {
        const potentials::PotentialModel model(std::move(terms));
        return potentials::extract_channels(model, policy);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("invalid [pole] list: ") + e.what());
    }
}

Medium require_medium(const RunConfig& config) {
    if (!config.medium)
        throw config_error("this command requires a [medium] section");
    return *config.medium;
}

std::vector<double> expand_grid(std::optional<std::vector<double>> explicit_list,
                                std::optional<double> lo, std::optional<double> hi,
                                std::optional<int> points, GridSpacing spacing,
                                const std::string& what) {
    if (explicit_list)
        return *explicit_list;
    if (!lo || !hi || !points)
        throw config_error("task needs a " + what + " grid: either " + what +
                           "_list or " + what + "_min/" + what + "_max/" + what +
                           "_points");
    if (*points < 1)
        throw config_error(what + "_points must be >= 1");
    if (!(*lo <= *hi))
        throw config_error(what + "_min must be <= " + what + "_max");
    if (spacing == GridSpacing::log && !(*lo > 0.0))
        throw config_error("log spacing requires " + what + "_min > 0");

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(*points));
    if (*points == 1) {
        grid.push_back(*lo);
        return grid;
    }
    for (int i = 0; i < *points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(*points - 1);
        if (spacing == GridSpacing::linear)
            grid.push_back(*lo + (*hi - *lo) * frac);
        else
            grid.push_back(*lo * std::pow(*hi / *lo, frac));
    }
    return grid;
}

} // namespace auxtherm::cli
