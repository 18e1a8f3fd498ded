#pragma once

// Scenario configuration: JSON file plus dotted command-line overrides,
// validated in full before any computation starts.

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wvl/dynamics.hpp"
#include "wvl/highrank.hpp"

namespace wvl::cli {

/// Rejected configuration; maps to exit code 1.
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct AxisConfig {
    int points = 201;
    double half_width = 0.0;  ///< 0 selects an automatic width
};

struct RangeConfig {
    double min = 0.0;
    double max = 1.0;
    int points = 2;
};

struct Rank4Slice {
    double p_dot = 0.0;
    double p_ddot = 0.0;
};

struct VerifyConfig {
    double t = 1.0;
    double dt = 1e-3;
    double omega2_offset = 0.0;
    std::map<std::string, double> tolerances;
};

struct ScenarioConfig {
    PhysicalParams params;
    SigmaDriver driver = MathieuDriver{};
    std::vector<int> states{0, 1, 2};
    double t0 = 0.0;
    double t1 = 5.0 * kPi;
    double dt = kPi / 20.0;
    double step = kDefaultStep;
    AxisConfig x_axis{201, 0.0};
    AxisConfig p_axis{201, 0.0};
    double resolution = 1.0;
    std::filesystem::path out_dir = "out";
    std::vector<double> wigner_times{0.0};
    Rank4Sign rank4_sign = Rank4Sign::reduced;
    std::vector<Rank4Slice> rank4_slices;
    double launch_angle = 0.0;
    double spectrum_tolerance = 1e-9;
    RangeConfig a_range{0.0, 5.0, 101};
    RangeConfig g_range{0.0, 1.0, 21};
    VerifyConfig verify;

    /// Output times t0, t0 + dt, ... up to t1 inclusive.
    std::vector<double> time_grid() const;
    /// Last time any command may query sigma at, including stencil margins.
    double horizon() const;
};

/// A dotted key such as "grid.x.points" and its textual value.
using Override = std::pair<std::string, std::string>;

/// Sets key to value (parsed as JSON when possible, else kept as a string).
void apply_override(nlohmann::json& doc, const Override& ov);

/// Builds a validated scenario from a JSON document.
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Reads path (empty for built-in defaults), applies overrides, validates.
ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides);

/// The fully resolved configuration, echoed in manifests.
nlohmann::json to_json(const ScenarioConfig& cfg);

}  // namespace wvl::cli
