#pragma once

#include <optional>
#include <string>

#include "hzreach/sus.hpp"

namespace hzreach
{

struct GridSpec
{
    std::pair<Eigen::Index, Eigen::Index> dims = {0, 1};
    Interval window;
    double resolution = 0.25;
    std::string target = "reach"; ///< "reach" or "term:<index>"
};

/// Everything a CLI run needs; file paths in the run config resolve relative
/// to the config file's directory.
struct RunConfig
{
    SystemModel system;
    Controller controller;
    HybZono initial_set;
    int steps = 12;
    long samples = 1000;
    std::uint64_t seed = 1;
    bool reduce = false;
    long node_limit = 1'000'000;
    double tol = 1e-6;
    std::optional<GridSpec> grid;
    std::string out_dir = "out";

    MilpSettings milp() const
    {
        MilpSettings s;
        s.node_limit = node_limit;
        return s;
    }
};

nlohmann::json load_json_file(const std::string& path);

/// Enclosure from a function spec: a table {breakpoints, values, delta?} or a
/// named builder {"name": "sin"|"sat"|"identity", ...}. Named builders
/// default their domain to `context_domain` (the argument's interval range).
EnclosedFunction parse_function(const nlohmann::json& j, const Interval& context_domain, const std::string& where);

SystemModel parse_system(const nlohmann::json& j, const std::string& where);

Controller parse_controller(const nlohmann::json& j, const SystemModel& system, const std::string& where);

/// Initial set in generator form {"G", "c"} with optional gb/ac/ab/b blocks.
HybZono parse_initial_set(const nlohmann::json& j, const std::string& where);

RunConfig parse_run_config(const nlohmann::json& j, const std::string& base_dir, const std::string& where);

RunConfig load_run_config(const std::string& path);

} // namespace hzreach
