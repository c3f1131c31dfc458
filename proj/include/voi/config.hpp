#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "voi/policies.hpp"
#include "voi/simulation.hpp"
#include "voi/types.hpp"

namespace voi::cli {

// Validation failure carrying the dotted path of the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Parsed run configuration. Sections not present in the file fall back to
// the documented defaults: k = 1, 10000 replications, 1000 inner draws,
// seed 1, n_grid = 1..50, procedures = BAYES and SAA.
struct RunConfig {
    DirichletPrior prior;
    LossSpec loss;
    std::optional<policies::SamplingCost> cost;
    std::optional<policies::SeasonSpec> season;
    sim::SimConfig sim;
    std::vector<sim::UpdatingProcedure> procedures;
};

// Parses the JSON text of a config file. Unknown keys anywhere are rejected;
// every violated invariant surfaces as a ConfigError naming the field.
RunConfig parse_config(const std::string& json_text);

// Reads and parses a config file from disk.
RunConfig load_config(const std::string& path);

}  // namespace voi::cli
