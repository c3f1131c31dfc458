#include "voi/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace voi::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw ConfigError(field, message);
}

void reject_unknown_keys(const json& object, const std::string& section,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(section.empty() ? item.key() : section + "." + item.key(), "unknown key");
        }
    }
}

double get_number(const json& value, const std::string& field) {
    if (!value.is_number()) {
        fail(field, "must be a number");
    }
    const double v = value.get<double>();
    if (!std::isfinite(v)) {
        fail(field, "must be finite");
    }
    return v;
}

std::int64_t get_integer(const json& value, const std::string& field) {
    if (!value.is_number_integer()) {
        fail(field, "must be an integer");
    }
    return value.get<std::int64_t>();
}

std::uint64_t get_seed(const json& value, const std::string& field) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        fail(field, "must be a nonnegative integer");
    }
    return value.get<std::uint64_t>();
}

std::vector<double> get_positive_array(const json& value, const std::string& field) {
    if (!value.is_array()) {
        fail(field, "must be an array of numbers");
    }
    if (value.size() < 2) {
        fail(field, "must have at least two entries (M >= 1)");
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string entry = field + "[" + std::to_string(i) + "]";
        const double v = get_number(value[i], entry);
        if (!(v > 0.0)) {
            fail(entry, "must be positive");
        }
        out.push_back(v);
    }
    return out;
}

DirichletPrior parse_prior(const json& section) {
    if (!section.is_object()) {
        fail("prior", "must be an object");
    }
    reject_unknown_keys(section, "prior", {"alphas", "alpha", "mean_weights"});

    const bool has_alphas = section.contains("alphas");
    const bool has_reparam = section.contains("alpha") || section.contains("mean_weights");
    if (has_alphas && has_reparam) {
        fail("prior", "give either alphas or the (alpha, mean_weights) pair, not both");
    }
    if (has_alphas) {
        return DirichletPrior(get_positive_array(section["alphas"], "prior.alphas"));
    }
    if (!section.contains("alpha")) {
        fail("prior.alpha", "required when alphas is absent");
    }
    if (!section.contains("mean_weights")) {
        fail("prior.mean_weights", "required when alphas is absent");
    }
    const double concentration = get_number(section["alpha"], "prior.alpha");
    if (!(concentration > 0.0)) {
        fail("prior.alpha", "must be positive");
    }
    std::vector<double> weights =
        get_positive_array(section["mean_weights"], "prior.mean_weights");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) {
        w = concentration * (w / total);
    }
    return DirichletPrior(std::move(weights));
}

LossSpec parse_loss(const json& section) {
    if (!section.is_object()) {
        fail("loss", "must be an object");
    }
    reject_unknown_keys(section, "loss", {"k"});
    if (!section.contains("k")) {
        fail("loss.k", "required");
    }
    const double k = get_number(section["k"], "loss.k");
    if (!(k > 0.0)) {
        fail("loss.k", "must be positive");
    }
    return LossSpec(k);
}

policies::SamplingCost parse_cost(const json& section) {
    if (!section.is_object()) {
        fail("cost", "must be an object");
    }
    reject_unknown_keys(section, "cost", {"K", "s"});
    if (!section.contains("s")) {
        fail("cost.s", "required");
    }
    double fixed = 0.0;
    if (section.contains("K")) {
        fixed = get_number(section["K"], "cost.K");
        if (fixed < 0.0) {
            fail("cost.K", "must be nonnegative");
        }
    }
    const double unit = get_number(section["s"], "cost.s");
    if (!(unit > 0.0)) {
        fail("cost.s", "must be positive");
    }
    return policies::SamplingCost(fixed, unit);
}

policies::SeasonSpec parse_season(const json& section) {
    if (!section.is_object()) {
        fail("season", "must be an object");
    }
    reject_unknown_keys(section, "season", {"J", "K"});
    if (!section.contains("J")) {
        fail("season.J", "required");
    }
    const std::int64_t periods = get_integer(section["J"], "season.J");
    if (periods < 1) {
        fail("season.J", "must be at least 1");
    }
    double fee = 0.0;
    if (section.contains("K")) {
        fee = get_number(section["K"], "season.K");
        if (fee < 0.0) {
            fail("season.K", "must be nonnegative");
        }
    }
    return policies::SeasonSpec(periods, fee);
}

std::vector<std::int64_t> default_n_grid() {
    std::vector<std::int64_t> grid(50);
    std::iota(grid.begin(), grid.end(), 1);
    return grid;
}

struct SimSettings {
    sim::SimConfig config;
    std::vector<sim::UpdatingProcedure> procedures;
};

SimSettings parse_sim(const json* section) {
    std::int64_t replications = 10000;
    std::int64_t inner_draws = 1000;
    std::uint64_t seed = 1;
    std::vector<std::int64_t> grid = default_n_grid();
    std::vector<sim::UpdatingProcedure> procedures = {sim::UpdatingProcedure::bayes,
                                                      sim::UpdatingProcedure::saa};
    if (section != nullptr) {
        if (!section->is_object()) {
            fail("sim", "must be an object");
        }
        reject_unknown_keys(*section, "sim",
                            {"replications", "inner_draws", "seed", "n_grid", "procedures"});
        if (section->contains("replications")) {
            replications = get_integer((*section)["replications"], "sim.replications");
            if (replications < 1) {
                fail("sim.replications", "must be at least 1");
            }
        }
        if (section->contains("inner_draws")) {
            inner_draws = get_integer((*section)["inner_draws"], "sim.inner_draws");
            if (inner_draws < 1) {
                fail("sim.inner_draws", "must be at least 1");
            }
        }
        if (section->contains("seed")) {
            seed = get_seed((*section)["seed"], "sim.seed");
        }
        if (section->contains("n_grid")) {
            const json& raw = (*section)["n_grid"];
            if (!raw.is_array()) {
                fail("sim.n_grid", "must be an array of integers");
            }
            if (raw.empty()) {
                fail("sim.n_grid", "must not be empty");
            }
            grid.clear();
            for (std::size_t i = 0; i < raw.size(); ++i) {
                const std::string entry = "sim.n_grid[" + std::to_string(i) + "]";
                const std::int64_t n = get_integer(raw[i], entry);
                if (n < 0) {
                    fail(entry, "must be nonnegative");
                }
                if (!grid.empty() && n <= grid.back()) {
                    fail(entry, "grid must be strictly increasing");
                }
                grid.push_back(n);
            }
        }
        if (section->contains("procedures")) {
            const json& raw = (*section)["procedures"];
            if (!raw.is_array() || raw.empty()) {
                fail("sim.procedures", "must be a non-empty array of procedure names");
            }
            procedures.clear();
            for (std::size_t i = 0; i < raw.size(); ++i) {
                const std::string entry = "sim.procedures[" + std::to_string(i) + "]";
                if (!raw[i].is_string()) {
                    fail(entry, "must be a string");
                }
                sim::UpdatingProcedure procedure;
                try {
                    procedure = sim::parse_procedure(raw[i].get<std::string>());
                } catch (const std::invalid_argument& e) {
                    fail(entry, e.what());
                }
                for (const sim::UpdatingProcedure existing : procedures) {
                    if (existing == procedure) {
                        fail(entry, "duplicate procedure");
                    }
                }
                procedures.push_back(procedure);
            }
        }
    }
    return SimSettings{sim::SimConfig(replications, inner_draws, seed, std::move(grid)),
                       std::move(procedures)};
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("<config>", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        fail("<config>", "top level must be an object");
    }
    reject_unknown_keys(root, "", {"prior", "loss", "cost", "season", "sim"});
    if (!root.contains("prior")) {
        fail("prior", "required");
    }

    DirichletPrior prior = parse_prior(root["prior"]);
    LossSpec loss = root.contains("loss") ? parse_loss(root["loss"]) : LossSpec(1.0);

    std::optional<policies::SamplingCost> cost;
    if (root.contains("cost")) {
        cost = parse_cost(root["cost"]);
    }
    std::optional<policies::SeasonSpec> season;
    if (root.contains("season")) {
        season = parse_season(root["season"]);
    }

    const json* sim_section = root.contains("sim") ? &root["sim"] : nullptr;
    SimSettings sim_settings = parse_sim(sim_section);

    return RunConfig{std::move(prior),       std::move(loss),
                     std::move(cost),        std::move(season),
                     std::move(sim_settings.config), std::move(sim_settings.procedures)};
}

RunConfig load_config(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        fail("<config>", "cannot open file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace voi::cli
