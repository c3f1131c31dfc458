#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voi/config.hpp"
#include "voi/simulation.hpp"

namespace voi::cli {

// All numeric output is serialized with 12 significant digits, enough for a
// re-parsed value to agree to 1e-10 relative.
std::string format_number(double value);

// value: one key=value record of the closed-form quantities at sample size n.
std::string value_record(const RunConfig& config, std::int64_t n);

// curve: CSV `n,evsi,evdi,efficiency` over the configured grid.
std::string curve_csv(const RunConfig& config);

// optimal-n: key=value record of the sample-size decision. Requires the cost
// section.
std::string optimal_n_record(const RunConfig& config);

// plan: key=value record of the changeover decision. Requires the season
// section. A j_star of 0 means the changeover fee is never recovered.
std::string plan_record(const RunConfig& config);

struct VerifyRow {
    std::int64_t n = 0;
    std::string check;
    double closed_form = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double z = 0.0;
};

struct VerifyOutcome {
    std::vector<VerifyRow> rows;
    std::string csv;
    bool passed = true;  // false when any |z| exceeds 4
};

// verify: runs the Monte Carlo oracle against the closed forms over the
// configured grid. closed_form_skew rescales the reference value and exists
// so the detector itself can be shown to fire; leave it at 1 for real runs.
VerifyOutcome run_verify(const RunConfig& config, int threads = 0,
                         double closed_form_skew = 1.0);

struct BenchmarkOutcome {
    sim::BenchmarkResult result;
    std::string csv;
    std::string warning;  // non-empty when SAA was scored on an empty sample
};

// benchmark: CSV `n,procedure,mean_loss,std_error,replications,seed`.
BenchmarkOutcome run_benchmark_csv(const RunConfig& config, int threads = 0);

}  // namespace voi::cli
