#pragma once

#include <string>
#include <vector>

#include "mab/sim.hpp"

namespace mab {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& text);

// Schema: experiment_id,policy,k,checkpoint_step,metric,mean,stderr,trials
// Rows sorted by (policy, metric, checkpoint).
std::string curves_csv(const std::string& experiment_id, std::size_t k,
                       const std::vector<AggregateCurve>& curves);

// Schema: alpha,m,mean_final_regret,stderr or c,mean_final_regret,stderr,
// sorted by (alpha, m) resp. c.
std::string grid_csv(const SweepResult& result);

void write_file(const std::string& path, const std::string& content);

}  // namespace mab
