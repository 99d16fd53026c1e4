#include "mab/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <tuple>

namespace mab {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const auto res =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("csv: not a number: \"" + text + "\"");
    }
    return value;
}

std::string curves_csv(const std::string& experiment_id, std::size_t k,
                       const std::vector<AggregateCurve>& curves) {
    if (curves.empty()) {
        throw std::invalid_argument("curves_csv: no curves to write");
    }
    struct Row {
        std::string policy;
        std::string metric;
        std::int64_t checkpoint;
        std::string text;
    };
    std::vector<Row> rows;
    const std::string prefix = experiment_id + "," ;
    for (const auto& curve : curves) {
        for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
            const auto& s = curve.stats[i];
            Row row{curve.policy_id, curve.metric, curve.checkpoints[i], {}};
            row.text = prefix + curve.policy_id + "," + std::to_string(k) + "," +
                       std::to_string(curve.checkpoints[i]) + "," + curve.metric +
                       "," + format_double(s.mean) + "," +
                       format_double(s.stderr_of_mean) + "," +
                       std::to_string(s.trials) + "\n";
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.policy, a.metric, a.checkpoint) <
               std::tie(b.policy, b.metric, b.checkpoint);
    });
    std::string out =
        "experiment_id,policy,k,checkpoint_step,metric,mean,stderr,trials\n";
    for (const auto& row : rows) out += row.text;
    return out;
}

std::string grid_csv(const SweepResult& result) {
    if (result.cells.empty()) {
        throw std::invalid_argument("grid_csv: empty grid");
    }
    // Cells are generated in sorted (alpha, m) / c order already.
    std::string out = result.gwa_grid ? "alpha,m,mean_final_regret,stderr\n"
                                      : "c,mean_final_regret,stderr\n";
    for (const auto& cell : result.cells) {
        if (result.gwa_grid) {
            out += format_double(cell.alpha) + "," + format_double(cell.m) + ",";
        } else {
            out += format_double(cell.c) + ",";
        }
        out += format_double(cell.mean_final_regret) + "," +
               format_double(cell.stderr_of_mean) + "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

}  // namespace mab
