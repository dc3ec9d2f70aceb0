#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cylpeak/combinatorics.hpp"
#include "cylpeak/model.hpp"
#include "cylpeak/monte_carlo.hpp"
#include "cylpeak/scaling.hpp"

namespace cylpeak {

// {"support": [[value, prob], ...], "tail_bound": r}
std::string pmf_to_json(const Pmf& p);
Pmf pmf_from_json(const std::string& text);

// {"model": {"a", "q", "n"}, "scaling": {"eps": [...], "s_grid": [...], "alpha" | "beta", "c2_mode"},
//  "quad": {...}, "seed", "out"}; absent keys keep their defaults.
struct ExperimentConfig {
    ModelParams model;
    ConvergeConfig converge;
    bool has_alpha = false, has_beta = false;
    std::uint64_t seed = 1;
    std::string out;
};

ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// CSV writers; reals use %.17g so output bytes are reproducible.
void write_samples_csv(std::ostream& os, const std::vector<PeakSample>& samples);
void write_converge_csv(std::ostream& os, const std::vector<ConvergeRow>& rows);

void write_cdf_compare_csv(std::ostream& os, const std::vector<CdfCompareRow>& rows);

std::string format_real(double v);

}  // namespace cylpeak
