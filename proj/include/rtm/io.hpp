#pragma once

#include <string>
#include <vector>

#include "rtm/ensembles.hpp"
#include "rtm/statistics.hpp"

namespace rtm {

// Header `trial,index,eigenvalue`, one row per eigenvalue, 17-significant-
// digit decimals. Output is byte-identical for identical inputs.
void write_eigenvalue_csv(const std::string& path, const std::vector<SpectralSample>& samples);

std::string spec_json(const EnsembleSpec& spec);

// {"spec": ..., "trials": ..., "lambda_max": {...}, "lambda_min": {...},
//  "ks": ..., "moments": [{"m":..,"mean":..,"std_error":..}, ...]}
std::string stats_json(const EnsembleSpec& spec, long long trials, const ExtremeStats& extremes, double ks,
                       const std::vector<MomentEstimate>& moments);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace rtm
