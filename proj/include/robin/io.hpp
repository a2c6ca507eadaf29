#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "robin/analysis.hpp"
#include "robin/mcmc.hpp"

namespace robin::io {

// Chain CSV: one row per recorded sample with columns
// iteration, theta[-K..K], loglik, step. All doubles are written with 17
// significant digits so re-runs are byte-identical.
void write_chain_csv(const mcmc::ChainRecord& record, const std::string& path);
mcmc::ChainRecord read_chain_csv(const std::string& path);

void write_band_csv(const std::vector<double>& grid, const std::vector<double>& lower,
                    const std::vector<double>& mean, const std::vector<double>& upper,
                    const std::vector<double>& truth, const std::string& path);

void write_trace_csv(const mcmc::ChainRecord& record, const std::string& path);

// Raw per-coefficient samples, one column per k (histogram source data).
void write_coeff_samples_csv(const mcmc::ChainRecord& record, const std::string& path);

void write_json(const nlohmann::json& j, const std::string& path);

std::string format_double(double v);

// FNV-1a content hash, used for run manifests and input consistency checks.
std::uint64_t fnv1a_hash(const std::string& bytes);
std::uint64_t hash_file(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace robin::io
