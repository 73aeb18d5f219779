// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ifsnet/constants.hpp"
#include "ifsnet/spec_file.hpp"

namespace ifsnet {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ifsnet-report/1";
inline constexpr const char* kToolVersion = "1.0.0";

/// {"exact": ..., "decimal": ...}; the decimal is advisory.
Json scalar_json(const Scalar& s);
Json affine_json(const Affine& f);
Json report_header(const std::string& command);
Json system_json(const LoadedSystem& sys);
Json budget_json(const Budget& budget, const Ifs& ifs);
Json net_intervals_json(const Ifs& ifs, const Generation& g, bool with_neighbours);
Json fnc_json(const Saturation& s, const Ifs& ifs);

/// States as nodes labelled "v<n>" plus their neighbour set, refinement
/// edges labelled by the placement map.
std::string render_dot(const StateGraph& g, const std::string& name);

/// Ordered pairs (sigma, tau) of the generation, sigma == tau included, whose
/// cylinders overlap by at least delta*alpha.
std::vector<std::pair<Word, Word>> overlapping_pairs(const Ifs& ifs, const Generation& g,
                                                     const Scalar& delta, std::size_t cap);

/// Independent check of the phi postconditions; empty string when they hold.
std::string phi_defect(const Ifs& ifs, const Word& sigma, const Word& tau, const Scalar& delta,
                       const PhiResult& r);

struct VerifyOptions {
  ExploreOptions explore;
  Scalar bsp_floor{1, 10000};
  std::size_t phi_pairs = 200;
  std::uint64_t seed = 0x5eed1f5ULL;
  /// Pairs are drawn from generations down to r_min^phi_depth.
  std::size_t phi_depth = 4;
  /// The finiteness and decay evidence runs down to r_min^coherence_depth.
  std::size_t coherence_depth = 6;
  std::size_t dichotomy_depth = 3;
  std::size_t e_delta_words = 2000000;
};

enum class Outcome { Passed, Inconclusive, Failed };

struct VerifyResult {
  Json report;
  Outcome outcome = Outcome::Inconclusive;
};

/// The full check suite. Every field of the report is deterministic.
VerifyResult verify(const LoadedSystem& sys, const VerifyOptions& options);

int exit_code(Outcome o);

}  // namespace ifsnet
