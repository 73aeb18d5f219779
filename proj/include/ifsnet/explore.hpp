// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ifsnet/neighbour.hpp"

namespace ifsnet {

struct Budget {
  std::size_t max_states = 10000;
  /// Maximum word length of any generator.
  std::size_t max_depth = 64;
  /// Smallest |r_sigma| a generator may have; r_min^20 when absent.
  std::optional<Scalar> min_scale;

  Scalar effective_min_scale(const Ifs& ifs) const;
};

struct ExploreOptions {
  Budget budget;
  unsigned threads = 1;
  /// Extra witnesses per state re-expanded by the consistency check.
  std::size_t extra_witnesses = 2;
  /// Expand every discovered net interval instead of one witness per state.
  bool exhaustive = false;
  /// Interval cap for exhaustive expansion.
  std::size_t max_intervals = 20000;
};

struct State {
  std::string key;
  NeighbourSet set;
  NetInterval witness;
  /// BFS level at which the state was discovered (root = 0).
  std::size_t depth = 0;
  /// Later net intervals found with the same neighbour set (bounded).
  std::vector<NetInterval> alternates;
};

/// Refinement edge: placement maps [0,1] onto the child inside the parent's
/// normalized coordinates.
struct Edge {
  std::size_t parent;
  std::size_t ordinal;
  Affine placement;
  std::size_t child;
};

struct StateGraph {
  std::vector<State> states;
  std::vector<Edge> edges;
  bool closed = false;
  /// Net intervals left unexpanded when the budget ran out.
  std::vector<NetInterval> frontier;
  /// Number of new states discovered at each BFS level.
  std::vector<std::size_t> growth;
  /// Set when two witnesses of one state refined differently; the graph then
  /// comes from exhaustive expansion.
  bool consistency_violated = false;
  bool exhaustive = false;
  std::string budget_reason;

  std::size_t max_cardinality() const;
};

enum class FncStatus { Closed, BudgetExceeded };

struct Verdict {
  FncStatus fnc = FncStatus::BudgetExceeded;
  std::size_t state_count = 0;
  bool still_growing = false;
  /// WSC is proved via the finite neighbour condition iff fnc is Closed;
  /// otherwise only the observed maximum #V is reported.
  bool wsc_proved = false;
  std::size_t max_neighbours = 0;
  /// #E_S((0,1)) when it is proved finite.
  std::optional<std::size_t> e_size;
  std::optional<Integer> wsc_bound;
};

/// Children of delta at the next event scale: the elements of F_{alpha'}
/// contained in delta, where alpha' is the largest generator ratio.
std::vector<NetInterval> child_step(const Ifs& ifs, const NetInterval& delta);

/// T_parent^-1 o T_child.
Affine relative_placement(const NetInterval& parent, const NetInterval& child);

struct Saturation {
  StateGraph graph;
  Verdict verdict;
};

/// Breadth-first closure of the neighbour-set states from the root [0,1].
Saturation saturate(const Ifs& ifs, const ExploreOptions& options = {});

/// E_S((0,1)) = {T_i^-1 o T_j : T_i, T_j in one state}, canonically sorted.
/// Throws std::logic_error unless the graph is closed.
std::vector<Affine> e_from_graph(const StateGraph& g);

/// Brute-force E over the event ladder down to min_scale; canonically sorted.
std::vector<Affine> e_direct(const Ifs& ifs, const Scalar& min_scale);

/// Cumulative #E collected after each ladder level (same order as the ladder).
struct EProfile {
  std::vector<Scalar> ladder;
  std::vector<std::size_t> cumulative;
  std::vector<Affine> elements;
};
EProfile e_direct_profile(const Ifs& ifs, const Scalar& min_scale);

/// Smallest witness generation over all states.
Scalar deepest_witness_scale(const StateGraph& g);

std::vector<Affine> n_of_gamma(const std::vector<Affine>& gamma);
/// Membership in N(gamma) without materializing it.
bool n_of_gamma_contains(const std::vector<Affine>& gamma, const Affine& t);

/// ceil(4 M / r_min), M the largest state cardinality.
Integer wsc_bound(const StateGraph& g, const Ifs& ifs);

}  // namespace ifsnet
