// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/explore.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace ifsnet {

Scalar Budget::effective_min_scale(const Ifs& ifs) const {
  if (min_scale) return *min_scale;
  Scalar s(1);
  for (int i = 0; i < 20; ++i) s *= ifs.r_min();
  return s;
}

std::size_t StateGraph::max_cardinality() const {
  std::size_t m = 0;
  for (const auto& s : states) m = std::max(m, s.set.size());
  return m;
}

std::vector<NetInterval> child_step(const Ifs& ifs, const NetInterval& delta) {
  const Interval span = delta.interval();
  Scalar next_scale(0);
  for (const auto& w : delta.generators) next_scale = max(next_scale, w.ratio().abs());

  // generators at the event scale leave the generation and are replaced by
  // their one-letter extensions that still reach into the interior of delta
  std::vector<Word> words;
  for (const auto& w : delta.generators) {
    if (w.ratio().abs() != next_scale) {
      words.push_back(w);
      continue;
    }
    for (std::uint16_t i = 1; i <= ifs.size(); ++i) {
      Word e = w.extended(ifs, i);
      if (e.cylinder().interiors_meet(span)) words.push_back(std::move(e));
    }
  }

  std::vector<Scalar> cuts{delta.lo, delta.hi};
  std::vector<Interval> cylinders;
  cylinders.reserve(words.size());
  for (const auto& w : words) {
    cylinders.push_back(w.cylinder());
    for (const Scalar* p : {&cylinders.back().lo, &cylinders.back().hi}) {
      if (delta.lo < *p && *p < delta.hi) cuts.push_back(*p);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const Generation g(next_scale);
  std::vector<NetInterval> children;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Interval j{cuts[i], cuts[i + 1]};
    if (!meets_attractor(ifs, j)) continue;
    NetInterval child{j.lo, j.hi, g, {}};
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (cylinders[k].contains(j)) child.generators.push_back(words[k]);
    }
    if (child.generators.empty()) throw std::logic_error("child net interval without generators");
    children.push_back(std::move(child));
  }
  return children;
}

Affine relative_placement(const NetInterval& parent, const NetInterval& child) {
  const Scalar m = parent.length();
  return {child.length() / m, (child.lo - parent.lo) / m};
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += workers) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Expanded {
  std::vector<NetInterval> children;
  std::vector<NeighbourSet> sets;
  std::vector<std::string> keys;
};

Expanded expand(const Ifs& ifs, const NetInterval& delta) {
  Expanded out;
  out.children = child_step(ifs, delta);
  for (const auto& c : out.children) {
    out.sets.push_back(neighbour_set(c));
    out.keys.push_back(canonical_key(out.sets.back()));
  }
  return out;
}

/// Why a net interval may not become a new state, or empty if it may.
std::string budget_violation(const NetInterval& delta, const Budget& budget, const Scalar& floor) {
  for (const auto& w : delta.generators) {
    if (w.length() > budget.max_depth) {
      return "max_depth " + std::to_string(budget.max_depth) + " reached";
    }
    if (w.ratio().abs() < floor) return "min_scale " + floor.str() + " reached";
  }
  return {};
}

using Signature = std::multiset<std::pair<std::string, std::string>>;

Signature signature(const NetInterval& parent, const Expanded& e) {
  Signature s;
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    s.emplace(relative_placement(parent, e.children[i]).str(), e.keys[i]);
  }
  return s;
}

class Explorer {
 public:
  Explorer(const Ifs& ifs, const ExploreOptions& options)
      : ifs_(ifs), opt_(options), floor_(options.budget.effective_min_scale(ifs)) {}

  StateGraph by_witness() {
    add_state(root_interval(), neighbour_set(root_interval()), 0);
    std::vector<std::size_t> level{0};
    graph_.growth.push_back(1);
    bool exceeded = false;
    while (!level.empty()) {
      std::vector<Expanded> expanded(level.size());
      parallel_for(level.size(), opt_.threads, [&](std::size_t i) {
        expanded[i] = expand(ifs_, graph_.states[level[i]].witness);
      });
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < level.size(); ++i) {
        const std::size_t parent = level[i];
        auto& e = expanded[i];
        for (std::size_t ord = 0; ord < e.children.size(); ++ord) {
          auto& child = e.children[ord];
          const Affine placement =
              relative_placement(graph_.states[parent].witness, child);
          auto it = index_.find(e.keys[ord]);
          if (it != index_.end()) {
            auto& known = graph_.states[it->second];
            if (known.alternates.size() < opt_.extra_witnesses) known.alternates.push_back(child);
            graph_.edges.push_back({parent, ord, placement, it->second});
            continue;
          }
          std::string why = budget_violation(child, opt_.budget, floor_);
          if (why.empty() && graph_.states.size() >= opt_.budget.max_states) {
            why = "max_states " + std::to_string(opt_.budget.max_states) + " reached";
          }
          if (!why.empty()) {
            exceeded = true;
            if (graph_.budget_reason.empty()) graph_.budget_reason = why;
            graph_.frontier.push_back(std::move(child));
            continue;
          }
          const std::size_t id =
              add_state(std::move(child), std::move(e.sets[ord]), graph_.growth.size());
          graph_.edges.push_back({parent, ord, placement, id});
          next.push_back(id);
        }
      }
      if (!next.empty()) graph_.growth.push_back(next.size());
      level = std::move(next);
    }
    graph_.closed = !exceeded;
    return std::move(graph_);
  }

  /// Every net interval is expanded; never proves closure.
  StateGraph exhaustive() {
    graph_ = StateGraph{};
    graph_.exhaustive = true;
    index_.clear();
    add_state(root_interval(), neighbour_set(root_interval()), 0);
    graph_.growth.push_back(1);
    std::set<std::tuple<std::size_t, std::size_t, std::string, std::size_t>> seen_edges;
    std::vector<std::pair<NetInterval, std::size_t>> level{{root_interval(), 0}};
    std::size_t processed = 0;
    while (!level.empty()) {
      std::vector<Expanded> expanded(level.size());
      parallel_for(level.size(), opt_.threads,
                   [&](std::size_t i) { expanded[i] = expand(ifs_, level[i].first); });
      std::vector<std::pair<NetInterval, std::size_t>> next;
      std::size_t fresh = 0;
      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto& [parent_iv, parent] = level[i];
        auto& e = expanded[i];
        for (std::size_t ord = 0; ord < e.children.size(); ++ord) {
          auto& child = e.children[ord];
          const Affine placement = relative_placement(parent_iv, child);
          std::string why = budget_violation(child, opt_.budget, floor_);
          if (why.empty() && processed >= opt_.max_intervals) why = "max_intervals reached";
          auto it = index_.find(e.keys[ord]);
          std::size_t id;
          if (it != index_.end()) {
            id = it->second;
          } else if (why.empty() && graph_.states.size() < opt_.budget.max_states) {
            id = add_state(child, std::move(e.sets[ord]), graph_.growth.size());
            ++fresh;
          } else {
            if (why.empty()) why = "max_states reached";
            if (graph_.budget_reason.empty()) graph_.budget_reason = why;
            graph_.frontier.push_back(std::move(child));
            continue;
          }
          if (seen_edges.emplace(parent, ord, placement.str(), id).second) {
            graph_.edges.push_back({parent, ord, placement, id});
          }
          if (!why.empty()) {
            if (graph_.budget_reason.empty()) graph_.budget_reason = why;
            graph_.frontier.push_back(std::move(child));
            continue;
          }
          ++processed;
          next.emplace_back(std::move(child), id);
        }
      }
      graph_.growth.push_back(fresh);
      level = std::move(next);
    }
    graph_.closed = false;
    return std::move(graph_);
  }

 private:
  std::size_t add_state(NetInterval witness, NeighbourSet set, std::size_t depth) {
    std::string key = canonical_key(set);
    const std::size_t id = graph_.states.size();
    index_.emplace(key, id);
    graph_.states.push_back({std::move(key), std::move(set), std::move(witness), depth, {}});
    return id;
  }

  const Ifs& ifs_;
  const ExploreOptions& opt_;
  Scalar floor_;
  StateGraph graph_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Re-expands alternate witnesses and compares their refinements with the
/// primary witness.
bool consistent(const Ifs& ifs, const StateGraph& g, unsigned threads) {
  std::unordered_set<std::string> known;
  for (const auto& s : g.states) known.insert(s.key);
  std::vector<char> ok(g.states.size(), 1);
  parallel_for(g.states.size(), threads, [&](std::size_t i) {
    const auto& s = g.states[i];
    if (s.alternates.empty()) return;
    const Signature ref = signature(s.witness, expand(ifs, s.witness));
    for (const auto& alt : s.alternates) {
      const Expanded e = expand(ifs, alt);
      for (const auto& k : e.keys) {
        if (!known.count(k)) ok[i] = 0;
      }
      if (signature(alt, e) != ref) ok[i] = 0;
    }
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

}  // namespace

Saturation saturate(const Ifs& ifs, const ExploreOptions& options) {
  Saturation out;
  if (options.exhaustive) {
    out.graph = Explorer(ifs, options).exhaustive();
  } else {
    out.graph = Explorer(ifs, options).by_witness();
    if (out.graph.closed && !consistent(ifs, out.graph, options.threads)) {
      out.graph = Explorer(ifs, options).exhaustive();
      out.graph.consistency_violated = true;
    }
  }
  const StateGraph& g = out.graph;
  Verdict& v = out.verdict;
  v.state_count = g.states.size();
  v.max_neighbours = g.max_cardinality();
  for (const auto& f : g.frontier) {
    v.max_neighbours = std::max(v.max_neighbours, neighbour_set(f).size());
  }
  if (g.closed) {
    v.fnc = FncStatus::Closed;
    v.wsc_proved = true;
    v.e_size = e_from_graph(g).size();
    v.wsc_bound = wsc_bound(g, ifs);
  } else {
    v.fnc = FncStatus::BudgetExceeded;
    v.still_growing = !g.growth.empty() && g.growth.back() > 0;
  }
  return out;
}

std::vector<Affine> e_from_graph(const StateGraph& g) {
  if (!g.closed) throw std::logic_error("E from the graph requires a closed graph");
  std::unordered_set<Affine, AffineHash> e;
  for (const auto& s : g.states) {
    for (const auto& ti : s.set.members()) {
      const Affine inv = invert(ti);
      for (const auto& tj : s.set.members()) e.insert(compose(inv, tj));
    }
  }
  std::vector<Affine> out(e.begin(), e.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

EProfile e_direct_profile(const Ifs& ifs, const Scalar& min_scale) {
  EProfile p;
  p.ladder = event_ladder(ifs, min_scale);
  std::unordered_set<Affine, AffineHash> e{Affine::identity()};
  for (const auto& alpha : p.ladder) {
    const auto maps = generation_maps(ifs, Generation(alpha));
    std::vector<std::pair<Interval, const Affine*>> cyl;
    cyl.reserve(maps.size());
    for (const auto& f : maps) cyl.emplace_back(image_of_unit(f), &f);
    std::sort(cyl.begin(), cyl.end(),
              [](const auto& x, const auto& y) { return x.first.lo < y.first.lo; });
    for (std::size_t i = 0; i < cyl.size(); ++i) {
      const Affine inv_i = invert(*cyl[i].second);
      for (std::size_t j = i + 1; j < cyl.size() && cyl[j].first.lo < cyl[i].first.hi; ++j) {
        e.insert(compose(inv_i, *cyl[j].second));
        e.insert(compose(invert(*cyl[j].second), *cyl[i].second));
      }
    }
    p.cumulative.push_back(e.size());
  }
  p.elements.assign(e.begin(), e.end());
  std::sort(p.elements.begin(), p.elements.end(), canonical_less);
  return p;
}

std::vector<Affine> e_direct(const Ifs& ifs, const Scalar& min_scale) {
  return e_direct_profile(ifs, min_scale).elements;
}

Scalar deepest_witness_scale(const StateGraph& g) {
  Scalar s(1);
  for (const auto& st : g.states) s = min(s, st.witness.generation.alpha());
  return s;
}

std::vector<Affine> n_of_gamma(const std::vector<Affine>& gamma) {
  std::unordered_set<Affine, AffineHash> out;
  const Scalar unit[2] = {Scalar(0), Scalar(1)};
  for (const auto& f1 : gamma) {
    for (const auto& v1 : unit) {
      for (const auto& f2 : gamma) {
        for (const auto& v2 : unit) {
          const Scalar base = f2(v2);
          const Scalar den = f1(v1) - base;
          if (den.is_zero()) continue;
          for (const auto& f3 : gamma) out.insert({f3.L / den, (f3.a - base) / den});
        }
      }
    }
  }
  std::vector<Affine> sorted(out.begin(), out.end());
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  return sorted;
}

bool n_of_gamma_contains(const std::vector<Affine>& gamma, const Affine& t) {
  const std::unordered_set<Affine, AffineHash> members(gamma.begin(), gamma.end());
  const Scalar unit[2] = {Scalar(0), Scalar(1)};
  for (const auto& f1 : gamma) {
    for (const auto& v1 : unit) {
      for (const auto& f2 : gamma) {
        for (const auto& v2 : unit) {
          const Scalar base = f2(v2);
          const Scalar den = f1(v1) - base;
          if (den.is_zero()) continue;
          // t = (f3 - base)/den  <=>  f3 = den*t + base
          if (members.count(Affine{t.L * den, t.a * den + base})) return true;
        }
      }
    }
  }
  return false;
}

Integer wsc_bound(const StateGraph& g, const Ifs& ifs) {
  const std::size_t m = g.max_cardinality();
  if (m == 0) throw std::logic_error("state graph has no states");
  return (Scalar(static_cast<long>(4 * m)) / ifs.r_min()).ceil();
}

}  // namespace ifsnet
