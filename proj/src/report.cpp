// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/report.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ifsnet {

Json scalar_json(const Scalar& s) {
  Json j;
  j["exact"] = s.str();
  j["decimal"] = s.decimal(30);
  return j;
}

Json affine_json(const Affine& f) {
  Json j;
  j["L"] = f.L.str();
  j["a"] = f.a.str();
  return j;
}

Json report_header(const std::string& command) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = "ifsnet";
  j["version"] = kToolVersion;
  j["command"] = command;
  return j;
}

Json system_json(const LoadedSystem& sys) {
  Json j;
  j["name"] = sys.spec.name;
  j["radicand"] = sys.spec.radicand;
  j["k"] = sys.normalized.size();
  Json in = Json::array();
  for (const auto& f : sys.raw.maps()) in.push_back(affine_json(f));
  j["input_maps"] = std::move(in);
  j["conjugation"] = affine_json(sys.conjugation);
  Json out = Json::array();
  for (const auto& f : sys.normalized.maps()) out.push_back(affine_json(f));
  j["maps"] = std::move(out);
  j["r_min"] = sys.normalized.r_min().str();
  j["r_max"] = sys.normalized.r_max().str();
  j["attractor_is_interval"] = attractor_is_interval(sys.normalized);
  return j;
}

Json budget_json(const Budget& budget, const Ifs& ifs) {
  Json j;
  j["max_states"] = budget.max_states;
  j["max_depth"] = budget.max_depth;
  j["min_scale"] = budget.effective_min_scale(ifs).str();
  return j;
}

namespace {

Json words_json(const std::vector<Word>& words) {
  Json j = Json::array();
  for (const auto& w : words) j.push_back(w.str());
  return j;
}

Json neighbours_json(const NeighbourSet& v) {
  Json j = Json::array();
  for (const auto& t : v.members()) j.push_back(affine_json(t));
  return j;
}

Json interval_json(const NetInterval& d) {
  Json j;
  j["lo"] = d.lo.str();
  j["hi"] = d.hi.str();
  j["generation"] = d.generation.alpha().str();
  j["generators"] = words_json(d.generators);
  return j;
}

std::string status_text(Outcome o) {
  switch (o) {
    case Outcome::Passed:
      return "passed";
    case Outcome::Failed:
      return "failed";
    case Outcome::Inconclusive:
      break;
  }
  return "inconclusive";
}

Json skipped(const std::string& reason) {
  Json j;
  j["status"] = "skipped";
  j["reason"] = reason;
  return j;
}

Scalar power(const Scalar& x, std::size_t n) {
  Scalar out(1);
  for (std::size_t i = 0; i < n; ++i) out *= x;
  return out;
}

}  // namespace

Json net_intervals_json(const Ifs& ifs, const Generation& g, bool with_neighbours) {
  Json j;
  j["alpha"] = g.alpha().str();
  Json list = Json::array();
  for (const auto& d : net_intervals(ifs, g)) {
    Json item;
    item["lo"] = d.lo.str();
    item["hi"] = d.hi.str();
    item["generators"] = words_json(d.generators);
    if (with_neighbours) item["neighbours"] = neighbours_json(neighbour_set(d));
    list.push_back(std::move(item));
  }
  j["count"] = list.size();
  j["intervals"] = std::move(list);
  return j;
}

Json fnc_json(const Saturation& s, const Ifs& ifs) {
  const StateGraph& g = s.graph;
  Json j;
  j["status"] = s.verdict.fnc == FncStatus::Closed ? "Closed" : "BudgetExceeded";
  j["state_count"] = s.verdict.state_count;
  j["still_growing"] = s.verdict.still_growing;
  j["max_neighbours"] = s.verdict.max_neighbours;
  j["wsc_proved"] = s.verdict.wsc_proved;
  j["wsc_bound"] = s.verdict.wsc_bound ? Json(s.verdict.wsc_bound->get_str()) : Json();
  j["e_size"] = s.verdict.e_size ? Json(*s.verdict.e_size) : Json();
  j["budget_reason"] = g.budget_reason;
  j["exhaustive"] = g.exhaustive;
  j["consistency_violated"] = g.consistency_violated;
  j["growth"] = g.growth;
  j["frontier"] = g.frontier.size();
  Json states = Json::array();
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    const State& st = g.states[i];
    Json item;
    item["id"] = i;
    item["label"] = "v" + std::to_string(i + 1);
    item["depth"] = st.depth;
    item["cardinality"] = st.set.size();
    item["rendering"] = st.set.str();
    item["neighbours"] = neighbours_json(st.set);
    item["witness"] = interval_json(st.witness);
    states.push_back(std::move(item));
  }
  j["states"] = std::move(states);
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json item;
    item["parent"] = e.parent;
    item["ordinal"] = e.ordinal;
    item["placement"] = affine_json(e.placement);
    item["child"] = e.child;
    edges.push_back(std::move(item));
  }
  j["edges"] = std::move(edges);
  if (g.closed) {
    Json e = Json::array();
    for (const auto& f : e_from_graph(g)) e.push_back(affine_json(f));
    j["E"] = std::move(e);
    j["deepest_witness_scale"] = deepest_witness_scale(g).str();
  }
  (void)ifs;
  return j;
}

std::string render_dot(const StateGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << (name.empty() ? "ifs" : name) << "\" {\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    out << "  s" << i << " [label=\"v" << i + 1 << "\\n" << g.states[i].set.str() << "\"];\n";
  }
  for (const auto& e : g.edges) {
    out << "  s" << e.parent << " -> s" << e.child << " [label=\"" << e.ordinal << ": "
        << e.placement.str() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<std::pair<Word, Word>> overlapping_pairs(const Ifs& ifs, const Generation& g,
                                                     const Scalar& delta, std::size_t cap) {
  auto words = lambda_alpha(ifs, g);
  std::sort(words.begin(), words.end(), [](const Word& x, const Word& y) {
    const Interval cx = x.cylinder();
    const Interval cy = y.cylinder();
    if (cx.lo != cy.lo) return cx.lo < cy.lo;
    return x < y;
  });
  const Scalar need = delta * g.alpha();
  std::vector<std::pair<Word, Word>> out;
  for (std::size_t i = 0; i < words.size() && out.size() < cap; ++i) {
    const Interval ci = words[i].cylinder();
    for (std::size_t j = i; j < words.size() && out.size() < cap; ++j) {
      const Interval cj = words[j].cylinder();
      if (cj.lo >= ci.hi) break;
      if (overlap(ci, cj) < need) continue;
      out.emplace_back(words[i], words[j]);
      if (j != i && out.size() < cap) out.emplace_back(words[j], words[i]);
    }
  }
  return out;
}

std::string phi_defect(const Ifs& ifs, const Word& sigma, const Word& tau, const Scalar& delta,
                       const PhiResult& r) {
  const Word& expect_psi = r.psi_is_sigma ? sigma : tau;
  if (!(r.psi == expect_psi)) return "psi is neither sigma nor tau";
  std::vector<std::uint16_t> letters = r.psi.letters();
  letters.insert(letters.end(), r.phi.letters().begin(), r.phi.letters().end());
  if (letters != r.psi_phi.letters()) return "psi_phi is not psi followed by phi";
  const Word rebuilt = Word::from_letters(ifs, letters);
  if (!(rebuilt.map() == r.psi_phi.map())) return "psi_phi map mismatch";
  if (rebuilt.ratio().sign() <= 0) return "r_{psi phi} is not positive";
  const Scalar r_min = ifs.r_min();
  if (Word::from_letters(ifs, r.phi.letters()).ratio().abs() < delta * r_min * r_min) {
    return "|r_phi| below delta r_min^2";
  }
  const Interval img = rebuilt.cylinder();
  const Interval cs = sigma.cylinder();
  const Interval ct = tau.cylinder();
  if (!cs.contains(img) || !ct.contains(img)) return "image not inside both cylinders";
  return {};
}

int exit_code(Outcome o) { return o == Outcome::Passed ? 0 : 2; }

VerifyResult verify(const LoadedSystem& sys, const VerifyOptions& options) {
  const Ifs& ifs = sys.normalized;
  const Scalar r_min = ifs.r_min();
  const bool interval = attractor_is_interval(ifs);
  bool any_failed = false;
  auto record = [&](Json& check, bool ok) {
    check["status"] = ok ? "passed" : "failed";
    if (!ok) any_failed = true;
  };

  Json report = report_header("verify");
  report["system"] = system_json(sys);
  report["budget"] = budget_json(options.explore.budget, ifs);

  const Saturation sat = saturate(ifs, options.explore);
  const bool closed = sat.graph.closed;
  report["fnc"] = fnc_json(sat, ifs);

  const Scalar d = delta(ifs);
  Json constants;
  constants["delta"] = scalar_json(d);
  constants["word_constant"] = scalar_json(word_constant(ifs, d));
  std::optional<CConstants> cc;
  std::optional<EDelta> ed;
  if (closed) {
    cc = c_constants(ifs, sat.graph);
    constants["c1"] = scalar_json(cc->c1);
    constants["c2"] = scalar_json(cc->c2);
    constants["c"] = scalar_json(cc->c);
    if (interval) {
      try {
        ed.emplace(e_delta(ifs, sat.graph, d, options.e_delta_words));
        constants["e_delta_gamma"] = ed->gamma().size();
        constants["e_delta_beta"] = ed->beta().str();
        const EpsilonConstants eps = epsilon_constants(ifs, *ed);
        constants["eps1"] = scalar_json(eps.eps1);
        constants["eps2"] = scalar_json(eps.eps2);
        constants["eps"] = scalar_json(eps.eps);
      } catch (const EnumerationBudgetExceeded& e) {
        constants["e_delta"] = skipped(e.what());
      }
    }
  }
  report["constants"] = std::move(constants);

  Json checks;

  // E from the graph against the brute-force collection.
  if (closed) {
    Json c;
    const auto from_graph = e_from_graph(sat.graph);
    const Scalar shallow = power(r_min, 3);
    const auto direct_shallow = e_direct(ifs, shallow);
    const Scalar deep = min(shallow, deepest_witness_scale(sat.graph));
    const auto direct_deep = deep == shallow ? direct_shallow : e_direct(ifs, deep);
    std::size_t missing = 0;
    for (const auto& f : direct_shallow) {
      if (!std::binary_search(from_graph.begin(), from_graph.end(), f, canonical_less)) ++missing;
    }
    c["graph_size"] = from_graph.size();
    c["direct_size_r_min_cubed"] = direct_shallow.size();
    c["direct_scale"] = deep.str();
    c["direct_size"] = direct_deep.size();
    c["missing_from_graph"] = missing;
    record(c, missing == 0 && direct_deep == from_graph);
    checks["e_oracle"] = std::move(c);
  } else {
    checks["e_oracle"] = skipped("graph not closed");
  }

  // Separation at every event scale down to the floor.
  std::optional<BspReport> bsp;
  if (cc) {
    Json c;
    bsp = check_bsp(ifs, cc->c, event_ladder(ifs, options.bsp_floor), options.explore.threads);
    std::optional<Scalar> worst;
    for (const auto& level : bsp->levels) {
      if (level.points > 1 && (!worst || level.min_ratio < *worst)) worst = level.min_ratio;
    }
    c["floor"] = options.bsp_floor.str();
    c["levels"] = bsp->levels.size();
    c["violations"] = bsp->violations;
    c["min_gap_over_alpha"] = worst ? Json(worst->str()) : Json();
    record(c, bsp->violations == 0);
    checks["bsp"] = std::move(c);
  } else {
    checks["bsp"] = skipped("no separation constant without a closed graph");
  }

  // phi on random overlapping pairs.
  {
    Json c;
    std::vector<std::pair<std::pair<Word, Word>, Scalar>> pool;
    for (const auto& alpha : event_ladder(ifs, power(r_min, options.phi_depth))) {
      for (auto& p : overlapping_pairs(ifs, Generation(alpha), d, 5000)) {
        pool.emplace_back(std::move(p), alpha);
      }
    }
    std::mt19937_64 rng(options.seed);
    std::size_t failures = 0;
    std::size_t tried = 0;
    Json examples = Json::array();
    if (!pool.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      for (; tried < options.phi_pairs; ++tried) {
        const auto& [pair, alpha] = pool[pick(rng)];
        std::string defect;
        try {
          defect = phi_defect(ifs, pair.first, pair.second, d,
                              construct_phi(ifs, pair.first, pair.second, d, alpha));
        } catch (const std::exception& e) {
          defect = e.what();
        }
        if (!defect.empty()) {
          ++failures;
          if (examples.size() < 5) {
            examples.push_back(pair.first.str() + " " + pair.second.str() + ": " + defect);
          }
        }
      }
    }
    c["pool"] = pool.size();
    c["pairs"] = tried;
    c["failures"] = failures;
    c["examples"] = std::move(examples);
    record(c, failures == 0 && tried == options.phi_pairs);
    checks["phi"] = std::move(c);
  }

  // Ball counts on the fixed grid.
  {
    Json c;
    std::size_t worst = 0;
    const Word tau1 = Word::from_letters(ifs, {1});
    for (std::size_t n = 0; n <= 6; ++n) {
      const Generation g(power(r_min, n));
      for (const Scalar& x0 : {Scalar(0), Scalar(1, 2), Scalar(1)}) {
        for (const Word* tau : {static_cast<const Word*>(nullptr), &tau1}) {
          worst = std::max(worst, wsc_ball_count(ifs, x0, tau ? *tau : Word{}, g));
        }
      }
    }
    c["max_count"] = worst;
    if (sat.verdict.wsc_bound) {
      c["bound"] = sat.verdict.wsc_bound->get_str();
      record(c, Integer(static_cast<unsigned long>(worst)) <= *sat.verdict.wsc_bound);
    } else {
      c["status"] = "skipped";
      c["reason"] = "no bound without a closed graph";
    }
    checks["wsc_balls"] = std::move(c);
  }

  if (ed) {
    Json c;
    const auto rep = check_dichotomy(ifs, *ed, d, event_ladder(ifs, power(r_min, options.dichotomy_depth)));
    c["pairs"] = rep.pairs_checked;
    c["violations"] = rep.violations;
    record(c, rep.violations == 0);
    checks["dichotomy"] = std::move(c);
  } else {
    checks["dichotomy"] = skipped(interval ? "E_delta unavailable" : "attractor is not an interval");
  }

  // Closure, finiteness of E and separation must agree on interval attractors.
  if (interval) {
    Json c;
    const Scalar floor = power(r_min, options.coherence_depth);
    const EProfile profile = e_direct_profile(ifs, floor);
    const std::size_t levels = profile.ladder.size();
    const std::size_t tail = std::max<std::size_t>(2, levels / 3);
    const bool e_finite =
        levels > tail && profile.cumulative.back() == profile.cumulative[levels - 1 - tail];
    bool separated = false;
    if (bsp) {
      separated = bsp->violations == 0;
    } else {
      // without c, look for a positive lower bound on gap/alpha
      const BspReport decay = check_bsp(ifs, Scalar(0), profile.ladder, options.explore.threads);
      std::optional<Scalar> head;
      std::optional<Scalar> late;
      for (std::size_t i = 0; i < decay.levels.size(); ++i) {
        const auto& level = decay.levels[i];
        if (level.points < 2) continue;
        auto& slot = i + tail < decay.levels.size() ? head : late;
        if (!slot || level.min_ratio < *slot) slot = level.min_ratio;
      }
      separated = head && late && *late >= *head;
    }
    c["fnc_closed"] = closed;
    c["e_finite"] = e_finite;
    c["separated"] = separated;
    c["e_profile"] = profile.cumulative;
    record(c, closed == e_finite && e_finite == separated);
    checks["coherence"] = std::move(c);
  } else {
    checks["coherence"] = skipped("attractor is not an interval");
  }

  report["checks"] = std::move(checks);
  VerifyResult result;
  result.outcome = any_failed ? Outcome::Failed : closed ? Outcome::Passed : Outcome::Inconclusive;
  report["status"] = status_text(result.outcome);
  result.report = std::move(report);
  return result;
}

}  // namespace ifsnet
