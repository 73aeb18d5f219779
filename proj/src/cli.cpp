// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ifsnet/report.hpp"

namespace ifsnet {

namespace {

struct Common {
  std::string spec_path;
  std::string output;
  unsigned threads = 1;
  std::optional<std::size_t> max_states;
  std::optional<std::size_t> max_depth;
  std::string min_scale;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("spec", c.spec_path, "system description file")->required();
  cmd->add_option("-o,--output", c.output, "write the report here instead of stdout");
}

void add_budget(CLI::App* cmd, Common& c) {
  cmd->add_option("--max-states", c.max_states, "stop after this many neighbour sets");
  cmd->add_option("--max-depth", c.max_depth, "longest generator word allowed");
  cmd->add_option("--min-scale", c.min_scale, "smallest generator ratio allowed (exact scalar)");
}

Budget budget_for(const LoadedSystem& sys, const Common& c) {
  Budget b = sys.spec.budget();
  if (c.max_states) b.max_states = *c.max_states;
  if (c.max_depth) b.max_depth = *c.max_depth;
  if (!c.min_scale.empty()) {
    b.min_scale = Scalar::parse(c.min_scale);
    if (b.min_scale->sign() <= 0) throw std::invalid_argument("--min-scale must be positive");
  }
  return b;
}

ExploreOptions explore_for(const LoadedSystem& sys, const Common& c) {
  ExploreOptions o;
  o.budget = budget_for(sys, c);
  o.threads = std::max(1U, c.threads);
  return o;
}

Generation generation_arg(const std::string& text) {
  return Generation(Scalar::parse(text));
}

void emit(const Json& report, const Common& c, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + c.output);
  file << text;
}

int fnc_exit(const Saturation& s) { return s.graph.closed ? 0 : 2; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neighbour-set analysis of self-similar sets on the line"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--threads", c.threads, "worker threads for exploration and checks")
      ->check(CLI::Range(1U, 256U));

  std::string alpha;
  std::string dot_path;
  bool as_spec = false;
  VerifyOptions vopt;
  std::string bsp_floor;

  auto* normalize = app.add_subcommand("normalize", "echo the hull-normalized system");
  add_common(normalize, c);
  normalize->add_flag("--emit-spec", as_spec, "print a system description instead of a report");

  auto* nets = app.add_subcommand("net-intervals", "net intervals of one generation");
  add_common(nets, c);
  nets->add_option("--alpha", alpha, "scale 0 < alpha <= 1 (exact scalar)")->required();

  auto* neigh = app.add_subcommand("neighbours", "net intervals with their neighbour sets");
  add_common(neigh, c);
  neigh->add_option("--alpha", alpha, "scale 0 < alpha <= 1 (exact scalar)")->required();

  auto* fnc = app.add_subcommand("check-fnc", "close the neighbour-set graph");
  add_common(fnc, c);
  add_budget(fnc, c);

  auto* wsc = app.add_subcommand("check-wsc", "weak separation via the neighbour sets");
  add_common(wsc, c);
  add_budget(wsc, c);

  auto* cons = app.add_subcommand("constants", "separation constants");
  add_common(cons, c);
  add_budget(cons, c);

  auto* ver = app.add_subcommand("verify", "run every check");
  add_common(ver, c);
  add_budget(ver, c);
  ver->add_option("--bsp-floor", bsp_floor, "smallest scale for the separation check");
  ver->add_option("--phi-pairs", vopt.phi_pairs, "random pairs for the phi construction");
  ver->add_option("--seed", vopt.seed, "seed for the pair sampler");

  auto* graph = app.add_subcommand("graph", "export the neighbour-set graph");
  add_common(graph, c);
  add_budget(graph, c);
  graph->add_option("--dot", dot_path, "DOT output path")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const LoadedSystem sys = load_spec_file(c.spec_path);
    const Ifs& ifs = sys.normalized;

    if (*normalize) {
      if (as_spec) {
        SpecFile s = sys.spec;
        s.maps = ifs.maps();
        const std::string text = render_spec(s);
        if (c.output.empty()) {
          out << text;
        } else {
          std::ofstream(c.output, std::ios::binary) << text;
        }
        return 0;
      }
      Json r = report_header("normalize");
      r["system"] = system_json(sys);
      emit(r, c, out);
      return 0;
    }
    if (*nets || *neigh) {
      Json r = report_header(*nets ? "net-intervals" : "neighbours");
      r["system"] = system_json(sys);
      r["net"] = net_intervals_json(ifs, generation_arg(alpha), bool(*neigh));
      emit(r, c, out);
      return 0;
    }
    if (*fnc || *wsc || *cons || *graph) {
      const ExploreOptions opts = explore_for(sys, c);
      const Saturation s = saturate(ifs, opts);
      Json r = report_header(fnc->parsed()     ? "check-fnc"
                             : wsc->parsed()   ? "check-wsc"
                             : cons->parsed()  ? "constants"
                                               : "graph");
      r["system"] = system_json(sys);
      r["budget"] = budget_json(opts.budget, ifs);
      if (*graph) {
        std::ofstream file(dot_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + dot_path);
        file << render_dot(s.graph, sys.spec.name);
        r["dot"] = dot_path;
        r["fnc"] = fnc_json(s, ifs);
      } else if (*fnc) {
        r["fnc"] = fnc_json(s, ifs);
      } else if (*wsc) {
        Json w;
        w["fnc"] = s.graph.closed ? "Closed" : "BudgetExceeded";
        w["wsc"] = s.verdict.wsc_proved ? "proved" : "unknown";
        w["state_count"] = s.verdict.state_count;
        w["max_neighbours"] = s.verdict.max_neighbours;
        w["bound"] = s.verdict.wsc_bound ? Json(s.verdict.wsc_bound->get_str()) : Json();
        r["wsc"] = std::move(w);
      } else {
        const Scalar d = delta(ifs);
        Json k;
        k["delta"] = scalar_json(d);
        k["word_constant"] = scalar_json(word_constant(ifs, d));
        if (s.graph.closed) {
          const CConstants cc = c_constants(ifs, s.graph);
          k["c1"] = scalar_json(cc.c1);
          k["c2"] = scalar_json(cc.c2);
          k["c"] = scalar_json(cc.c);
          if (attractor_is_interval(ifs)) {
            try {
              const EpsilonConstants eps = epsilon_constants(ifs, e_delta(ifs, s.graph, d));
              k["eps1"] = scalar_json(eps.eps1);
              k["eps2"] = scalar_json(eps.eps2);
              k["eps"] = scalar_json(eps.eps);
            } catch (const EnumerationBudgetExceeded& e) {
              k["eps"] = e.what();
            }
          }
        }
        r["fnc"] = s.graph.closed ? "Closed" : "BudgetExceeded";
        r["constants"] = std::move(k);
      }
      emit(r, c, out);
      return fnc_exit(s);
    }
    // verify
    vopt.explore = explore_for(sys, c);
    if (!bsp_floor.empty()) vopt.bsp_floor = Scalar::parse(bsp_floor);
    const VerifyResult v = verify(sys, vopt);
    emit(v.report, c, out);
    return exit_code(v.outcome);
  } catch (const SpecError& e) {
    err << "error: " << c.spec_path << ": " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace ifsnet
