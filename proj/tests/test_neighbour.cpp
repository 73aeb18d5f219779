// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "oracles.hpp"

using namespace ifsnet;

namespace {

NetInterval at(const Ifs& ifs, const Scalar& alpha, const Scalar& lo) {
  for (auto& d : net_intervals(ifs, Generation(alpha))) {
    if (d.lo == lo) return d;
  }
  throw std::logic_error("no such net interval");
}

NeighbourSet set_of(std::vector<Affine> v) { return NeighbourSet(std::move(v)); }

std::vector<NeighbourSet> known_sets() {
  return {set_of({{1, 0}}), set_of({{Scalar(4, 3), 0}}), set_of({{3, 0}, {4, -3}}),
          set_of({{Scalar(3, 2), Scalar(-1, 2)}}), set_of({{1, 0}, {3, 0}})};
}

}  // namespace

TEST_SUITE("neighbour") {
  TEST_CASE("single neighbours") {
    const Ifs e = oracle::load("example-3-1.ifs").normalized;
    const NetInterval d = at(e, 1, Scalar(1, 4));
    CHECK(neighbour_of(d, Word::from_letters(e, {1})) == Affine{4, -3});
    const NetInterval h = at(e, 1, Scalar(1, 2));
    CHECK(neighbour_of(h, Word::from_letters(e, {3})) == Affine::identity());
    CHECK_THROWS(neighbour_of(h, Word::from_letters(e, {1})));
    // a generator whose image is the interval itself gives the identity
    for (const auto& name : {"golden.ifs", "halves.ifs", "negative.ifs"}) {
      const Ifs ifs = oracle::load(name).normalized;
      for (const auto& alpha : oracle::ladder(ifs, oracle::pow(ifs.r_min(), 3))) {
        for (const auto& nd : net_intervals(ifs, Generation(alpha))) {
          for (const auto& w : nd.generators) {
            if (w.cylinder() == nd.interval() && w.ratio().sign() > 0) {
              CHECK(neighbour_of(nd, w) == Affine::identity());
            }
          }
        }
      }
    }
  }

  TEST_CASE("neighbour sets at the first generation") {
    const Ifs e = oracle::load("example-3-1.ifs").normalized;
    CHECK(neighbour_set(at(e, 1, 0)) == set_of({{Scalar(4, 3), 0}}));
    CHECK(neighbour_set(at(e, 1, Scalar(1, 4))) == set_of({{3, 0}, {4, -3}}));
    const Ifs c = oracle::load("cantor.ifs").normalized;
    CHECK(neighbour_set(at(c, 1, 0)) == set_of({Affine::identity()}));
  }

  TEST_CASE("canonical keys") {
    const auto v = known_sets();
    CHECK(canonical_key(v[2]) != canonical_key(v[4]));
    CHECK(canonical_key(set_of({{3, 0}, {4, -3}})) == canonical_key(set_of({{4, -3}, {3, 0}})));
    CHECK(set_of({{3, 0}, {3, 0}}).size() == 1);
    CHECK_THROWS(NeighbourSet(std::vector<Affine>{}));
    const Ifs c = oracle::load("cantor.ifs").normalized;
    const std::string id_key = canonical_key(set_of({Affine::identity()}));
    for (const auto& alpha : oracle::ladder(c, Scalar(1, 300))) {
      for (const auto& d : net_intervals(c, Generation(alpha))) {
        CHECK(canonical_key(neighbour_set(d)) == id_key);
      }
    }
    CHECK(v[2].str() == "{4/1*x + -3/1; 3/1*x + 0/1}");
  }

  TEST_CASE("neighbour invariants over sampled generations") {
    for (const auto& name : {"cantor.ifs", "example-3-1.ifs", "lau-ngai.ifs", "halves.ifs",
                             "golden.ifs", "negative.ifs"}) {
      const Ifs ifs = oracle::load(name).normalized;
      const Saturation s = saturate(ifs);
      REQUIRE(s.graph.closed);
      std::size_t seen_max = 0;
      for (const auto& alpha : oracle::ladder(ifs, oracle::pow(ifs.r_min(), 5))) {
        for (const auto& d : net_intervals(ifs, Generation(alpha))) {
          const NeighbourSet v = neighbour_set(d);
          std::set<std::string> pairs;
          for (const auto& w : d.generators) {
            const Neighbour t = neighbour_of(d, w);
            CHECK(t.L.abs() >= Scalar(1));
            CHECK(min(t(0), t(1)) <= Scalar(0));
            CHECK(max(t(0), t(1)) >= Scalar(1));
            pairs.insert(t.str());
          }
          CHECK(v.size() <= d.generators.size());
          CHECK(v.size() == pairs.size());
          seen_max = std::max(seen_max, v.size());
          const bool known = std::any_of(s.graph.states.begin(), s.graph.states.end(),
                                         [&](const State& st) { return st.set == v; });
          CHECK_MESSAGE(known, name, " ", v.str());
        }
      }
      CHECK(seen_max == s.graph.max_cardinality());
    }
  }

  TEST_CASE("example 3.1 only shows the five sets") {
    const Ifs e = oracle::load("example-3-1.ifs").normalized;
    const auto v = known_sets();
    for (const auto& alpha : oracle::ladder(e, Scalar(1, 5000))) {
      for (const auto& d : net_intervals(e, Generation(alpha))) {
        CHECK(std::find(v.begin(), v.end(), neighbour_set(d)) != v.end());
      }
    }
  }
}
