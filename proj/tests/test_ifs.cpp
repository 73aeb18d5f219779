// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace ifsnet;

namespace {

Affine aff(Scalar L, Scalar a) { return Affine{std::move(L), std::move(a)}; }

Ifs cantor() { return Ifs({aff(Scalar(1, 3), 0), aff(Scalar(1, 3), Scalar(2, 3))}); }

Ifs example31() {
  return Ifs({aff(Scalar(1, 3), 0), aff(Scalar(1, 4), Scalar(1, 4)), aff(Scalar(1, 4), Scalar(1, 2)),
              aff(Scalar(1, 4), Scalar(3, 4))});
}

std::vector<std::string> names() {
  return {"cantor.ifs", "example-3-1.ifs", "lau-ngai.ifs", "halves.ifs", "golden.ifs",
          "negative.ifs", "stress/bernoulli-2-3.ifs"};
}

}  // namespace

TEST_SUITE("ifs") {
  TEST_CASE("compose") {
    CHECK(compose(aff(Scalar(1, 3), 0), aff(Scalar(1, 3), Scalar(2, 3))) ==
          aff(Scalar(1, 9), Scalar(2, 9)));
    const Affine g = aff(Scalar(-2, 7), Scalar(5, 3));
    CHECK(compose(Affine::identity(), g) == g);
    CHECK(compose(aff(3, 0), aff(Scalar(1, 3), 0)) == Affine::identity());
  }

  TEST_CASE("invert") {
    CHECK(invert(aff(Scalar(1, 4), Scalar(1, 4))) == aff(4, -1));
    CHECK(invert(Affine::identity()) == Affine::identity());
    CHECK(invert(aff(-1, 1)) == aff(-1, 1));
    CHECK_THROWS(invert(aff(0, 1)));
  }

  TEST_CASE("composition laws on random maps") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> n(-50, 50);
    std::uniform_int_distribution<long> d(1, 50);
    auto rnd = [&] {
      long l = 0;
      while (l == 0) l = n(rng);
      return aff(Scalar(l, d(rng)), Scalar(n(rng), d(rng)));
    };
    for (int i = 0; i < 300; ++i) {
      const Affine f = rnd(), g = rnd(), h = rnd();
      CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
      CHECK(compose(invert(f), f) == Affine::identity());
      CHECK(compose(f, invert(f)) == Affine::identity());
    }
  }

  TEST_CASE("affine text") {
    CHECK(aff(Scalar(4, 3), 0).str() == "4/3*x + 0/1");
    CHECK(Affine::identity().str() == "1/1*x + 0/1");
  }

  TEST_CASE("hull") {
    CHECK(solve_hull(cantor()) == Interval{0, 1});
    const Ifs off({aff(Scalar(1, 2), 1), aff(Scalar(1, 4), 2)});
    CHECK(solve_hull(off) == Interval{2, Scalar(8, 3)});
    const Ifs neg({aff(Scalar(-1, 2), Scalar(1, 2)), aff(Scalar(1, 2), Scalar(1, 2))});
    CHECK(solve_hull(neg) == Interval{0, 1});
  }

  TEST_CASE("normalize") {
    const Ifs off({aff(Scalar(1, 2), 1), aff(Scalar(1, 4), 2)});
    const Ifs n = normalize_hull(off);
    CHECK(n.maps()[0] == aff(Scalar(1, 2), 0));
    CHECK(n.maps()[1] == aff(Scalar(1, 4), Scalar(3, 4)));
    CHECK(hull_normalizer(off) == aff(Scalar(3, 2), -3));
    CHECK(normalize_hull(cantor()).maps() == cantor().maps());
    CHECK(n.is_normalized());
    CHECK_FALSE(off.is_normalized());
    for (const auto& name : names()) {
      const auto sys = oracle::load(name);
      CHECK(solve_hull(sys.normalized) == Interval{0, 1});
      CHECK(normalize_hull(sys.normalized).maps() == sys.normalized.maps());
    }
  }

  TEST_CASE("a singleton attractor is rejected") {
    CHECK_THROWS_AS(solve_hull(Ifs({aff(Scalar(1, 2), 0), aff(Scalar(1, 3), 0)})), InvalidSystem);
  }

  TEST_CASE("system validation") {
    CHECK_THROWS_AS(Ifs({aff(Scalar(1, 2), 0)}), InvalidSystem);
    CHECK_THROWS_AS(Ifs({aff(Scalar(1, 2), 0), aff(1, 0)}), InvalidSystem);
    CHECK_THROWS_AS(Ifs({aff(Scalar(1, 2), 0), aff(0, 0)}), InvalidSystem);
    CHECK_THROWS(Ifs({aff(Scalar::sqrt_of(2) / Scalar(2), 0), aff(Scalar::sqrt_of(3) / Scalar(3), 0)}));
    const Ifs e = example31();
    CHECK(e.size() == 4);
    CHECK(e.r_min() == Scalar(1, 4));
    CHECK(e.r_max() == Scalar(1, 3));
  }

  TEST_CASE("parent") {
    const Ifs e = example31();
    const Word w12 = Word::from_letters(e, {1, 2});
    CHECK(w12.parent(e) == Word::from_letters(e, {1}));
    const Word p = Word::from_letters(e, {2}).parent(e);
    CHECK(p.empty());
    CHECK(p.ratio() == Scalar(1));
    CHECK(p.map() == Affine::identity());
    const Word w123 = Word::from_letters(e, {1, 2, 3});
    CHECK(w123.parent(e) == w12);
    CHECK(w123.parent(e).ratio() == Scalar(1, 12));
    CHECK_THROWS_AS(Word().parent(e), std::logic_error);
    CHECK(w123.str() == "(1,2,3)");
    CHECK(Word().str() == "()");
  }

  TEST_CASE("word cache matches recomputation") {
    const auto sys = oracle::load("golden.ifs");
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      std::vector<std::uint16_t> letters(rng() % 12);
      for (auto& l : letters) l = static_cast<std::uint16_t>(1 + rng() % 2);
      const Word w = Word::from_letters(sys.normalized, letters);
      CHECK(w.map() == oracle::map_of(sys.normalized, letters));
    }
  }

  TEST_CASE("generations") {
    CHECK_THROWS(Generation(Scalar(0)));
    CHECK_THROWS(Generation(Scalar(3, 2)));
    const auto c = lambda_alpha(cantor(), Generation(1));
    REQUIRE(c.size() == 2);
    CHECK(c[0].str() == "(1)");
    CHECK(c[1].str() == "(2)");

    const Ifs e = example31();
    const auto q = lambda_alpha(e, Generation(Scalar(1, 4)));
    CHECK(q.size() == 16);
    for (const auto& w : q) CHECK(w.length() == 2);

    // lengths at alpha = r_min^2 lie in [2, ceil(2 log r_min / log r_max)]
    const auto deep = lambda_alpha(e, Generation(Scalar(1, 16)));
    const auto cap = static_cast<std::size_t>(std::ceil(2 * std::log(0.25) / std::log(1.0 / 3)));
    for (const auto& w : deep) {
      CHECK(w.length() >= 2);
      CHECK(w.length() <= cap);
    }
  }

  TEST_CASE("generations match a recursive enumeration") {
    for (const auto& name : names()) {
      const auto sys = oracle::load(name);
      const Ifs& ifs = sys.normalized;
      for (const auto& alpha : oracle::ladder(ifs, oracle::pow(ifs.r_min(), 4))) {
        const Generation g(alpha);
        std::set<std::vector<std::uint16_t>> lib;
        GenerationStream stream(ifs, g);
        while (auto w = stream.next()) {
          CHECK(g.contains(ifs, *w));
          CHECK(w->ratio().abs() < alpha);
          CHECK(alpha <= w->parent(ifs).ratio().abs());
          lib.insert(w->letters());
        }
        std::set<std::vector<std::uint16_t>> ref;
        std::set<std::string> ref_maps;
        for (const auto& w : oracle::words(ifs, alpha)) {
          ref.insert(w.letters);
          ref_maps.insert(w.map.str());
        }
        CHECK(lib == ref);
        std::set<std::string> maps;
        for (const auto& f : generation_maps(ifs, g)) maps.insert(f.str());
        CHECK(maps == ref_maps);
      }
    }
  }

  TEST_CASE("generation is a frontier") {
    const auto sys = oracle::load("golden.ifs");
    const Ifs& ifs = sys.normalized;
    std::mt19937_64 rng(21);
    for (const Scalar& alpha : {Scalar(1), Scalar(1, 5), Scalar(1, 97)}) {
      const Generation g(alpha);
      for (int i = 0; i < 100; ++i) {
        std::vector<std::uint16_t> letters;
        std::size_t hits = 0;
        for (int n = 0; n < 40; ++n) {
          letters.push_back(static_cast<std::uint16_t>(1 + rng() % 2));
          if (g.contains(ifs, Word::from_letters(ifs, letters))) ++hits;
        }
        CHECK(hits == 1);
      }
    }
  }

  TEST_CASE("event ladder") {
    for (const auto& name : names()) {
      const auto sys = oracle::load(name);
      const Scalar floor = oracle::pow(sys.normalized.r_min(), 5);
      CHECK(event_ladder(sys.normalized, floor) == oracle::ladder(sys.normalized, floor));
    }
  }

  TEST_CASE("interval attractors") {
    CHECK(attractor_is_interval(example31()));
    CHECK_FALSE(attractor_is_interval(cantor()));
    CHECK(attractor_is_interval(Ifs({aff(Scalar(2, 3), 0), aff(Scalar(2, 3), Scalar(1, 3))})));
    CHECK(attractor_is_interval(oracle::load("golden.ifs").normalized));
    CHECK(attractor_is_interval(oracle::load("negative.ifs").normalized));
    CHECK_FALSE(attractor_is_interval(oracle::load("lau-ngai.ifs").normalized));
  }
}
