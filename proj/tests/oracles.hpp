// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference computations used by the tests. They work on raw
// words and MPFR decimals and share no code paths with the library beyond
// Scalar arithmetic and Affine composition.

#pragma once

#include <mpfr.h>

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ifsnet/report.hpp"

namespace oracle {

using namespace ifsnet;

inline std::string corpus(const std::string& name) {
  return std::string(IFSNET_CORPUS_DIR) + "/" + name;
}

inline LoadedSystem load(const std::string& name) { return load_spec_file(corpus(name)); }

inline Scalar pow(const Scalar& x, int n) {
  Scalar out(1);
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

/// Sign of a + b sqrt(d) evaluated with `bits` of MPFR precision.
inline int mpfr_sign(const Scalar& x, int bits = 200) {
  mpfr_t a, b, r;
  mpfr_inits2(bits, a, b, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(a, x.rational_part().get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(b, x.sqrt_coefficient().get_mpq_t(), MPFR_RNDN);
  mpfr_set_ui(r, static_cast<unsigned long>(x.radicand()), MPFR_RNDN);
  mpfr_sqrt(r, r, MPFR_RNDN);
  mpfr_mul(r, r, b, MPFR_RNDN);
  mpfr_add(r, r, a, MPFR_RNDN);
  const int s = mpfr_sgn(r);
  mpfr_clears(a, b, r, static_cast<mpfr_ptr>(nullptr));
  return s > 0 ? 1 : s < 0 ? -1 : 0;
}

inline double mpfr_value(const Scalar& x) {
  mpfr_t a, b, r;
  mpfr_inits2(200, a, b, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(a, x.rational_part().get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(b, x.sqrt_coefficient().get_mpq_t(), MPFR_RNDN);
  mpfr_set_ui(r, static_cast<unsigned long>(x.radicand()), MPFR_RNDN);
  mpfr_sqrt(r, r, MPFR_RNDN);
  mpfr_mul(r, r, b, MPFR_RNDN);
  mpfr_add(r, r, a, MPFR_RNDN);
  const double v = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clears(a, b, r, static_cast<mpfr_ptr>(nullptr));
  return v;
}

/// A word with its map recomputed from scratch.
struct RawWord {
  std::vector<std::uint16_t> letters;
  Affine map;
};

inline Affine map_of(const Ifs& ifs, const std::vector<std::uint16_t>& letters) {
  Affine f = Affine::identity();
  for (auto i : letters) f = compose(f, ifs.map(i));
  return f;
}

/// Every word with |r_sigma| < alpha <= |r_parent|, by plain recursion.
inline std::vector<RawWord> words(const Ifs& ifs, const Scalar& alpha) {
  std::vector<RawWord> out;
  std::function<void(RawWord)> rec = [&](RawWord w) {
    if (w.map.L.abs() < alpha) {
      out.push_back(std::move(w));
      return;
    }
    for (std::uint16_t i = 1; i <= ifs.size(); ++i) {
      RawWord c = w;
      c.letters.push_back(i);
      c.map = compose(w.map, ifs.map(i));
      rec(std::move(c));
    }
  };
  rec({{}, Affine::identity()});
  return out;
}

/// Distinct |r_sigma| >= floor over all words, descending.
inline std::vector<Scalar> ladder(const Ifs& ifs, const Scalar& floor) {
  std::set<Scalar> seen;
  std::function<void(const Scalar&)> rec = [&](const Scalar& r) {
    if (r < floor || !seen.insert(r).second) return;
    for (const auto& f : ifs.maps()) rec(r * f.L.abs());
  };
  rec(Scalar(1));
  return {seen.rbegin(), seen.rend()};
}

inline Interval cyl(const Affine& f) {
  const Scalar p = f(Scalar(0));
  const Scalar q = f(Scalar(1));
  return p < q ? Interval{p, q} : Interval{q, p};
}

/// {S_s^-1 S_t : s, t in one generation, open images intersect} over the
/// ladder down to floor, compared pairwise without sorting.
inline std::set<std::string> e_direct(const Ifs& ifs, const Scalar& floor) {
  std::set<std::string> out{Affine::identity().str()};
  for (const auto& alpha : ladder(ifs, floor)) {
    const auto ws = words(ifs, alpha);
    for (const auto& s : ws) {
      const Interval cs = cyl(s.map);
      const Affine inv = invert(s.map);
      for (const auto& t : ws) {
        const Interval ct = cyl(t.map);
        if (cs.lo < ct.hi && ct.lo < cs.hi) out.insert(compose(inv, t.map).str());
      }
    }
  }
  return out;
}

/// (u, v) meets K iff some S_s(0) or S_s(1), s in the generation one event
/// level below v - u, lies strictly inside: those cylinders are shorter than
/// (u, v), so any that reaches into it has an endpoint there, and cylinder
/// endpoints belong to K.
inline bool cover_meets(const Ifs& ifs, const Scalar& u, const Scalar& v) {
  const Scalar len = v - u;
  Scalar beta(0);
  for (const auto& a : ladder(ifs, len * ifs.r_min() * ifs.r_min())) {
    if (a < len) {
      beta = a;
      break;
    }
  }
  // children of a cylinder lie inside it, so branches missing (u, v) are cut
  std::function<bool(const Affine&)> rec = [&](const Affine& f) {
    const Interval c = cyl(f);
    if (!(c.lo < v && u < c.hi)) return false;
    if (f.L.abs() < beta) return (u < c.lo && c.lo < v) || (u < c.hi && c.hi < v);
    for (const auto& m : ifs.maps()) {
      if (rec(compose(f, m))) return true;
    }
    return false;
  };
  return rec(Affine::identity());
}

/// Distinct endpoints of the generation, sorted, by brute force.
inline std::vector<Scalar> endpoints(const Ifs& ifs, const Scalar& alpha) {
  std::set<Scalar> pts;
  for (const auto& w : words(ifs, alpha)) {
    pts.insert(w.map(Scalar(0)));
    pts.insert(w.map(Scalar(1)));
  }
  return {pts.begin(), pts.end()};
}

/// Largest number of distinct points S_s(S_t(x0)) in a closed ball of
/// radius alpha, by checking every ball centred between two points.
inline std::size_t ball_count(const Ifs& ifs, const Scalar& x0, const Affine& tau,
                              const Scalar& alpha) {
  std::set<Scalar> pts;
  for (const auto& w : words(ifs, alpha)) pts.insert(w.map(tau(x0)));
  const std::vector<Scalar> p(pts.begin(), pts.end());
  std::size_t best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t n = 0;
    for (std::size_t j = i; j < p.size() && p[j] - p[i] <= alpha + alpha; ++j) ++n;
    best = std::max(best, n);
  }
  return best;
}

}  // namespace oracle

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<ifsnet::Scalar> {
  static String convert(const ifsnet::Scalar& x) { return x.str().c_str(); }
};
template <>
struct StringMaker<ifsnet::Affine> {
  static String convert(const ifsnet::Affine& f) { return f.str().c_str(); }
};
}  // namespace doctest
#endif
