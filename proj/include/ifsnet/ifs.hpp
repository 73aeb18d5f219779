// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifsnet/exact.hpp"

namespace ifsnet {

class InvalidSystem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The similarity x -> L*x + a.
struct Affine {
  Scalar L{1};
  Scalar a{0};

  static Affine identity() { return {}; }

  Scalar operator()(const Scalar& x) const { return L * x + a; }

  /// "L*x + a" with both coefficients in canonical scalar text; irrational
  /// coefficients are parenthesized.
  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const Affine&, const Affine&) = default;
};

/// f o g, i.e. x -> f(g(x)).
Affine compose(const Affine& f, const Affine& g);
Affine invert(const Affine& f);

/// Order by (a, L); the canonical order used for neighbour sets and reports.
bool canonical_less(const Affine& f, const Affine& g);

struct AffineHash {
  std::size_t operator()(const Affine& f) const { return f.hash(); }
};

/// Closed interval [lo, hi] with lo <= hi.
struct Interval {
  Scalar lo;
  Scalar hi;

  Scalar length() const { return hi - lo; }
  bool contains(const Interval& inner) const { return lo <= inner.lo && inner.hi <= hi; }
  /// Whether the open interiors intersect.
  bool interiors_meet(const Interval& o) const { return lo < o.hi && o.lo < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Image of [0,1] under f.
Interval image_of_unit(const Affine& f);
/// Lebesgue measure of the intersection (0 when disjoint).
Scalar overlap(const Interval& x, const Interval& y);

class Ifs {
 public:
  /// Validates k >= 2, 0 < |L_i| < 1 and a common radicand.
  explicit Ifs(std::vector<Affine> maps);

  std::size_t size() const { return maps_.size(); }
  /// 1-based, matching word letters.
  const Affine& map(std::size_t letter) const { return maps_.at(letter - 1); }
  const std::vector<Affine>& maps() const { return maps_; }
  const Scalar& r_min() const { return r_min_; }
  const Scalar& r_max() const { return r_max_; }
  std::uint64_t radicand() const { return radicand_; }

  bool is_normalized() const;

 private:
  std::vector<Affine> maps_;
  Scalar r_min_;
  Scalar r_max_;
  std::uint64_t radicand_ = 0;
};

/// Finite word over {1..k} with its composed map S_sigma; the ratio r_sigma is
/// the map's linear coefficient.
class Word {
 public:
  Word() = default;

  const std::vector<std::uint16_t>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Scalar& ratio() const { return map_.L; }
  const Affine& map() const { return map_; }
  Interval cylinder() const { return image_of_unit(map_); }

  /// sigma -> sigma i, with S_{sigma i} = S_sigma o S_i.
  Word extended(const Ifs& ifs, std::uint16_t letter) const;
  /// Drops the last letter. Throws std::logic_error on the empty word.
  Word parent(const Ifs& ifs) const;

  static Word from_letters(const Ifs& ifs, const std::vector<std::uint16_t>& letters);

  /// "(1,2,3)"; the empty word renders as "()".
  std::string str() const;

  friend bool operator==(const Word& x, const Word& y) { return x.letters_ == y.letters_; }
  friend bool operator<(const Word& x, const Word& y) { return x.letters_ < y.letters_; }

 private:
  std::vector<std::uint16_t> letters_;
  Affine map_;
};

/// A scale 0 < alpha <= 1 selecting the words |r_sigma| < alpha <= |r_{sigma-}|.
class Generation {
 public:
  explicit Generation(Scalar alpha);
  const Scalar& alpha() const { return alpha_; }
  bool contains(const Ifs& ifs, const Word& w) const;

 private:
  Scalar alpha_;
};

/// Convex hull of the attractor. Throws InvalidSystem for a singleton.
Interval solve_hull(const Ifs& ifs);

/// Conjugates by x -> (x - m)/(M - m) so that the hull becomes [0,1].
Ifs normalize_hull(const Ifs& ifs);
/// The conjugating map phi used by normalize_hull.
Affine hull_normalizer(const Ifs& ifs);

/// Whether the attractor of a normalized system is all of [0,1].
bool attractor_is_interval(const Ifs& ifs);

/// Depth-first stream over the words of one generation, lexicographic order.
class GenerationStream {
 public:
  GenerationStream(const Ifs& ifs, Generation g);
  std::optional<Word> next();

 private:
  struct Frame {
    Word word;
    std::uint16_t next_letter;
  };
  const Ifs* ifs_;
  Generation g_;
  std::vector<Frame> stack_;
};

std::vector<Word> lambda_alpha(const Ifs& ifs, const Generation& g);

/// The distinct maps S_sigma, sigma in the generation, sorted canonically.
/// Word pairs with equal maps are collapsed, which is exact for every
/// quantity that depends on S_sigma alone (endpoints, points, S_s^-1 S_t).
std::vector<Affine> generation_maps(const Ifs& ifs, const Generation& g);

/// Distinct |r_sigma| >= floor over all words, descending; these are the
/// scales at which the generations change.
std::vector<Scalar> event_ladder(const Ifs& ifs, const Scalar& floor);

}  // namespace ifsnet
