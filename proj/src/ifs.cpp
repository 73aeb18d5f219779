// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/ifs.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace ifsnet {

namespace {

std::string coefficient(const Scalar& s) {
  return s.is_rational() ? s.str() : "(" + s.str() + ")";
}

}  // namespace

std::string Affine::str() const { return coefficient(L) + "*x + " + coefficient(a); }

std::size_t Affine::hash() const {
  std::size_t h = L.hash();
  h ^= a.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Affine compose(const Affine& f, const Affine& g) { return {f.L * g.L, f.L * g.a + f.a}; }

Affine invert(const Affine& f) {
  const Scalar inv = Scalar(1) / f.L;
  return {inv, -(f.a * inv)};
}

bool canonical_less(const Affine& f, const Affine& g) {
  if (f.a != g.a) return f.a < g.a;
  return f.L < g.L;
}

Interval image_of_unit(const Affine& f) {
  Scalar p = f.a;
  Scalar q = f.L + f.a;
  if (f.L.sign() < 0) std::swap(p, q);
  return {std::move(p), std::move(q)};
}

Scalar overlap(const Interval& x, const Interval& y) {
  const Scalar lo = max(x.lo, y.lo);
  const Scalar hi = min(x.hi, y.hi);
  return hi > lo ? hi - lo : Scalar(0);
}

Ifs::Ifs(std::vector<Affine> maps) : maps_(std::move(maps)) {
  if (maps_.size() < 2) {
    throw InvalidSystem("an iterated function system needs at least 2 maps, got " +
                        std::to_string(maps_.size()));
  }
  if (maps_.size() > 0xFFFF) throw InvalidSystem("too many maps");
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const auto& f = maps_[i];
    const Scalar r = f.L.abs();
    if (r.is_zero() || r >= Scalar(1)) {
      throw InvalidSystem("map " + std::to_string(i + 1) + " has ratio " + f.L.str() +
                          "; need 0 < |L| < 1");
    }
    for (const Scalar* s : {&f.L, &f.a}) {
      if (s->radicand() != 0) {
        if (radicand_ != 0 && s->radicand() != radicand_) {
          throw InvalidSystem("map " + std::to_string(i + 1) + " uses a different radicand");
        }
        radicand_ = s->radicand();
      }
    }
    if (i == 0) {
      r_min_ = r;
      r_max_ = r;
    } else {
      r_min_ = min(r_min_, r);
      r_max_ = max(r_max_, r);
    }
  }
}

bool Ifs::is_normalized() const {
  const Interval hull = solve_hull(*this);
  return hull.lo == Scalar(0) && hull.hi == Scalar(1);
}

Word Word::extended(const Ifs& ifs, std::uint16_t letter) const {
  Word w;
  w.letters_.reserve(letters_.size() + 1);
  w.letters_ = letters_;
  w.letters_.push_back(letter);
  w.map_ = compose(map_, ifs.map(letter));
  return w;
}

Word Word::parent(const Ifs& ifs) const {
  if (letters_.empty()) throw std::logic_error("the empty word has no parent");
  Word w;
  w.letters_.assign(letters_.begin(), letters_.end() - 1);
  w.map_ = compose(map_, invert(ifs.map(letters_.back())));
  return w;
}

Word Word::from_letters(const Ifs& ifs, const std::vector<std::uint16_t>& letters) {
  Word w;
  for (auto l : letters) {
    if (l < 1 || l > ifs.size()) throw std::out_of_range("letter out of range");
    w = w.extended(ifs, l);
  }
  return w;
}

std::string Word::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(letters_[i]);
  }
  return s + ")";
}

Generation::Generation(Scalar alpha) : alpha_(std::move(alpha)) {
  if (alpha_.sign() <= 0 || alpha_ > Scalar(1)) {
    throw std::invalid_argument("generation must satisfy 0 < alpha <= 1, got " + alpha_.str());
  }
}

bool Generation::contains(const Ifs& ifs, const Word& w) const {
  if (w.empty()) return false;
  const Scalar parent_ratio = w.ratio() / ifs.map(w.letters().back()).L;
  return w.ratio().abs() < alpha_ && alpha_ <= parent_ratio.abs();
}

Interval solve_hull(const Ifs& ifs) {
  const Scalar one(1);
  std::optional<Interval> found;
  // m = S_i(m or M), M = S_j(M or m); each choice is a nonsingular 2x2 system
  for (const auto& fi : ifs.maps()) {
    for (const auto& fj : ifs.maps()) {
      const bool pi = fi.L.sign() > 0;
      const bool pj = fj.L.sign() > 0;
      const Scalar a11 = pi ? one - fi.L : one;
      const Scalar a12 = pi ? Scalar(0) : -fi.L;
      const Scalar a21 = pj ? Scalar(0) : -fj.L;
      const Scalar a22 = pj ? one - fj.L : one;
      const Scalar det = a11 * a22 - a12 * a21;
      const Scalar m = (fi.a * a22 - a12 * fj.a) / det;
      const Scalar M = (a11 * fj.a - fi.a * a21) / det;
      if (M < m) continue;
      const Interval cand{m, M};
      bool ok = true;
      for (const auto& f : ifs.maps()) {
        const Scalar u = f(m);
        const Scalar v = f(M);
        if (u < m || u > M || v < m || v > M) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found = cand;
        break;
      }
    }
    if (found) break;
  }
  if (!found) throw std::logic_error("no consistent hull candidate");
  if (found->lo == found->hi) {
    throw InvalidSystem("the attractor is a singleton {" + found->lo.str() + "}");
  }
  return *found;
}

Affine hull_normalizer(const Ifs& ifs) {
  const Interval hull = solve_hull(ifs);
  const Scalar w = hull.hi - hull.lo;
  return {Scalar(1) / w, -(hull.lo / w)};
}

Ifs normalize_hull(const Ifs& ifs) {
  const Affine phi = hull_normalizer(ifs);
  const Affine phi_inv = invert(phi);
  std::vector<Affine> maps;
  maps.reserve(ifs.size());
  for (const auto& f : ifs.maps()) maps.push_back(compose(phi, compose(f, phi_inv)));
  return Ifs(std::move(maps));
}

bool attractor_is_interval(const Ifs& ifs) {
  std::vector<Interval> images;
  for (const auto& f : ifs.maps()) images.push_back(image_of_unit(f));
  std::sort(images.begin(), images.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  if (images.front().lo != Scalar(0)) return false;
  Scalar reach = images.front().hi;
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (images[i].lo > reach) return false;
    reach = max(reach, images[i].hi);
  }
  return reach == Scalar(1);
}

GenerationStream::GenerationStream(const Ifs& ifs, Generation g) : ifs_(&ifs), g_(std::move(g)) {
  stack_.push_back({Word(), 1});
}

std::optional<Word> GenerationStream::next() {
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    if (top.next_letter > ifs_->size()) {
      stack_.pop_back();
      continue;
    }
    Word child = top.word.extended(*ifs_, top.next_letter++);
    if (child.ratio().abs() < g_.alpha()) return child;
    stack_.push_back({std::move(child), 1});
  }
  return std::nullopt;
}

std::vector<Word> lambda_alpha(const Ifs& ifs, const Generation& g) {
  std::vector<Word> out;
  GenerationStream stream(ifs, g);
  while (auto w = stream.next()) out.push_back(std::move(*w));
  return out;
}

std::vector<Affine> generation_maps(const Ifs& ifs, const Generation& g) {
  std::unordered_set<Affine, AffineHash> expanded{Affine::identity()};
  std::unordered_set<Affine, AffineHash> out;
  std::deque<Affine> queue{Affine::identity()};
  while (!queue.empty()) {
    const Affine p = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : ifs.maps()) {
      Affine c = compose(p, s);
      if (c.L.abs() < g.alpha()) {
        out.insert(std::move(c));
      } else if (expanded.insert(c).second) {
        queue.push_back(std::move(c));
      }
    }
  }
  std::vector<Affine> sorted(out.begin(), out.end());
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  return sorted;
}

std::vector<Scalar> event_ladder(const Ifs& ifs, const Scalar& floor) {
  std::set<Scalar> seen;
  std::deque<Scalar> queue;
  if (Scalar(1) >= floor) {
    seen.insert(Scalar(1));
    queue.push_back(Scalar(1));
  }
  while (!queue.empty()) {
    const Scalar v = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : ifs.maps()) {
      Scalar w = v * s.L.abs();
      if (w >= floor && seen.insert(w).second) queue.push_back(std::move(w));
    }
  }
  return {seen.rbegin(), seen.rend()};
}

}  // namespace ifsnet
