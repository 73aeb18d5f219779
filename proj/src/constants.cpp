// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/constants.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace ifsnet {

Scalar delta(const Ifs& ifs) {
  std::optional<Scalar> best;
  for (const auto& s : ifs.maps()) {
    for (int u = 0; u <= 1; ++u) {
      const Scalar image = s(Scalar(u));
      for (int v = 0; v <= 1; ++v) {
        const Scalar d = (Scalar(v) - image).abs();
        if (d.is_zero()) continue;
        if (!best || d < *best) best = d;
      }
    }
  }
  return ifs.r_min() * *best;
}

Scalar word_constant(const Ifs& ifs, const Scalar& delta) {
  return delta * ifs.r_min() * ifs.r_min();
}

namespace {

std::uint16_t first_letter(const Ifs& ifs, bool (*pred)(const Affine&)) {
  for (std::uint16_t i = 1; i <= ifs.size(); ++i) {
    if (pred(ifs.map(i))) return i;
  }
  return 0;
}

Word concat(const Ifs& ifs, const Word& head, const Word& tail) {
  Word w = head;
  for (auto l : tail.letters()) w = w.extended(ifs, l);
  return w;
}

Scalar parent_ratio(const Ifs& ifs, const Word& w) {
  return (w.ratio() / ifs.map(w.letters().back()).L).abs();
}

}  // namespace

PhiResult construct_phi(const Ifs& ifs, const Word& sigma, const Word& tau, const Scalar& delta,
                        const Scalar& alpha) {
  const Generation g(alpha);
  if (!g.contains(ifs, sigma) || !g.contains(ifs, tau)) {
    throw std::invalid_argument("words must belong to generation " + alpha.str());
  }
  const Interval cs = sigma.cylinder();
  const Interval ct = tau.cylinder();
  const Scalar lo = max(cs.lo, ct.lo);
  const Scalar hi = min(cs.hi, ct.hi);
  const Scalar target = delta * alpha;
  if (hi <= lo || hi - lo < target) {
    throw std::invalid_argument("cylinders of " + sigma.str() + " and " + tau.str() +
                                " overlap by less than delta*alpha");
  }

  PhiResult out;
  out.psi_is_sigma = cs.hi == hi;
  out.psi = out.psi_is_sigma ? sigma : tau;

  const std::uint16_t i0 =
      first_letter(ifs, [](const Affine& f) { return image_of_unit(f).lo.is_zero(); });
  const std::uint16_t i1 =
      first_letter(ifs, [](const Affine& f) { return image_of_unit(f).hi == Scalar(1); });
  if (i0 == 0 || i1 == 0) throw std::logic_error("system is not hull-normalized");

  // keep the right endpoint of the shrinking cylinder pinned at hi
  Word cur = out.psi;
  do {
    const std::uint16_t next = cur.ratio().sign() > 0 ? i1 : i0;
    out.phi = out.phi.extended(ifs, next);
    cur = cur.extended(ifs, next);
    if (cur.cylinder().hi != hi) throw std::logic_error("right endpoint drifted");
  } while (cur.ratio().abs() > target);

  if (cur.ratio().sign() < 0) {
    const std::uint16_t j =
        first_letter(ifs, [](const Affine& f) { return f.L.sign() < 0; });
    if (j == 0) throw std::logic_error("negative ratio without a negative map");
    out.phi = out.phi.extended(ifs, j);
    cur = cur.extended(ifs, j);
  }
  out.psi_phi = cur;

  if (out.phi.ratio().abs() < word_constant(ifs, delta) || cur.ratio().sign() <= 0 ||
      !Interval{lo, hi}.contains(cur.cylinder())) {
    throw std::logic_error("phi postcondition failed for " + sigma.str() + ", " + tau.str());
  }
  return out;
}

PhiResult construct_phi(const Ifs& ifs, const Word& sigma, const Word& tau, const Scalar& delta) {
  if (sigma.empty() || tau.empty()) throw std::invalid_argument("words must be non-empty");
  return construct_phi(ifs, sigma, tau, delta,
                       min(parent_ratio(ifs, sigma), parent_ratio(ifs, tau)));
}

namespace {

/// {g^-1 o f o h : f in e; g, h in {Id, S_1..S_k}}
std::vector<Affine> g_family(const Ifs& ifs, const std::vector<Affine>& e) {
  std::vector<Affine> ends{Affine::identity()};
  for (const auto& s : ifs.maps()) ends.push_back(s);
  std::vector<Affine> inv;
  for (const auto& s : ends) inv.push_back(invert(s));
  std::unordered_set<Affine, AffineHash> out;
  for (const auto& f : e) {
    for (const auto& gi : inv) {
      const Affine left = compose(gi, f);
      for (const auto& h : ends) out.insert(compose(left, h));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

CConstants c_constants(const Ifs& ifs, const StateGraph& g) {
  if (!g.closed) throw std::logic_error("separation constants require a closed graph");
  Scalar max_l(1);
  for (const auto& s : g.states) {
    for (const auto& t : s.set.members()) max_l = max(max_l, t.L.abs());
  }
  CConstants out;
  out.c1 = Scalar(1) / max_l;

  std::vector<Scalar> points;
  for (const auto& f : g_family(ifs, e_from_graph(g))) {
    points.push_back(f(Scalar(0)));
    points.push_back(f(Scalar(1)));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::optional<Scalar> gap;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Scalar d = points[i + 1] - points[i];
    if (!gap || d < *gap) gap = std::move(d);
  }
  if (!gap) throw std::logic_error("G yields a single point");
  out.c2 = *gap;
  out.c = ifs.r_min() * min(out.c1, out.c2);
  return out;
}

EDelta::EDelta(std::vector<Affine> gamma, Scalar beta, Scalar threshold, std::size_t witness_state)
    : gamma_(std::move(gamma)),
      members_(gamma_.begin(), gamma_.end()),
      beta_(std::move(beta)),
      threshold_(std::move(threshold)),
      witness_state_(witness_state) {}

std::uintmax_t EDelta::formal_size() const {
  return static_cast<std::uintmax_t>(gamma_.size()) * gamma_.size();
}

bool EDelta::contains(const Affine& h) const {
  // h = f^-1 o g  <=>  f o h = g
  for (const auto& f : gamma_) {
    if (members_.count(compose(f, h))) return true;
  }
  return false;
}

std::vector<Affine> EDelta::materialize(std::size_t limit) const {
  if (formal_size() > limit) {
    throw EnumerationBudgetExceeded("E_delta has up to " + std::to_string(formal_size()) +
                                    " elements, above the limit " + std::to_string(limit));
  }
  std::unordered_set<Affine, AffineHash> out;
  for (const auto& f : gamma_) {
    const Affine fi = invert(f);
    for (const auto& g : gamma_) out.insert(compose(fi, g));
  }
  std::vector<Affine> sorted(out.begin(), out.end());
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  return sorted;
}

namespace {

/// Distinct maps S_psi with |r_psi| >= threshold (the empty word included).
std::vector<Affine> maps_above(const Ifs& ifs, const Scalar& threshold, std::size_t max_words) {
  std::unordered_set<Affine, AffineHash> seen{Affine::identity()};
  std::deque<Affine> queue{Affine::identity()};
  while (!queue.empty()) {
    const Affine p = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : ifs.maps()) {
      Affine c = compose(p, s);
      if (c.L.abs() < threshold) continue;
      if (seen.insert(c).second) {
        if (seen.size() > max_words) {
          throw EnumerationBudgetExceeded("more than " + std::to_string(max_words) +
                                          " words have ratio >= " + threshold.str());
        }
        queue.push_back(std::move(c));
      }
    }
  }
  std::vector<Affine> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace

EDelta e_delta(const Ifs& ifs, const StateGraph& g, const Scalar& delta, std::size_t max_words) {
  if (!g.closed) throw std::logic_error("E_delta requires a closed graph");
  // a net interval with the most neighbours; the root only counts through a
  // genuine recurrence of its neighbour set
  const NetInterval* best = nullptr;
  std::size_t best_state = 0;
  std::size_t best_size = 0;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    const auto& s = g.states[i];
    const NetInterval* w = &s.witness;
    if (i == 0) {
      if (s.alternates.empty()) continue;
      w = &s.alternates.front();
    }
    if (s.set.size() > best_size) {
      best = w;
      best_state = i;
      best_size = s.set.size();
    }
  }
  if (!best) throw std::logic_error("no genuine net interval in the graph");

  const Scalar beta = best->generation.alpha();
  const Scalar threshold = word_constant(ifs, delta) * beta * ifs.r_min() * ifs.r_min();
  const NeighbourSet v = neighbour_set(*best);
  std::unordered_set<Affine, AffineHash> gamma;
  for (const auto& s : maps_above(ifs, threshold, max_words)) {
    const Affine si = invert(s);
    for (const auto& t : v.members()) gamma.insert(compose(t, si));
  }
  std::vector<Affine> sorted(gamma.begin(), gamma.end());
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  return EDelta(std::move(sorted), beta, threshold, best_state);
}

Scalar epsilon1(const Ifs& ifs) {
  const Scalar r2 = ifs.r_min() * ifs.r_min();
  std::vector<Interval> cyl;
  for (const auto& f : maps_above(ifs, r2, std::numeric_limits<std::size_t>::max())) {
    cyl.push_back(image_of_unit(f));
  }
  std::optional<Scalar> best;
  for (const auto& x : cyl) {
    for (const auto& y : cyl) {
      if (!x.interiors_meet(y)) continue;
      Scalar m = overlap(x, y);
      if (!best || m < *best) best = std::move(m);
    }
  }
  return *best;
}

namespace {

/// Index-valued segment tree answering "shortest interval in a range".
class MinLengthTree {
 public:
  explicit MinLengthTree(const std::vector<Scalar>& lengths) : len_(lengths) {
    n_ = 1;
    while (n_ < len_.size()) n_ <<= 1;
    tree_.assign(2 * n_, kNone);
    for (std::size_t i = 0; i < len_.size(); ++i) tree_[n_ + i] = i;
    for (std::size_t i = n_ - 1; i >= 1; --i) tree_[i] = pick(tree_[2 * i], tree_[2 * i + 1]);
  }

  /// Index of the minimum over [lo, hi), or kNone.
  std::size_t query(std::size_t lo, std::size_t hi) const {
    std::size_t best = kNone;
    for (lo += n_, hi += n_; lo < hi; lo >>= 1, hi >>= 1) {
      if (lo & 1) best = pick(best, tree_[lo++]);
      if (hi & 1) best = pick(best, tree_[--hi]);
    }
    return best;
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

 private:
  std::size_t pick(std::size_t a, std::size_t b) const {
    if (a == kNone) return b;
    if (b == kNone) return a;
    return len_[b] < len_[a] ? b : a;
  }

  const std::vector<Scalar>& len_;
  std::size_t n_ = 1;
  std::vector<std::size_t> tree_;
};

}  // namespace

Scalar epsilon2(const Ifs& ifs, const EDelta& e) {
  // F = a^-1 o b with a, b in {f o h}; m([0,1] n F[0,1]) = m(A n B)/m(A) for
  // A = a[0,1], B = b[0,1], and F[0,1] meets (0,1) iff the interiors of A and
  // B meet.
  std::vector<Affine> ends{Affine::identity()};
  for (const auto& s : ifs.maps()) ends.push_back(s);
  std::unordered_set<Affine, AffineHash> family;
  for (const auto& f : e.gamma()) {
    for (const auto& h : ends) family.insert(compose(f, h));
  }
  std::vector<Interval> iv;
  iv.reserve(family.size());
  for (const auto& f : family) iv.push_back(image_of_unit(f));
  std::sort(iv.begin(), iv.end(), [](const Interval& x, const Interval& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.hi < y.hi;
  });
  iv.erase(std::unique(iv.begin(), iv.end()), iv.end());

  std::vector<Scalar> his;
  std::vector<Scalar> lengths;
  {
    std::vector<Interval> by_hi = iv;
    std::sort(by_hi.begin(), by_hi.end(),
              [](const Interval& x, const Interval& y) { return x.hi < y.hi; });
    for (const auto& b : by_hi) {
      his.push_back(b.hi);
      lengths.push_back(b.length());
    }
  }
  std::vector<Scalar> los;
  for (const auto& b : iv) los.push_back(b.lo);
  const MinLengthTree shortest(lengths);

  std::optional<Scalar> best;
  for (const auto& a : iv) {
    // B = A itself
    Scalar m = a.length();
    // right endpoints of B strictly inside A: overlap min(q - l, m(B))
    const auto q_first = std::upper_bound(his.begin(), his.end(), a.lo) - his.begin();
    const auto q_last = std::lower_bound(his.begin(), his.end(), a.hi) - his.begin();
    if (q_first < q_last) {
      m = min(m, his[static_cast<std::size_t>(q_first)] - a.lo);
      const std::size_t k = shortest.query(static_cast<std::size_t>(q_first),
                                           static_cast<std::size_t>(q_last));
      m = min(m, lengths[k]);
    }
    // left endpoints of B strictly inside A: overlap h - p at least
    const auto p_last = std::lower_bound(los.begin(), los.end(), a.hi) - los.begin();
    if (p_last > 0 && los[static_cast<std::size_t>(p_last - 1)] > a.lo) {
      m = min(m, a.hi - los[static_cast<std::size_t>(p_last - 1)]);
    }
    Scalar ratio = m / a.length();
    if (!best || ratio < *best) best = std::move(ratio);
  }
  return *best;
}

EpsilonConstants epsilon_constants(const Ifs& ifs, const EDelta& e) {
  if (!attractor_is_interval(ifs)) {
    throw std::invalid_argument("epsilon constants require the attractor [0,1]");
  }
  EpsilonConstants out;
  out.eps1 = epsilon1(ifs);
  out.eps2 = epsilon2(ifs, e);
  out.eps = min(out.eps1, ifs.r_min() * out.eps2);
  return out;
}

namespace {

BspLevel bsp_level(const Ifs& ifs, const Scalar& c, const Scalar& alpha,
                   std::vector<BspViolation>& found) {
  std::vector<Scalar> points;
  for (const auto& f : generation_maps(ifs, Generation(alpha))) {
    points.push_back(f(Scalar(0)));
    points.push_back(f(Scalar(1)));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  BspLevel level{alpha, points.size(), Scalar(0), 0};
  const Scalar bound = c * alpha;
  std::optional<Scalar> min_gap;
  // distinct points are at least c*alpha apart iff consecutive ones are
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Scalar gap = points[i + 1] - points[i];
    if (gap < bound) {
      ++level.violations;
      if (found.size() < 20) found.push_back({alpha, points[i], points[i + 1]});
    }
    if (!min_gap || gap < *min_gap) min_gap = std::move(gap);
  }
  if (min_gap) level.min_ratio = *min_gap / alpha;
  return level;
}

}  // namespace

BspReport check_bsp(const Ifs& ifs, const Scalar& c, const std::vector<Scalar>& alphas,
                    unsigned threads) {
  if (c.sign() < 0) throw std::invalid_argument("separation constant must be non-negative");
  std::vector<BspLevel> levels(alphas.size());
  std::vector<std::vector<BspViolation>> found(alphas.size());
  const std::size_t workers = std::max(1U, std::min<unsigned>(threads, alphas.size()));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t t) {
    try {
      for (std::size_t i = t; i < alphas.size(); i += workers) {
        levels[i] = bsp_level(ifs, c, alphas[i], found[i]);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  BspReport report;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    report.violations += levels[i].violations;
    for (auto& v : found[i]) {
      if (report.examples.size() < 20) report.examples.push_back(std::move(v));
    }
  }
  report.levels = std::move(levels);
  return report;
}

GammaEqui gamma_equi(const Ifs& ifs, std::size_t n_max) {
  const Scalar rho = ifs.maps().front().L;
  for (const auto& f : ifs.maps()) {
    if (f.L != rho) throw std::invalid_argument("system is not equicontractive");
  }
  if (rho.sign() <= 0) throw std::invalid_argument("contraction ratio must be positive");

  GammaEqui out;
  std::set<Scalar> all;
  // distinct maps of words of length n with a multiplicity flag
  std::unordered_map<Affine, bool, AffineHash> level{{Affine::identity(), false}};
  Scalar scale(1);  // rho^n
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) {
      std::unordered_map<Affine, bool, AffineHash> next;
      for (const auto& [f, repeated] : level) {
        for (const auto& s : ifs.maps()) {
          auto [it, fresh] = next.emplace(compose(f, s), repeated);
          if (!fresh) it->second = true;
          else if (repeated) it->second = true;
        }
      }
      level = std::move(next);
      scale *= rho;
    }
    std::vector<Scalar> points;
    bool coincide = false;
    for (const auto& [f, repeated] : level) {
      points.push_back(f.a);
      coincide = coincide || repeated;
    }
    std::sort(points.begin(), points.end());
    std::set<Scalar> here;
    if (coincide) here.insert(Scalar(0));
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        const Scalar d = points[j] - points[i];
        if (d >= scale) break;
        here.insert(d / scale);
      }
    }
    out.per_level.push_back(here.size());
    all.insert(here.begin(), here.end());
    out.cumulative.push_back(all.size());
  }
  out.values.assign(all.begin(), all.end());
  const auto& c = out.cumulative;
  out.stable = c.size() >= 4 && c[c.size() - 1] == c[c.size() - 4];
  return out;
}

std::size_t wsc_ball_count(const Ifs& ifs, const Scalar& x0, const Word& tau, const Generation& g) {
  const Scalar start = tau.map()(x0);
  std::vector<Scalar> points;
  for (const auto& f : generation_maps(ifs, g)) points.push_back(f(start));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const Scalar width = g.alpha() * Scalar(2);
  std::size_t best = 0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < points.size(); ++hi) {
    while (points[hi] - points[lo] > width) ++lo;
    best = std::max(best, hi - lo + 1);
  }
  return best;
}

DichotomyReport check_dichotomy(const Ifs& ifs, const EDelta& e, const Scalar& delta,
                                const std::vector<Scalar>& alphas) {
  DichotomyReport report;
  std::unordered_map<Affine, bool, AffineHash> cache;
  for (const auto& alpha : alphas) {
    const auto maps = generation_maps(ifs, Generation(alpha));
    std::vector<std::pair<Interval, const Affine*>> cyl;
    for (const auto& f : maps) cyl.emplace_back(image_of_unit(f), &f);
    std::sort(cyl.begin(), cyl.end(),
              [](const auto& x, const auto& y) { return x.first.lo < y.first.lo; });
    const Scalar need = delta * alpha;
    for (std::size_t i = 0; i < cyl.size(); ++i) {
      for (std::size_t j = i; j < cyl.size() && cyl[j].first.lo < cyl[i].first.hi; ++j) {
        if (overlap(cyl[i].first, cyl[j].first) < need) continue;
        ++report.pairs_checked;
        const Affine h = compose(invert(*cyl[i].second), *cyl[j].second);
        auto it = cache.find(h);
        if (it == cache.end()) it = cache.emplace(h, e.contains(h)).first;
        if (!it->second) ++report.violations;
      }
    }
  }
  return report;
}

}  // namespace ifsnet
