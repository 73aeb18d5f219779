// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/net.hpp"

#include <algorithm>
#include <stdexcept>

namespace ifsnet {

std::vector<Scalar> endpoints(const Ifs& ifs, const Generation& g) {
  std::vector<Scalar> points;
  for (const auto& f : generation_maps(ifs, g)) {
    points.push_back(f(Scalar(0)));
    points.push_back(f(Scalar(1)));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

namespace {

bool meets_below(const Ifs& ifs, const Affine& f, const Interval& j) {
  for (const auto& s : ifs.maps()) {
    const Affine g = compose(f, s);
    const Interval c = image_of_unit(g);
    if (c.hi <= j.lo || c.lo >= j.hi) continue;
    // cylinder endpoints are attractor points
    if (c.lo > j.lo || c.hi < j.hi) return true;
    if (c == j) return true;
    if (meets_below(ifs, g, j)) return true;
  }
  return false;
}

}  // namespace

bool meets_attractor(const Ifs& ifs, const Interval& j) {
  if (j.lo >= j.hi) {
    throw std::invalid_argument("malformed interval [" + j.lo.str() + ", " + j.hi.str() + "]");
  }
  if (j.hi <= Scalar(0) || j.lo >= Scalar(1)) return false;
  if (attractor_is_interval(ifs)) return true;
  if (j.lo < Scalar(0) || j.hi > Scalar(1)) return true;  // 0 or 1 lies inside
  if (j == Interval{Scalar(0), Scalar(1)}) return true;
  return meets_below(ifs, Affine::identity(), j);
}

std::vector<NetInterval> net_intervals(const Ifs& ifs, const Generation& g) {
  const std::vector<Scalar> h = endpoints(ifs, g);
  std::vector<std::vector<Word>> covering(h.size() > 0 ? h.size() - 1 : 0);
  GenerationStream stream(ifs, g);
  while (auto w = stream.next()) {
    const Interval c = w->cylinder();
    const auto first = std::lower_bound(h.begin(), h.end(), c.lo) - h.begin();
    const auto last = std::lower_bound(h.begin(), h.end(), c.hi) - h.begin();
    for (auto i = first; i < last; ++i) covering[static_cast<std::size_t>(i)].push_back(*w);
  }
  std::vector<NetInterval> out;
  for (std::size_t i = 0; i + 1 < h.size(); ++i) {
    const Interval j{h[i], h[i + 1]};
    if (!meets_attractor(ifs, j)) continue;
    if (covering[i].empty()) throw std::logic_error("net interval without generators");
    out.push_back({h[i], h[i + 1], g, std::move(covering[i])});
  }
  return out;
}

NetInterval root_interval() {
  return {Scalar(0), Scalar(1), Generation(Scalar(1)), {Word()}};
}

Affine interval_map(const NetInterval& delta) { return {delta.hi - delta.lo, delta.lo}; }

}  // namespace ifsnet
