// SPDX-License-Identifier: Apache-2.0

#include "ifsnet/neighbour.hpp"

#include <algorithm>
#include <stdexcept>

namespace ifsnet {

NeighbourSet::NeighbourSet(std::vector<Neighbour> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("neighbour sets are non-empty");
  std::sort(members_.begin(), members_.end(), canonical_less);
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

std::string NeighbourSet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += "; ";
    s += members_[i].str();
  }
  return s + "}";
}

Neighbour neighbour_of(const NetInterval& delta, const Word& sigma) {
  const Interval c = sigma.cylinder();
  if (!c.contains(delta.interval())) {
    throw std::invalid_argument("word " + sigma.str() + " does not generate a neighbour of [" +
                                delta.lo.str() + ", " + delta.hi.str() + "]");
  }
  const Scalar m = delta.length();
  Neighbour t{sigma.ratio() / m, (sigma.map().a - delta.lo) / m};
  // |L| >= 1 and T([0,1]) covers [0,1]
  const Interval img = image_of_unit(t);
  if (t.L.abs() < Scalar(1) || img.lo > Scalar(0) || img.hi < Scalar(1)) {
    throw std::logic_error("neighbour invariant violated for " + t.str());
  }
  return t;
}

NeighbourSet neighbour_set(const NetInterval& delta) {
  std::vector<Neighbour> members;
  members.reserve(delta.generators.size());
  for (const auto& w : delta.generators) members.push_back(neighbour_of(delta, w));
  return NeighbourSet(std::move(members));
}

std::string canonical_key(const NeighbourSet& v) {
  std::string key;
  for (const auto& t : v.members()) {
    key += t.a.str();
    key += '|';
    key += t.L.str();
    key += ';';
  }
  return key;
}

}  // namespace ifsnet
