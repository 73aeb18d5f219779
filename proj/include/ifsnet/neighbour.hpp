// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ifsnet/net.hpp"

namespace ifsnet {

/// A neighbour T = T_Delta^-1 o S_sigma, identified with its pair (a, L).
using Neighbour = Affine;

/// Canonically sorted, duplicate-free neighbours of one net interval.
class NeighbourSet {
 public:
  NeighbourSet() = default;
  /// Sorts by (a, L) and removes duplicates. Throws on an empty input.
  explicit NeighbourSet(std::vector<Neighbour> members);

  const std::vector<Neighbour>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  /// "{T1; T2; ...}" with each member in "L*x + a" form.
  std::string str() const;

  friend bool operator==(const NeighbourSet&, const NeighbourSet&) = default;

 private:
  std::vector<Neighbour> members_;
};

/// The normalized neighbour generated by sigma. Throws std::invalid_argument
/// if the cylinder of sigma does not cover delta.
Neighbour neighbour_of(const NetInterval& delta, const Word& sigma);

NeighbourSet neighbour_set(const NetInterval& delta);

/// Injective key on canonical neighbour sets.
std::string canonical_key(const NeighbourSet& v);

}  // namespace ifsnet
