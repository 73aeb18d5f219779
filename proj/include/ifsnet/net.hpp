// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ifsnet/ifs.hpp"

namespace ifsnet {

/// A net interval [lo, hi] of a generation together with every word of that
/// generation whose cylinder covers it.
struct NetInterval {
  Scalar lo;
  Scalar hi;
  /// Largest scale at which the interval is a net interval with these
  /// generators (the root uses 1 by convention).
  Generation generation{Scalar(1)};
  std::vector<Word> generators;

  Interval interval() const { return {lo, hi}; }
  Scalar length() const { return hi - lo; }
};

/// Distinct values S_sigma(0), S_sigma(1) over the generation, ascending.
std::vector<Scalar> endpoints(const Ifs& ifs, const Generation& g);

/// Whether the open interval (u, v) meets the attractor. Exact and
/// terminating: descends only through cylinders strictly containing [u,v],
/// and a cylinder endpoint inside (u,v) or a cylinder equal to [u,v] is a
/// witness. Throws std::invalid_argument when u >= v.
bool meets_attractor(const Ifs& ifs, const Interval& j);

std::vector<NetInterval> net_intervals(const Ifs& ifs, const Generation& g);

/// The root [0,1], generated by the empty word.
NetInterval root_interval();

/// T_Delta: the increasing similarity taking [0,1] onto the interval.
Affine interval_map(const NetInterval& delta);

}  // namespace ifsnet
