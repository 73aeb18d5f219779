// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "ifsnet/explore.hpp"

namespace ifsnet {

/// Raised when an exhaustive enumeration would exceed its budget.
class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeparationConstants {
  Scalar delta;
  Scalar C_of_delta;
  Scalar c1;
  Scalar c2;
  Scalar c;
  std::optional<Scalar> eps1;
  std::optional<Scalar> eps2;
  std::optional<Scalar> eps;
};

/// r_min * min{|v - S_i(u)| : u, v in {0,1}, v != S_i(u)}.
Scalar delta(const Ifs& ifs);

/// The overlap-scale word constant delta * r_min^2.
Scalar word_constant(const Ifs& ifs, const Scalar& delta);

struct PhiResult {
  /// True when psi is sigma, false when psi is tau.
  bool psi_is_sigma = true;
  Word psi;
  Word phi;
  /// psi followed by phi.
  Word psi_phi;
};

/// Builds phi with |r_phi| >= delta r_min^2, r_{psi phi} > 0 and
/// S_{psi phi}([0,1]) inside S_sigma([0,1]) n S_tau([0,1]). sigma and tau must
/// both belong to the generation alpha and overlap by at least delta*alpha;
/// otherwise std::invalid_argument.
PhiResult construct_phi(const Ifs& ifs, const Word& sigma, const Word& tau, const Scalar& delta,
                        const Scalar& alpha);
/// Same, at the largest generation containing both words.
PhiResult construct_phi(const Ifs& ifs, const Word& sigma, const Word& tau, const Scalar& delta);

struct CConstants {
  Scalar c1;
  Scalar c2;
  Scalar c;
};

/// Separation constants from the neighbours and E of a closed graph.
CConstants c_constants(const Ifs& ifs, const StateGraph& g);

/// The finite set E_delta = {f^-1 o g : f, g in Gamma}, kept implicitly
/// through Gamma; #Gamma^2 can be far too large to list.
class EDelta {
 public:
  EDelta(std::vector<Affine> gamma, Scalar beta, Scalar threshold, std::size_t witness_state);

  const std::vector<Affine>& gamma() const { return gamma_; }
  const Scalar& beta() const { return beta_; }
  const Scalar& threshold() const { return threshold_; }
  std::size_t witness_state() const { return witness_state_; }
  /// #Gamma^2, an upper bound for #E_delta.
  std::uintmax_t formal_size() const;

  bool contains(const Affine& h) const;
  /// Lists E_delta; throws EnumerationBudgetExceeded if #Gamma^2 > limit.
  std::vector<Affine> materialize(std::size_t limit) const;

 private:
  std::vector<Affine> gamma_;
  std::unordered_set<Affine, AffineHash> members_;
  Scalar beta_;
  Scalar threshold_;
  std::size_t witness_state_;
};

/// Gamma from a maximal-cardinality witness of the closed graph. Throws
/// EnumerationBudgetExceeded when more than max_words maps are needed.
EDelta e_delta(const Ifs& ifs, const StateGraph& g, const Scalar& delta,
               std::size_t max_words = 2000000);

struct EpsilonConstants {
  Scalar eps1;
  Scalar eps2;
  Scalar eps;
};

/// Requires an interval attractor; std::invalid_argument otherwise.
EpsilonConstants epsilon_constants(const Ifs& ifs, const EDelta& e);
Scalar epsilon1(const Ifs& ifs);
/// min{m([0,1] n F([0,1])) : F in G(E_delta), F([0,1]) n (0,1) nonempty},
/// computed by sweeping the intervals f(h([0,1])), f in Gamma, h in {Id, S_i}.
Scalar epsilon2(const Ifs& ifs, const EDelta& e);

struct BspViolation {
  Scalar alpha;
  Scalar left;
  Scalar right;
};

struct BspLevel {
  Scalar alpha;
  std::size_t points = 0;
  /// Smallest gap between distinct endpoints divided by alpha.
  Scalar min_ratio;
  std::size_t violations = 0;
};

struct BspReport {
  std::vector<BspLevel> levels;
  std::size_t violations = 0;
  /// The first few violations, in level order.
  std::vector<BspViolation> examples;
};

/// With c = 0 nothing is a violation and only the gap profile is measured.
BspReport check_bsp(const Ifs& ifs, const Scalar& c, const std::vector<Scalar>& alphas,
                    unsigned threads = 1);

struct GammaEqui {
  /// Distinct normalized distances below 1, ascending.
  std::vector<Scalar> values;
  /// Distinct values found at each n = 0..n_max.
  std::vector<std::size_t> per_level;
  /// Size of the accumulated set after each n.
  std::vector<std::size_t> cumulative;
  /// No growth over the last three levels.
  bool stable = false;
};

/// Values rho^-n |S_sigma(0) - S_tau(0)| < 1 over distinct words of length n.
/// Requires a positive equicontractive system.
GammaEqui gamma_equi(const Ifs& ifs, std::size_t n_max);

/// Largest number of distinct points S_sigma(S_tau(x0)), sigma in the
/// generation, inside one closed ball of radius alpha.
std::size_t wsc_ball_count(const Ifs& ifs, const Scalar& x0, const Word& tau, const Generation& g);

struct DichotomyReport {
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
};

/// Every pair of one generation overlapping by >= delta*alpha must have
/// S_sigma^-1 o S_tau in E_delta.
DichotomyReport check_dichotomy(const Ifs& ifs, const EDelta& e, const Scalar& delta,
                                const std::vector<Scalar>& alphas);

}  // namespace ifsnet
