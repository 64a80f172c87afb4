#ifndef GAINTHRESH_OPTIMALITY_H
#define GAINTHRESH_OPTIMALITY_H

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gainthresh/mdp.h"
#include "gainthresh/policy_eval.h"

namespace gainthresh {

struct Options {
   /// Relative tie tolerance; the absolute value is tie * max(1, |reference|_inf).
   double tie = 1e-9;
   std::size_t cap = kDefaultEnumerationCap;
};

double scaled_tolerance(double relative, const Eigen::VectorXd& reference);

struct EvaluatedPolicy {
   Policy policy;
   InducedChain chain;
   PolicyEvaluation eval;
};

/// Evaluates every deterministic policy, in enumeration order.
std::vector<EvaluatedPolicy> evaluate_all(const MdpInstance& mdp, std::size_t cap);

struct OptimalityProfile {
   Eigen::VectorXd g_star;
   Eigen::VectorXd h_star;
   std::vector<Policy> gain_optimal_set;
   std::vector<Policy> bias_optimal_set;
   /// Absolute tolerances actually used for gain and bias comparisons.
   double gain_tolerance = 0.0;
   double bias_tolerance = 0.0;

   bool is_gain_optimal(const Policy& policy) const;
};

OptimalityProfile brute_force_optimal(const MdpInstance& mdp, const Options& options = {});
OptimalityProfile brute_force_optimal(const std::vector<EvaluatedPolicy>& table,
                                      const Options& options = {});

/// Flags, per chain, membership in the beta-discounted optimal set.
std::vector<bool> discounted_optimal_mask(const std::vector<InducedChain>& chains, double beta,
                                          double tol);

std::vector<Policy> discounted_optimal_set(const MdpInstance& mdp, double beta,
                                           double tol = 1e-9,
                                           std::size_t cap = kDefaultEnumerationCap);

struct GapTable {
   std::vector<std::vector<double>> delta;  // [state][action]

   double at(std::size_t state, std::size_t action) const { return delta[state][action]; }
};

/// Delta*(x, a) = h*(x) - [r(x, a) - g*(x) + <p(x, a), h*>].
GapTable suboptimality_gaps(const MdpInstance& mdp, const OptimalityProfile& profile);

struct LemmaReport {
   std::vector<Policy> policies;
   /// slack(i, x) = g*(x) - sum_y mu(y) Delta*(y, pi(y)) - g^pi(x), policy i.
   Eigen::MatrixXd slack;
   double min_slack = 0.0;
   bool equality_checked = false;
   double max_equality_error = 0.0;
};

inline constexpr double kLemmaTolerance = 1e-8;

/// Checks the Bellman-gap inequality for every policy and state, and
/// equality on ergodic instances. Throws LemmaViolation with a witness.
LemmaReport verify_bellman_gap_lemma(const MdpInstance& mdp, const OptimalityProfile& profile,
                                     const Options& options = {});
LemmaReport verify_bellman_gap_lemma(const MdpInstance& mdp,
                                     const std::vector<EvaluatedPolicy>& table,
                                     const OptimalityProfile& profile, bool ergodic);

/// Optimal gain of a unichain MDP by average-reward policy iteration.
/// The unichain precondition is checked by enumeration unless
/// `assume_unichain` is set.
Eigen::VectorXd optimal_gain_policy_iteration(const MdpInstance& mdp,
                                              const Options& options = {},
                                              bool assume_unichain = false);

}  // namespace gainthresh

#endif  // GAINTHRESH_OPTIMALITY_H
