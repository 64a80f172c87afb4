#ifndef GAINTHRESH_THRESHOLDS_H
#define GAINTHRESH_THRESHOLDS_H

#include <cstddef>
#include <optional>
#include <vector>

#include "gainthresh/mdp.h"
#include "gainthresh/optimality.h"

namespace gainthresh {

/// A gain-suboptimal (state, policy) pair and its ratio
/// (g*(x) - g^pi(x)) / (sp(h*) + sp(h^pi)).
struct BoundWitness {
   std::size_t state = 0;
   Policy policy;
   double gain_deficit = 0.0;
   double span_sum = 0.0;
   double ratio = 0.0;
};

struct Theorem1Result {
   double bound = 0.0;
   /// No gain-suboptimal pair exists; bound is 0 by convention.
   bool empty_infimum = false;
   /// Every suboptimal pair had a zero span sum, so the infimum is +inf and
   /// the raw bound is -inf; reported as 0.
   bool unrestricted = false;
   std::size_t zero_denominator_pairs = 0;
   /// Pairs attaining the minimum ratio.
   std::vector<BoundWitness> witnesses;
};

Theorem1Result theorem1_bound(const MdpInstance& mdp, const Options& options = {});
Theorem1Result theorem1_bound(const std::vector<EvaluatedPolicy>& table,
                              const OptimalityProfile& profile);

/// Smallest positive per-state gain deficit over all policies.
double gain_gap_bruteforce(const MdpInstance& mdp, const Options& options = {});
double gain_gap_bruteforce(const std::vector<EvaluatedPolicy>& table,
                           const OptimalityProfile& profile);

/// Gain gap from optimal gains of the single-action restricted copies.
/// Requires an ergodic MDP.
double delta_g_algorithm1(const MdpInstance& mdp, const Options& options = {});

/// Expected hitting times E_x[tau_target] for a chain; entry `target` is 0.
Eigen::VectorXd hitting_times(const Eigen::MatrixXd& P, std::size_t target);

double worst_diameter_bruteforce(const MdpInstance& mdp, const Options& options = {});

inline constexpr std::size_t kMaxValueIterationSweeps = 10'000'000;

/// Worst diameter from the optimal bias of each y-absorbing copy, solved by
/// value iteration plus an exact policy-evaluation polish.
double worst_diameter_algorithm2(const MdpInstance& mdp, const Options& options = {});

struct ErgodicBoundResult {
   double bound = 0.0;
   /// No gain-suboptimal policy; bound is 0 by convention.
   bool degenerate = false;
   /// The worst diameter is 0 (a single state), so the raw bound is -inf;
   /// reported as 0.
   bool unrestricted = false;
   std::optional<double> delta_g;
   double worst_diameter = 0.0;
   double reward_span = 0.0;
};

ErgodicBoundResult ergodic_bound(const MdpInstance& mdp, const Options& options = {});

struct OracleSettings {
   std::size_t grid_points = 2000;
   double refine_tol = 1e-7;
   /// Membership tolerance for discounted-optimal sets (relative).
   double membership_tol = 1e-9;
};

inline constexpr double kOracleGridTop = 1.0 - 1e-9;

/// beta_i = 1 - 10^(-9 i / (n - 1)), i = 0..n-1: 0 up to 1 - 1e-9, dense near 1.
std::vector<double> oracle_grid(std::size_t points);

/// Largest gap between consecutive grid points.
double grid_resolution(const std::vector<double>& grid);

struct OracleResult {
   double estimate = 0.0;
   /// Last beta where a gain-suboptimal policy was verified discounted-optimal,
   /// and the first verified beta above it where none of them was.
   double lower = 0.0;
   double upper = 0.0;
   double grid_resolution = 0.0;
   std::size_t grid_points = 0;
   double refine_tol = 0.0;
   std::optional<Policy> witness;
};

OracleResult true_threshold_oracle(const MdpInstance& mdp, const OracleSettings& settings = {},
                                   const Options& options = {});
OracleResult true_threshold_oracle(const std::vector<EvaluatedPolicy>& table,
                                   const OptimalityProfile& profile,
                                   const OracleSettings& settings = {});

}  // namespace gainthresh

#endif  // GAINTHRESH_THRESHOLDS_H
