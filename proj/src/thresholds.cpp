#include "gainthresh/thresholds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gainthresh/chain.h"
#include "gainthresh/error.h"
#include "gainthresh/parallel.h"

namespace gainthresh {

namespace {

using Index = Eigen::Index;

constexpr double kZeroSpan = 1e-12;

void require_ergodic(const MdpInstance& mdp, std::size_t cap)
{
   const auto result = is_ergodic_mdp(mdp, cap);
   if (!result.ergodic) {
      std::string msg = "policy (";
      for (std::size_t i = 0; i < result.witness->choice.size(); ++i)
         msg += (i ? "," : "") + std::to_string(result.witness->choice[i]);
      msg += ") induces a chain with " + std::to_string(result.witness_structure->recurrent_classes.size())
             + " recurrent class(es) and "
             + std::to_string(result.witness_structure->transient_states.size())
             + " transient state(s)";
      throw Error(ErrorKind::NotErgodic, msg);
   }
}

Eigen::VectorXd optimal_gain_with_fallback(const MdpInstance& mdp, const Options& options)
{
   try {
      return optimal_gain_policy_iteration(mdp, options, /*assume_unichain=*/true);
   } catch (const Error& e) {
      if (e.kind() != ErrorKind::IterationLimitExceeded) throw;
      return brute_force_optimal(mdp, options).g_star;
   }
}

}  // namespace

Theorem1Result theorem1_bound(const MdpInstance& mdp, const Options& options)
{
   const auto table = evaluate_all(mdp, options.cap);
   return theorem1_bound(table, brute_force_optimal(table, options));
}

Theorem1Result theorem1_bound(const std::vector<EvaluatedPolicy>& table,
                              const OptimalityProfile& profile)
{
   Theorem1Result result;
   const double span_star = span(profile.h_star);
   std::vector<BoundWitness> pairs;
   std::size_t suboptimal_pairs = 0;
   for (const auto& entry : table) {
      for (Index x = 0; x < profile.g_star.size(); ++x) {
         const double deficit = profile.g_star[x] - entry.eval.gain[x];
         if (deficit <= profile.gain_tolerance) continue;
         ++suboptimal_pairs;
         const double span_sum = span_star + entry.eval.span_bias;
         if (span_sum <= kZeroSpan) {
            ++result.zero_denominator_pairs;
            continue;
         }
         pairs.push_back({static_cast<std::size_t>(x), entry.policy, deficit, span_sum,
                          deficit / span_sum});
      }
   }
   if (suboptimal_pairs == 0) {
      result.empty_infimum = true;
      return result;
   }
   if (pairs.empty()) {
      result.unrestricted = true;
      return result;
   }
   double min_ratio = std::numeric_limits<double>::infinity();
   for (const auto& p : pairs) min_ratio = std::min(min_ratio, p.ratio);
   const double slack = 1e-12 * std::max(1.0, std::abs(min_ratio));
   for (auto& p : pairs)
      if (p.ratio <= min_ratio + slack) result.witnesses.push_back(std::move(p));
   result.bound = 1.0 - min_ratio;
   return result;
}

double gain_gap_bruteforce(const MdpInstance& mdp, const Options& options)
{
   const auto table = evaluate_all(mdp, options.cap);
   return gain_gap_bruteforce(table, brute_force_optimal(table, options));
}

double gain_gap_bruteforce(const std::vector<EvaluatedPolicy>& table,
                           const OptimalityProfile& profile)
{
   double gap = std::numeric_limits<double>::infinity();
   for (const auto& entry : table) {
      for (Index x = 0; x < profile.g_star.size(); ++x) {
         const double deficit = profile.g_star[x] - entry.eval.gain[x];
         if (deficit > profile.gain_tolerance) gap = std::min(gap, deficit);
      }
   }
   if (!std::isfinite(gap))
      throw Error(ErrorKind::NoSuboptimalPolicy, "every policy is gain-optimal");
   return gap;
}

double delta_g_algorithm1(const MdpInstance& mdp, const Options& options)
{
   require_ergodic(mdp, options.cap);
   const Eigen::VectorXd g_full = optimal_gain_with_fallback(mdp, options);
   const double tol = scaled_tolerance(options.tie, g_full);

   double gap = std::numeric_limits<double>::infinity();
   for (std::size_t x = 0; x < mdp.num_states(); ++x) {
      if (mdp.num_actions(x) < 2) continue;  // the restricted copy is M itself
      for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
         const Eigen::VectorXd g_restricted =
             optimal_gain_with_fallback(restrict_action(mdp, x, a), options);
         // gains are constant on ergodic instances; take the smallest deficit
         const double deficit = (g_full - g_restricted).minCoeff();
         if (deficit > tol) gap = std::min(gap, deficit);
      }
   }
   if (!std::isfinite(gap))
      throw Error(ErrorKind::NoSuboptimalPolicy, "no restricted copy loses gain");
   return gap;
}

Eigen::VectorXd hitting_times(const Eigen::MatrixXd& P, std::size_t target)
{
   const Index n = P.rows();
   const auto y = static_cast<Index>(target);
   if (y < 0 || y >= n) throw Error(ErrorKind::DomainError, "target state out of range");
   Eigen::VectorXd times = Eigen::VectorXd::Zero(n);
   if (n == 1) return times;

   // t(x) = 1 + sum_{z != y} P(x, z) t(z) over x != y
   std::vector<Index> others;
   for (Index x = 0; x < n; ++x)
      if (x != y) others.push_back(x);
   const auto m = static_cast<Index>(others.size());
   Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
   for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) A(i, j) -= P(others[static_cast<std::size_t>(i)],
                                                 others[static_cast<std::size_t>(j)]);
   Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
   if (!lu.isInvertible())
      throw Error(ErrorKind::NotErgodic,
                  "state " + std::to_string(target) + " is not reachable from every state");
   const Eigen::VectorXd t = lu.solve(Eigen::VectorXd::Ones(m));
   if (!t.allFinite() || t.minCoeff() < 1.0 - 1e-9)
      throw Error(ErrorKind::NotErgodic,
                  "hitting-time system for state " + std::to_string(target) + " is degenerate");
   for (Index i = 0; i < m; ++i) times[others[static_cast<std::size_t>(i)]] = t[i];
   return times;
}

double worst_diameter_bruteforce(const MdpInstance& mdp, const Options& options)
{
   require_ergodic(mdp, options.cap);
   double worst = 0.0;
   for (const auto& policy : enumerate_policies(mdp, options.cap)) {
      const auto chain = induce(mdp, policy);
      for (std::size_t y = 0; y < mdp.num_states(); ++y)
         worst = std::max(worst, hitting_times(chain.P, y).maxCoeff());
   }
   return worst;
}

double worst_diameter_algorithm2(const MdpInstance& mdp, const Options& options)
{
   require_ergodic(mdp, options.cap);
   const std::size_t n = mdp.num_states();
   constexpr double kStopChange = 1e-10;

   double worst = 0.0;
   for (std::size_t y = 0; y < n; ++y) {
      // On the y-absorbing copy every non-target step earns 1 and y earns 0,
      // so the optimal bias solves h(y) = 0, h(x) = max_a [1 + <p(x, a), h>].
      Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Index>(n));
      std::size_t sweeps = 0;
      for (;; ++sweeps) {
         if (sweeps >= kMaxValueIterationSweeps)
            throw Error(ErrorKind::IterationLimitExceeded,
                        "value iteration on the absorbing copy for state "
                            + std::to_string(y) + " did not converge");
         Eigen::VectorXd next = Eigen::VectorXd::Zero(static_cast<Index>(n));
         for (std::size_t x = 0; x < n; ++x) {
            if (x == y) continue;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < mdp.num_actions(x); ++a)
               best = std::max(best, 1.0 + mdp.transition[x][a].dot(h));
            next[static_cast<Index>(x)] = best;
         }
         const double change = (next - h).cwiseAbs().maxCoeff();
         h = std::move(next);
         if (change <= kStopChange) break;
      }

      // Exact fixed point: evaluate the greedy policy, improving while it
      // still admits a strictly better action.
      Policy greedy{std::vector<std::size_t>(n, 0)};
      auto improve = [&](const Eigen::VectorXd& values) {
         bool changed = false;
         const double tol = 1e-12 * std::max(1.0, values.cwiseAbs().maxCoeff());
         for (std::size_t x = 0; x < n; ++x) {
            if (x == y) continue;
            const auto q = [&](std::size_t a) { return 1.0 + mdp.transition[x][a].dot(values); };
            std::size_t best = greedy.choice[x];
            double best_value = q(best);
            const double incumbent = best_value;
            for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
               if (q(a) > best_value) {
                  best = a;
                  best_value = q(a);
               }
            }
            if (best != greedy.choice[x] && best_value > incumbent + tol) {
               greedy.choice[x] = best;
               changed = true;
            }
         }
         return changed;
      };
      improve(h);
      Eigen::VectorXd exact = hitting_times(induce(mdp, greedy).P, y);
      for (std::size_t round = 0; round < policy_count(mdp) && improve(exact); ++round)
         exact = hitting_times(induce(mdp, greedy).P, y);
      worst = std::max(worst, exact.maxCoeff());
   }
   return worst;
}

ErgodicBoundResult ergodic_bound(const MdpInstance& mdp, const Options& options)
{
   require_ergodic(mdp, options.cap);
   ErgodicBoundResult result;
   result.reward_span = reward_span(mdp);
   result.worst_diameter = worst_diameter_algorithm2(mdp, options);
   try {
      result.delta_g = delta_g_algorithm1(mdp, options);
   } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoSuboptimalPolicy) throw;
      result.degenerate = true;
      return result;
   }
   if (result.reward_span <= 0.0)
      throw Error(ErrorKind::DomainError,
                  "reward span is zero although some policy is gain-suboptimal");
   if (result.worst_diameter <= 0.0) {
      result.unrestricted = true;
      return result;
   }
   result.bound = 1.0 - *result.delta_g / (2.0 * result.reward_span * result.worst_diameter);
   return result;
}

std::vector<double> oracle_grid(std::size_t points)
{
   if (points < 2) throw Error(ErrorKind::DomainError, "oracle grid needs at least 2 points");
   std::vector<double> grid(points);
   for (std::size_t i = 0; i < points; ++i) {
      const double exponent = -9.0 * static_cast<double>(i) / static_cast<double>(points - 1);
      grid[i] = 1.0 - std::pow(10.0, exponent);
   }
   grid.front() = 0.0;
   grid.back() = kOracleGridTop;
   return grid;
}

double grid_resolution(const std::vector<double>& grid)
{
   double widest = 0.0;
   for (std::size_t i = 1; i < grid.size(); ++i) widest = std::max(widest, grid[i] - grid[i - 1]);
   return widest;
}

OracleResult true_threshold_oracle(const MdpInstance& mdp, const OracleSettings& settings,
                                   const Options& options)
{
   const auto table = evaluate_all(mdp, options.cap);
   return true_threshold_oracle(table, brute_force_optimal(table, options), settings);
}

OracleResult true_threshold_oracle(const std::vector<EvaluatedPolicy>& table,
                                   const OptimalityProfile& profile,
                                   const OracleSettings& settings)
{
   if (settings.grid_points < 100)
      throw Error(ErrorKind::DomainError, "oracle needs at least 100 grid points");
   if (!(settings.refine_tol > 0.0))
      throw Error(ErrorKind::DomainError, "refinement tolerance must be positive");

   const auto grid = oracle_grid(settings.grid_points);
   OracleResult result;
   result.grid_points = settings.grid_points;
   result.refine_tol = settings.refine_tol;
   result.grid_resolution = grid_resolution(grid);

   std::vector<InducedChain> chains;
   std::vector<std::size_t> suboptimal;
   for (std::size_t i = 0; i < table.size(); ++i) {
      chains.push_back(table[i].chain);
      if (!profile.is_gain_optimal(table[i].policy)) suboptimal.push_back(i);
   }
   if (suboptimal.empty()) return result;

   std::vector<std::vector<bool>> member(grid.size());
   parallel_for(grid.size(), [&](std::size_t k) {
      member[k] = discounted_optimal_mask(chains, grid[k], settings.membership_tol);
   });

   bool found = false;
   for (auto p : suboptimal) {
      std::size_t last = grid.size();
      for (std::size_t k = grid.size(); k-- > 0;) {
         if (member[k][p]) {
            last = k;
            break;
         }
      }
      if (last == grid.size()) continue;

      double lo = grid[last];
      double hi = 1.0;
      if (last + 1 < grid.size()) {
         hi = grid[last + 1];
         while (hi - lo > settings.refine_tol) {
            const double mid = 0.5 * (lo + hi);
            if (discounted_optimal_mask(chains, mid, settings.membership_tol)[p])
               lo = mid;
            else
               hi = mid;
         }
      }
      if (!found || lo > result.lower) {
         found = true;
         result.lower = lo;
         result.upper = hi;
         result.witness = table[p].policy;
      }
   }
   result.estimate = result.lower;
   return result;
}

}  // namespace gainthresh
