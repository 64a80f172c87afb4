#include "gainthresh/checks.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gainthresh/chain.h"
#include "gainthresh/error.h"

namespace gainthresh {

namespace {

constexpr std::size_t kHorizons[] = {1, 2, 5, 10, 100};
constexpr double kDiscounts[] = {0.0, 0.5, 0.9, 0.99, 0.999};

CheckOutcome bounded(std::string name, double worst, double limit)
{
   CheckOutcome out{std::move(name), worst <= limit, worst, {}};
   std::ostringstream detail;
   detail.precision(6);
   detail << "worst " << worst << " vs limit " << limit;
   out.detail = detail.str();
   return out;
}

/// Runs `body` and turns a library error into a failed check.
CheckOutcome guarded(const std::string& name, const std::function<CheckOutcome()>& body)
{
   try {
      return body();
   } catch (const Error& e) {
      return {name, false, 0.0, e.what()};
   }
}

}  // namespace

bool InvariantReport::all_passed() const
{
   return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::vector<double> soundness_samples(double bound)
{
   const double lo = std::max(bound, 0.0);
   std::vector<double> out;
   for (std::size_t k = 0; k < kSoundnessSamples; ++k)
      out.push_back(lo + (1.0 - lo) * static_cast<double>(k + 1)
                             / static_cast<double>(kSoundnessSamples + 1));
   return out;
}

InvariantReport run_invariant_suite(const MdpInstance& mdp, const Options& options,
                                    const OracleSettings& settings)
{
   InvariantReport report;
   const auto table = evaluate_all(mdp, options.cap);
   const auto profile = brute_force_optimal(table, options);
   report.ergodic = is_ergodic_mdp(mdp, options.cap).ergodic;
   auto& checks = report.checks;

   double poisson = 0.0, normalization = 0.0, harmonic = 0.0;
   double lemma3 = -INFINITY, lemma4 = -INFINITY;
   for (const auto& entry : table) {
      const auto& e = entry.eval;
      poisson = std::max(poisson, e.poisson_residual);
      normalization = std::max(normalization, e.normalization_residual);
      harmonic = std::max(harmonic, (entry.chain.P * e.gain - e.gain).cwiseAbs().maxCoeff());
      for (auto T : kHorizons) {
         const Eigen::VectorXd average = finite_horizon_score(entry.chain, T) / double(T);
         // excess over the sandwich half-width sp(h)/T
         const double excess = ((average - e.gain).cwiseAbs().array() - e.span_bias / double(T))
                                   .maxCoeff();
         lemma3 = std::max(lemma3, excess);
      }
      for (auto beta : kDiscounts) {
         const Eigen::VectorXd value = discounted_value(entry.chain, beta);
         const double excess =
             ((value - e.gain / (1.0 - beta)).cwiseAbs().array() - e.span_bias).maxCoeff();
         lemma4 = std::max(lemma4, excess);
      }
   }
   checks.push_back(bounded("poisson_residual", poisson, 1e-9));
   checks.push_back(bounded("bias_normalization", normalization, 1e-8));
   checks.push_back(bounded("gain_harmonic", harmonic, 1e-9));
   checks.push_back(bounded("finite_horizon_sandwich", lemma3, 1e-9));
   checks.push_back(bounded("discounted_sandwich", lemma4, 1e-6));

   {
      bool nested = !profile.bias_optimal_set.empty();
      for (const auto& p : profile.bias_optimal_set) nested = nested && profile.is_gain_optimal(p);
      checks.push_back({"optimal_sets_nested", nested, 0.0,
                        std::to_string(profile.bias_optimal_set.size()) + " bias-optimal of "
                            + std::to_string(profile.gain_optimal_set.size()) + " gain-optimal"});
   }

   checks.push_back(guarded("bellman_gap_lemma", [&] {
      const auto lemma = verify_bellman_gap_lemma(mdp, table, profile, report.ergodic);
      CheckOutcome out{"bellman_gap_lemma", true, lemma.min_slack, {}};
      out.detail = report.ergodic ? "equality verified" : "inequality verified";
      return out;
   }));

   report.theorem1 = theorem1_bound(table, profile);

   if (report.ergodic) {
      const auto gaps = suboptimality_gaps(mdp, profile);
      double most_negative = 0.0;
      for (const auto& row : gaps.delta)
         for (double d : row) most_negative = std::min(most_negative, d);
      double optimal_action_gap = 0.0;
      for (const auto& p : profile.bias_optimal_set)
         for (std::size_t x = 0; x < mdp.num_states(); ++x)
            optimal_action_gap = std::max(optimal_action_gap, std::abs(gaps.at(x, p.choice[x])));
      checks.push_back(bounded("gap_nonnegative", -most_negative, 1e-9));
      checks.push_back(bounded("gap_zero_on_optimal_actions", optimal_action_gap, 1e-9));

      checks.push_back(guarded("suboptimal_iff_suboptimal_action", [&] {
         const double gap_tol = 1e-9;
         for (const auto& entry : table) {
            const bool loses_gain = !profile.is_gain_optimal(entry.policy);
            bool uses_bad_action = false;
            for (std::size_t x = 0; x < mdp.num_states(); ++x)
               uses_bad_action = uses_bad_action || gaps.at(x, entry.policy.choice[x]) > gap_tol;
            if (loses_gain != uses_bad_action)
               return CheckOutcome{"suboptimal_iff_suboptimal_action", false, 0.0,
                                   "mismatch for a policy"};
         }
         return CheckOutcome{"suboptimal_iff_suboptimal_action", true, 0.0, {}};
      }));

      checks.push_back(guarded("policy_iteration_gain", [&] {
         const Eigen::VectorXd g = optimal_gain_policy_iteration(mdp, options, true);
         return bounded("policy_iteration_gain", (g - profile.g_star).cwiseAbs().maxCoeff(), 1e-9);
      }));

      checks.push_back(guarded("worst_diameter_agreement", [&] {
         const double brute = worst_diameter_bruteforce(mdp, options);
         const double algorithmic = worst_diameter_algorithm2(mdp, options);
         double span_excess = -INFINITY;
         const double r_span = reward_span(mdp);
         for (const auto& entry : table)
            span_excess = std::max(span_excess, entry.eval.span_bias - r_span * brute);
         checks.push_back(bounded("span_diameter_inequality", span_excess, 1e-8));
         return bounded("worst_diameter_agreement", std::abs(brute - algorithmic), 1e-7);
      }));

      checks.push_back(guarded("gain_gap_agreement", [&] {
         bool brute_defined = true;
         double brute = 0.0;
         try {
            brute = gain_gap_bruteforce(table, profile);
         } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoSuboptimalPolicy) throw;
            brute_defined = false;
         }
         bool algo_defined = true;
         double algorithmic = 0.0;
         try {
            algorithmic = delta_g_algorithm1(mdp, options);
         } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoSuboptimalPolicy) throw;
            algo_defined = false;
         }
         if (brute_defined != algo_defined)
            return CheckOutcome{"gain_gap_agreement", false, 0.0,
                                "only one route found a suboptimal policy"};
         if (brute_defined) report.gain_gap = brute;
         return bounded("gain_gap_agreement", std::abs(brute - algorithmic), 1e-9);
      }));

      checks.push_back(guarded("theorem_ordering", [&] {
         report.theorem2 = ergodic_bound(mdp, options);
         return bounded("theorem_ordering", report.theorem1.bound - report.theorem2->bound, 1e-9);
      }));
   }

   report.oracle = true_threshold_oracle(table, profile, settings);
   {
      const double limit = std::max(report.theorem1.bound, 0.0) + report.oracle.grid_resolution
                           + 1e-6;
      CheckOutcome out = bounded("oracle_soundness", report.oracle.estimate, limit);
      checks.push_back(out);
   }
   checks.push_back(guarded("discounted_sets_gain_optimal", [&] {
      std::size_t violations = 0;
      std::vector<InducedChain> chains;
      for (const auto& entry : table) chains.push_back(entry.chain);
      for (double beta : soundness_samples(report.theorem1.bound)) {
         const auto mask = discounted_optimal_mask(chains, beta, settings.membership_tol);
         for (std::size_t i = 0; i < table.size(); ++i)
            if (mask[i] && !profile.is_gain_optimal(table[i].policy)) ++violations;
      }
      return CheckOutcome{"discounted_sets_gain_optimal", violations == 0,
                          static_cast<double>(violations),
                          std::to_string(violations) + " violating (beta, policy) pairs"};
   }));
   return report;
}

}  // namespace gainthresh
