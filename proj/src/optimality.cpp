#include "gainthresh/optimality.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gainthresh/chain.h"
#include "gainthresh/error.h"

namespace gainthresh {

namespace {

using Index = Eigen::Index;

bool dominates_within(const Eigen::VectorXd& value, const Eigen::VectorXd& best, double tol)
{
   return ((best - value).array() <= tol).all();
}

std::string describe(const Policy& policy)
{
   std::ostringstream out;
   out << "(";
   for (std::size_t i = 0; i < policy.choice.size(); ++i)
      out << (i ? "," : "") << policy.choice[i];
   out << ")";
   return out.str();
}

}  // namespace

double scaled_tolerance(double relative, const Eigen::VectorXd& reference)
{
   const double norm = reference.size() ? reference.cwiseAbs().maxCoeff() : 0.0;
   return relative * std::max(1.0, norm);
}

bool OptimalityProfile::is_gain_optimal(const Policy& policy) const
{
   return std::find(gain_optimal_set.begin(), gain_optimal_set.end(), policy)
          != gain_optimal_set.end();
}

std::vector<EvaluatedPolicy> evaluate_all(const MdpInstance& mdp, std::size_t cap)
{
   std::vector<EvaluatedPolicy> table;
   for (auto& policy : enumerate_policies(mdp, cap)) {
      EvaluatedPolicy entry{std::move(policy), {}, {}};
      entry.chain = induce(mdp, entry.policy);
      entry.eval = evaluate(entry.chain);
      table.push_back(std::move(entry));
   }
   return table;
}

OptimalityProfile brute_force_optimal(const MdpInstance& mdp, const Options& options)
{
   return brute_force_optimal(evaluate_all(mdp, options.cap), options);
}

OptimalityProfile brute_force_optimal(const std::vector<EvaluatedPolicy>& table,
                                      const Options& options)
{
   if (table.empty()) throw Error(ErrorKind::DomainError, "no policies to compare");
   OptimalityProfile profile;
   profile.g_star = table.front().eval.gain;
   for (const auto& entry : table) profile.g_star = profile.g_star.cwiseMax(entry.eval.gain);
   profile.gain_tolerance = scaled_tolerance(options.tie, profile.g_star);

   std::vector<const EvaluatedPolicy*> gain_optimal;
   for (const auto& entry : table) {
      if (dominates_within(entry.eval.gain, profile.g_star, profile.gain_tolerance))
         gain_optimal.push_back(&entry);
   }
   profile.h_star = gain_optimal.front()->eval.bias;
   for (const auto* entry : gain_optimal) profile.h_star = profile.h_star.cwiseMax(entry->eval.bias);
   profile.bias_tolerance = scaled_tolerance(options.tie, profile.h_star);

   for (const auto* entry : gain_optimal) {
      profile.gain_optimal_set.push_back(entry->policy);
      if (dominates_within(entry->eval.bias, profile.h_star, profile.bias_tolerance))
         profile.bias_optimal_set.push_back(entry->policy);
   }
   if (profile.bias_optimal_set.empty())
      throw Error(ErrorKind::NoUniformBiasOptimal,
                  "no gain-optimal policy attains the component-wise maximal bias; "
                  "the tie tolerance is likely too tight");
   return profile;
}

std::vector<bool> discounted_optimal_mask(const std::vector<InducedChain>& chains, double beta,
                                          double tol)
{
   std::vector<Eigen::VectorXd> values;
   values.reserve(chains.size());
   for (const auto& chain : chains) values.push_back(discounted_value(chain, beta));
   Eigen::VectorXd best = values.front();
   for (const auto& v : values) best = best.cwiseMax(v);
   const double abs_tol = scaled_tolerance(tol, best);
   std::vector<bool> mask(chains.size());
   for (std::size_t i = 0; i < values.size(); ++i)
      mask[i] = dominates_within(values[i], best, abs_tol);
   return mask;
}

std::vector<Policy> discounted_optimal_set(const MdpInstance& mdp, double beta, double tol,
                                           std::size_t cap)
{
   auto policies = enumerate_policies(mdp, cap);
   std::vector<InducedChain> chains;
   chains.reserve(policies.size());
   for (const auto& policy : policies) chains.push_back(induce(mdp, policy));
   const auto mask = discounted_optimal_mask(chains, beta, tol);
   std::vector<Policy> out;
   for (std::size_t i = 0; i < policies.size(); ++i)
      if (mask[i]) out.push_back(policies[i]);
   return out;
}

GapTable suboptimality_gaps(const MdpInstance& mdp, const OptimalityProfile& profile)
{
   GapTable table;
   table.delta.resize(mdp.num_states());
   for (std::size_t x = 0; x < mdp.num_states(); ++x) {
      const auto xi = static_cast<Index>(x);
      for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
         const double lookahead = mdp.transition[x][a].dot(profile.h_star);
         table.delta[x].push_back(profile.h_star[xi]
                                  - (mdp.reward[x][a] - profile.g_star[xi] + lookahead));
      }
   }
   return table;
}

LemmaReport verify_bellman_gap_lemma(const MdpInstance& mdp, const OptimalityProfile& profile,
                                     const Options& options)
{
   const auto table = evaluate_all(mdp, options.cap);
   return verify_bellman_gap_lemma(mdp, table, profile, is_ergodic_mdp(mdp, options.cap).ergodic);
}

LemmaReport verify_bellman_gap_lemma(const MdpInstance& mdp,
                                     const std::vector<EvaluatedPolicy>& table,
                                     const OptimalityProfile& profile, bool ergodic)
{
   const GapTable gaps = suboptimality_gaps(mdp, profile);
   const auto n = static_cast<Index>(mdp.num_states());
   LemmaReport report;
   report.equality_checked = ergodic;
   report.slack.resize(static_cast<Index>(table.size()), n);
   report.min_slack = std::numeric_limits<double>::infinity();

   for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& entry = table[i];
      report.policies.push_back(entry.policy);
      Eigen::VectorXd policy_gaps(n);
      for (Index y = 0; y < n; ++y)
         policy_gaps[y] = gaps.at(static_cast<std::size_t>(y),
                                  entry.policy.choice[static_cast<std::size_t>(y)]);
      const Eigen::VectorXd rhs = profile.g_star - entry.eval.limit * policy_gaps;
      const Eigen::VectorXd slack = rhs - entry.eval.gain;
      report.slack.row(static_cast<Index>(i)) = slack.transpose();

      for (Index x = 0; x < n; ++x) {
         report.min_slack = std::min(report.min_slack, slack[x]);
         if (ergodic)
            report.max_equality_error = std::max(report.max_equality_error, std::abs(slack[x]));
         const bool broken = slack[x] < -kLemmaTolerance
                             || (ergodic && std::abs(slack[x]) > kLemmaTolerance);
         if (broken) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "policy " << describe(entry.policy) << " at state '"
                << mdp.state_labels[static_cast<std::size_t>(x)] << "': slack " << slack[x]
                << (ergodic ? " (equality expected)" : "");
            throw Error(ErrorKind::LemmaViolation, msg.str());
         }
      }
   }
   return report;
}

Eigen::VectorXd optimal_gain_policy_iteration(const MdpInstance& mdp, const Options& options,
                                              bool assume_unichain)
{
   if (!assume_unichain && !is_unichain_mdp(mdp, options.cap))
      throw Error(ErrorKind::NotUnichain, "some policy has several recurrent classes");

   const std::size_t n = mdp.num_states();
   const std::size_t bound = std::min<std::size_t>(policy_count(mdp), 100'000'000);
   const std::size_t max_iterations = 10 * bound;
   constexpr double kImprovementTolerance = 1e-10;

   Policy policy{std::vector<std::size_t>(n, 0)};
   for (std::size_t x = 0; x < n; ++x) {
      const auto& rewards = mdp.reward[x];
      policy.choice[x] = static_cast<std::size_t>(
          std::max_element(rewards.begin(), rewards.end()) - rewards.begin());
   }

   for (std::size_t iteration = 0; iteration < max_iterations; ++iteration) {
      const PolicyEvaluation eval = evaluate(induce(mdp, policy));
      bool changed = false;
      for (std::size_t x = 0; x < n; ++x) {
         auto q = [&](std::size_t a) {
            return mdp.reward[x][a] + mdp.transition[x][a].dot(eval.bias);
         };
         std::size_t best = policy.choice[x];
         double best_value = q(best);
         const double incumbent = best_value;
         for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
            const double value = q(a);
            if (value > best_value) {
               best = a;
               best_value = value;
            }
         }
         if (best != policy.choice[x] && best_value > incumbent + kImprovementTolerance) {
            policy.choice[x] = best;
            changed = true;
         }
      }
      if (!changed) return eval.gain;
   }
   throw Error(ErrorKind::IterationLimitExceeded,
               "policy iteration did not stabilize within " + std::to_string(max_iterations)
                   + " iterations");
}

}  // namespace gainthresh
