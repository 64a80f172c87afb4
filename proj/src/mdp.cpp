#include "gainthresh/mdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "gainthresh/error.h"

namespace gainthresh {

namespace {

void require_unique(const std::vector<std::string>& labels, const std::string& what)
{
   std::set<std::string> seen;
   for (const auto& label : labels) {
      if (!seen.insert(label).second)
         throw Error(ErrorKind::DuplicateLabel, "duplicate " + what + " label '" + label + "'");
   }
}

}  // namespace

std::size_t MdpInstance::state_index(const std::string& label) const
{
   for (std::size_t i = 0; i < state_labels.size(); ++i)
      if (state_labels[i] == label) return i;
   return state_labels.size();
}

std::size_t PolicyHash::operator()(const Policy& policy) const noexcept
{
   std::size_t h = 1469598103934665603ULL;
   for (auto c : policy.choice) {
      h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
   }
   return h;
}

MdpInstance validate(MdpInstance raw)
{
   const std::size_t n = raw.num_states();
   if (n == 0) throw Error(ErrorKind::DomainError, "instance has no states");
   require_unique(raw.state_labels, "state");
   if (raw.action_labels.size() != n || raw.transition.size() != n || raw.reward.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "per-state tables do not match the state count");

   for (std::size_t x = 0; x < n; ++x) {
      const auto& state = raw.state_labels[x];
      const std::size_t k = raw.action_labels[x].size();
      if (k == 0) throw Error(ErrorKind::EmptyActionSet, "state '" + state + "' has no actions");
      require_unique(raw.action_labels[x], "action (state '" + state + "')");
      if (raw.transition[x].size() != k || raw.reward[x].size() != k)
         throw Error(ErrorKind::DimensionMismatch,
                     "state '" + state + "' has mismatched action tables");
      for (std::size_t a = 0; a < k; ++a) {
         const auto& row = raw.transition[x][a];
         const std::string where = "(" + state + ", " + raw.action_labels[x][a] + ")";
         if (static_cast<std::size_t>(row.size()) != n)
            throw Error(ErrorKind::DimensionMismatch, "transition row " + where
                                                          + " has the wrong length");
         if (!std::isfinite(raw.reward[x][a]))
            throw Error(ErrorKind::DomainError, "reward " + where + " is not finite");
         for (Eigen::Index y = 0; y < row.size(); ++y) {
            if (!std::isfinite(row[y]))
               throw Error(ErrorKind::DomainError, "transition row " + where + " is not finite");
            if (row[y] < 0.0)
               throw Error(ErrorKind::NegativeProbability,
                           "transition row " + where + " has negative entry for '"
                               + raw.state_labels[static_cast<std::size_t>(y)] + "'");
         }
         const double sum = row.sum();
         if (std::abs(sum - 1.0) > kRowSumTolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "transition row " << where << " sums to " << sum;
            throw Error(ErrorKind::RowSumError, msg.str());
         }
      }
   }
   return raw;
}

std::size_t policy_count(const MdpInstance& mdp)
{
   std::size_t count = 1;
   for (std::size_t x = 0; x < mdp.num_states(); ++x) {
      const std::size_t k = mdp.num_actions(x);
      if (k != 0 && count > std::numeric_limits<std::size_t>::max() / k)
         return std::numeric_limits<std::size_t>::max();
      count *= k;
   }
   return count;
}

std::vector<Policy> enumerate_policies(const MdpInstance& mdp, std::size_t cap)
{
   const std::size_t count = policy_count(mdp);
   if (count > cap)
      throw Error(ErrorKind::EnumerationCapExceeded,
                  "instance has " + std::to_string(count) + " policies (cap "
                      + std::to_string(cap) + ")");

   const std::size_t n = mdp.num_states();
   std::vector<Policy> out;
   out.reserve(count);
   Policy current{std::vector<std::size_t>(n, 0)};
   for (std::size_t i = 0; i < count; ++i) {
      out.push_back(current);
      // odometer increment, last state least significant
      for (std::size_t x = n; x-- > 0;) {
         if (++current.choice[x] < mdp.num_actions(x)) break;
         current.choice[x] = 0;
      }
   }
   return out;
}

void check_policy(const MdpInstance& mdp, const Policy& policy)
{
   if (policy.choice.size() != mdp.num_states())
      throw Error(ErrorKind::InvalidPolicy, "policy length differs from the state count");
   for (std::size_t x = 0; x < mdp.num_states(); ++x) {
      if (policy.choice[x] >= mdp.num_actions(x))
         throw Error(ErrorKind::InvalidPolicy, "action index " + std::to_string(policy.choice[x])
                                                   + " out of range at state '"
                                                   + mdp.state_labels[x] + "'");
   }
}

InducedChain induce(const MdpInstance& mdp, const Policy& policy)
{
   check_policy(mdp, policy);
   const auto n = static_cast<Eigen::Index>(mdp.num_states());
   InducedChain chain{Eigen::MatrixXd(n, n), Eigen::VectorXd(n)};
   for (std::size_t x = 0; x < mdp.num_states(); ++x) {
      const std::size_t a = policy.choice[x];
      const auto row = static_cast<Eigen::Index>(x);
      chain.P.row(row) = mdp.transition[x][a].transpose();
      chain.r[row] = mdp.reward[x][a];
   }
   return chain;
}

MdpInstance restrict_action(const MdpInstance& mdp, std::size_t state, std::size_t action)
{
   if (state >= mdp.num_states() || action >= mdp.num_actions(state))
      throw Error(ErrorKind::InvalidPolicy, "restriction to a nonexistent state-action pair");
   MdpInstance copy = mdp;
   copy.action_labels[state] = {mdp.action_labels[state][action]};
   copy.transition[state] = {mdp.transition[state][action]};
   copy.reward[state] = {mdp.reward[state][action]};
   return copy;
}

double reward_span(const MdpInstance& mdp)
{
   double lo = std::numeric_limits<double>::infinity();
   double hi = -lo;
   for (const auto& row : mdp.reward) {
      for (double r : row) {
         lo = std::min(lo, r);
         hi = std::max(hi, r);
      }
   }
   return hi - lo;
}

}  // namespace gainthresh
