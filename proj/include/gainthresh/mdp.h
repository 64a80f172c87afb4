#ifndef GAINTHRESH_MDP_H
#define GAINTHRESH_MDP_H

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gainthresh {

inline constexpr double kRowSumTolerance = 1e-9;
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Finite MDP with mean rewards. States and actions are dense indices;
/// labels only matter at the I/O boundary.
struct MdpInstance {
   std::vector<std::string> state_labels;
   std::vector<std::vector<std::string>> action_labels;    // [state][action]
   std::vector<std::vector<Eigen::VectorXd>> transition;   // [state][action] -> distribution
   std::vector<std::vector<double>> reward;                // [state][action] -> mean reward

   std::size_t num_states() const { return state_labels.size(); }
   std::size_t num_actions(std::size_t state) const { return action_labels[state].size(); }

   /// Looks up a state index by label, or returns num_states() when absent.
   std::size_t state_index(const std::string& label) const;
};

struct Policy {
   std::vector<std::size_t> choice;

   friend bool operator==(const Policy&, const Policy&) = default;
   friend auto operator<=>(const Policy&, const Policy&) = default;
};

struct PolicyHash {
   std::size_t operator()(const Policy& policy) const noexcept;
};

/// Markov reward process obtained by fixing a policy.
struct InducedChain {
   Eigen::MatrixXd P;
   Eigen::VectorXd r;
};

/// Checks every structural invariant and returns the instance unchanged.
MdpInstance validate(MdpInstance raw);

/// Product of action-set sizes, saturating at SIZE_MAX.
std::size_t policy_count(const MdpInstance& mdp);

/// All deterministic stationary policies in lexicographic order of the
/// choice vector (state 0 most significant).
std::vector<Policy> enumerate_policies(const MdpInstance& mdp,
                                       std::size_t cap = kDefaultEnumerationCap);

/// Throws InvalidPolicy unless `policy` picks a valid action at every state.
void check_policy(const MdpInstance& mdp, const Policy& policy);

InducedChain induce(const MdpInstance& mdp, const Policy& policy);

/// Copy of `mdp` where `state` keeps only `action`.
MdpInstance restrict_action(const MdpInstance& mdp, std::size_t state, std::size_t action);

/// Span of every mean reward over all state-action pairs.
double reward_span(const MdpInstance& mdp);

}  // namespace gainthresh

#endif  // GAINTHRESH_MDP_H
