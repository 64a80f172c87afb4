#ifndef GAINTHRESH_TESTS_FIXTURES_H
#define GAINTHRESH_TESTS_FIXTURES_H

#include <initializer_list>
#include <string>
#include <vector>

#include "gainthresh/mdp.h"

namespace fixtures {

struct ActionSpec {
   std::vector<double> row;
   double reward;
};

/// Instance from per-state action lists; labels are s<i> / a<j>.
inline gainthresh::MdpInstance make_mdp(const std::vector<std::vector<ActionSpec>>& states)
{
   gainthresh::MdpInstance mdp;
   for (std::size_t x = 0; x < states.size(); ++x) {
      mdp.state_labels.push_back("s" + std::to_string(x));
      mdp.action_labels.emplace_back();
      mdp.transition.emplace_back();
      mdp.reward.emplace_back();
      for (std::size_t a = 0; a < states[x].size(); ++a) {
         mdp.action_labels[x].push_back("a" + std::to_string(a));
         const auto& row = states[x][a].row;
         mdp.transition[x].push_back(Eigen::Map<const Eigen::VectorXd>(
             row.data(), static_cast<Eigen::Index>(row.size())));
         mdp.reward[x].push_back(states[x][a].reward);
      }
   }
   return gainthresh::validate(std::move(mdp));
}

inline gainthresh::MdpInstance self_loop(double reward)
{
   return make_mdp({{{{1.0}, reward}}});
}

/// State 0: action a -> s1 with reward 1, action b -> s1 with reward 0.5;
/// state 1 -> s0 with reward 0.
inline gainthresh::MdpInstance two_state_ergodic()
{
   return make_mdp({{{{0.0, 1.0}, 1.0}, {{0.0, 1.0}, 0.5}}, {{{1.0, 0.0}, 0.0}}});
}

/// Every action moves to the other state.
inline gainthresh::MdpInstance swap(double r0 = 1.0, double r1 = 0.0)
{
   return make_mdp({{{{0.0, 1.0}, r0}}, {{{1.0, 0.0}, r1}}});
}

inline gainthresh::InducedChain chain(std::initializer_list<std::initializer_list<double>> rows,
                                      std::initializer_list<double> rewards)
{
   const auto n = static_cast<Eigen::Index>(rows.size());
   gainthresh::InducedChain c{Eigen::MatrixXd(n, n), Eigen::VectorXd(n)};
   Eigen::Index i = 0;
   for (const auto& row : rows) {
      Eigen::Index j = 0;
      for (double v : row) c.P(i, j++) = v;
      ++i;
   }
   i = 0;
   for (double v : rewards) c.r[i++] = v;
   return c;
}

/// The seeded instance suite: seeds 1..count, 3 or 4 states, 2 or 3
/// actions, mixing 0.05.
struct SuiteEntry {
   std::uint64_t seed;
   std::size_t states;
   std::size_t actions;
};

inline std::vector<SuiteEntry> random_suite(std::size_t count)
{
   std::vector<SuiteEntry> out;
   for (std::uint64_t seed = 1; seed <= count; ++seed)
      out.push_back({seed, 3 + seed % 2, 2 + (seed / 2) % 2});
   return out;
}

inline constexpr double kSuiteMixing = 0.05;

}  // namespace fixtures

#endif  // GAINTHRESH_TESTS_FIXTURES_H
