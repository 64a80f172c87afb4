#include <doctest.h>

#include <functional>
#include <random>
#include <unordered_set>

#include "fixtures.h"
#include "test_util.h"
#include "gainthresh/error.h"
#include "gainthresh/mdp.h"
#include "gainthresh/toolkit.h"

using namespace gainthresh;

TEST_CASE("validate accepts well-formed instances")
{
   CHECK_NOTHROW(fixtures::self_loop(2.0));
   const auto fig = build_figure1(0.1, 0.5);
   CHECK(fig.num_states() == 3);
   CHECK_NOTHROW(validate(fig));
}

TEST_CASE("validate rejects broken instances")
{
   auto base = fixtures::two_state_ergodic();

   SUBCASE("row summing to 1.1")
   {
      auto m = base;
      m.transition[0][0] = Eigen::Vector2d(0.5, 0.6);
      CHECK(kind_of([&] { validate(m); }) == ErrorKind::RowSumError);
   }
   SUBCASE("negative probability")
   {
      auto m = base;
      m.transition[0][0] = Eigen::Vector2d(-0.5, 1.5);
      CHECK(kind_of([&] { validate(m); }) == ErrorKind::NegativeProbability);
   }
   SUBCASE("empty action set")
   {
      auto m = base;
      m.action_labels[1].clear();
      m.transition[1].clear();
      m.reward[1].clear();
      CHECK(kind_of([&] { validate(m); }) == ErrorKind::EmptyActionSet);
   }
   SUBCASE("duplicate labels")
   {
      auto m = base;
      m.state_labels[1] = "s0";
      CHECK(kind_of([&] { validate(m); }) == ErrorKind::DuplicateLabel);
      auto m2 = base;
      m2.action_labels[0][1] = "a0";
      CHECK(kind_of([&] { validate(m2); }) == ErrorKind::DuplicateLabel);
   }
   SUBCASE("row within 1e-9 of one is fine")
   {
      auto m = base;
      m.transition[0][0] = Eigen::Vector2d(0.0, 1.0 + 5e-10);
      CHECK_NOTHROW(validate(m));
   }
}

TEST_CASE("enumerate_policies")
{
   SUBCASE("single policy")
   {
      const auto p = enumerate_policies(fixtures::self_loop(1.0));
      REQUIRE(p.size() == 1);
      CHECK(p[0].choice == std::vector<std::size_t>{0});
   }
   SUBCASE("figure 1 has exactly two policies")
   {
      const auto p = enumerate_policies(build_figure1(0.1, 0.5));
      REQUIRE(p.size() == 2);
      CHECK(p[0].choice == std::vector<std::size_t>{0, 0, 0});
      CHECK(p[1].choice == std::vector<std::size_t>{1, 0, 0});
   }
   SUBCASE("3 states x 2 actions gives 8 distinct policies in lexicographic order")
   {
      const auto mdp = generate_random_mdp(3, 2, 5, 0.1);
      const auto p = enumerate_policies(mdp);
      REQUIRE(p.size() == 8);
      std::unordered_set<Policy, PolicyHash> seen(p.begin(), p.end());
      CHECK(seen.size() == 8);
      CHECK(std::is_sorted(p.begin(), p.end()));
   }
   SUBCASE("cap")
   {
      const auto mdp = generate_random_mdp(4, 3, 5, 0.1);
      CHECK(policy_count(mdp) == 81);
      CHECK(kind_of([&] { enumerate_policies(mdp, 80); }) == ErrorKind::EnumerationCapExceeded);
      CHECK(enumerate_policies(mdp, 81).size() == 81);
   }
}

TEST_CASE("enumeration covers the product for random action-set shapes")
{
   for (std::uint64_t seed = 0; seed < 30; ++seed) {
      std::mt19937_64 rng(seed);
      const std::size_t n = 1 + rng() % 4;
      std::vector<std::vector<fixtures::ActionSpec>> states(n);
      std::size_t product = 1;
      for (auto& actions : states) {
         const std::size_t k = 1 + rng() % 3;
         product *= k;
         for (std::size_t a = 0; a < k; ++a) {
            std::vector<double> row(n, 1.0 / static_cast<double>(n));
            actions.push_back({row, 0.0});
         }
      }
      const auto mdp = fixtures::make_mdp(states);
      const auto policies = enumerate_policies(mdp);
      std::unordered_set<Policy, PolicyHash> seen(policies.begin(), policies.end());
      CHECK(policies.size() == product);
      CHECK(seen.size() == product);
      for (const auto& p : policies) {
         const auto c = induce(mdp, p);
         CHECK((c.P.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
         CHECK(c.P.minCoeff() >= 0.0);
      }
   }
}

TEST_CASE("induce")
{
   SUBCASE("self loop")
   {
      const auto c = induce(fixtures::self_loop(3.5), Policy{{0}});
      CHECK(c.P(0, 0) == 1.0);
      CHECK(c.r[0] == 3.5);
   }
   SUBCASE("figure 1 left branch")
   {
      const double eg = 0.1, eh = 0.5;
      const auto c = induce(build_figure1(eg, eh), Policy{{1, 0, 0}});
      CHECK(c.P(0, 2) == 1.0);
      CHECK(c.P.row(0).sum() == 1.0);
      CHECK(c.r[0] == 1.0 + eh - eg);
   }
   SUBCASE("swap chain")
   {
      const auto c = induce(fixtures::swap(1.0, 0.0), Policy{{0, 0}});
      CHECK(c.P == (Eigen::Matrix2d() << 0, 1, 1, 0).finished());
      CHECK(c.r == Eigen::Vector2d(1.0, 0.0));
   }
   SUBCASE("invalid policy")
   {
      CHECK(kind_of([] { induce(fixtures::swap(), Policy{{0, 1}}); })
            == ErrorKind::InvalidPolicy);
      CHECK(kind_of([] { induce(fixtures::swap(), Policy{{0}}); }) == ErrorKind::InvalidPolicy);
   }
}

TEST_CASE("restrict_action keeps only the chosen action")
{
   const auto mdp = fixtures::two_state_ergodic();
   const auto restricted = restrict_action(mdp, 0, 1);
   CHECK(restricted.num_actions(0) == 1);
   CHECK(restricted.reward[0][0] == 0.5);
   CHECK(restricted.action_labels[0][0] == "a1");
   CHECK(policy_count(restricted) == 1);
}

TEST_CASE("reward span covers every state-action pair")
{
   CHECK(reward_span(fixtures::two_state_ergodic()) == 1.0);
   CHECK(reward_span(fixtures::self_loop(4.0)) == 0.0);
}
