#include <doctest.h>

#include "fixtures.h"
#include "gainthresh/chain.h"
#include "gainthresh/optimality.h"
#include "gainthresh/toolkit.h"
#include "test_util.h"

using namespace gainthresh;

namespace {

const Policy kRight{{0, 0, 0}};
const Policy kLeft{{1, 0, 0}};
const Policy kA{{0, 0}};
const Policy kB{{1, 0}};

}  // namespace

TEST_CASE("brute_force_optimal")
{
   SUBCASE("single policy is gain- and bias-optimal")
   {
      const auto p = brute_force_optimal(fixtures::self_loop(0.7));
      CHECK(p.gain_optimal_set.size() == 1);
      CHECK(p.bias_optimal_set.size() == 1);
      CHECK(p.g_star[0] == doctest::Approx(0.7));
   }
   SUBCASE("figure 1: only the right branch is gain-optimal")
   {
      const double eg = 0.1;
      const auto p = brute_force_optimal(build_figure1(eg, 0.5));
      CHECK(p.gain_optimal_set == std::vector<Policy>{kRight});
      CHECK(p.bias_optimal_set == std::vector<Policy>{kRight});
      CHECK(p.g_star[0] == doctest::Approx(1.0));
      CHECK(p.g_star[1] == doctest::Approx(1.0));
      CHECK(p.g_star[2] == doctest::Approx(1.0 - eg));
      CHECK(p.h_star.cwiseAbs().maxCoeff() <= 1e-12);
   }
   SUBCASE("two-state ergodic fixture")
   {
      const auto p = brute_force_optimal(fixtures::two_state_ergodic());
      CHECK(p.g_star[0] == doctest::Approx(0.5));
      CHECK(p.g_star[1] == doctest::Approx(0.5));
      CHECK(p.gain_optimal_set == std::vector<Policy>{kA});
      CHECK(p.h_star[0] == doctest::Approx(0.25));
      CHECK(p.h_star[1] == doctest::Approx(-0.25));
   }
   SUBCASE("duplicate actions tie")
   {
      const auto mdp = fixtures::make_mdp({{{{0.0, 1.0}, 1.0}, {{0.0, 1.0}, 1.0}},
                                           {{{1.0, 0.0}, 0.0}}});
      const auto p = brute_force_optimal(mdp);
      CHECK(p.gain_optimal_set.size() == 2);
      CHECK(p.bias_optimal_set.size() == 2);
   }
}

TEST_CASE("discounted_optimal_set")
{
   CHECK(discounted_optimal_set(fixtures::self_loop(1.0), 0.3).size() == 1);
   const auto fig = build_figure1(0.1, 0.5);
   CHECK(discounted_optimal_set(fig, 0.9) == std::vector<Policy>{kRight});
   // (1 - beta)^-1 = 2 < 0.9 / (1 - beta) + 0.5 = 2.3 at beta = 0.5
   CHECK(discounted_optimal_set(fig, 0.5) == std::vector<Policy>{kLeft});
   // both at the crossing point 0.8
   CHECK(discounted_optimal_set(fig, 0.8).size() == 2);
   CHECK(kind_of([&] { discounted_optimal_set(fig, 1.0); }) == ErrorKind::DomainError);
}

TEST_CASE("suboptimality_gaps")
{
   const auto mdp = fixtures::two_state_ergodic();
   const auto gaps = suboptimality_gaps(mdp, brute_force_optimal(mdp));
   CHECK(gaps.at(0, 0) == doctest::Approx(0.0));
   CHECK(gaps.at(0, 1) == doctest::Approx(0.5));
   CHECK(std::abs(gaps.at(1, 0)) <= 1e-12);
}

TEST_CASE("verify_bellman_gap_lemma")
{
   SUBCASE("two-state fixture: equality, with mu = (0.5, 0.5) for policy b")
   {
      const auto mdp = fixtures::two_state_ergodic();
      const auto report = verify_bellman_gap_lemma(mdp, brute_force_optimal(mdp));
      CHECK(report.equality_checked);
      CHECK(report.max_equality_error <= 1e-8);
      REQUIRE(report.policies[1] == kB);
      // g^b(0) = 0.25 = 0.5 - 0.5 * 0.5
      CHECK(std::abs(report.slack(1, 0)) <= 1e-12);
   }
   SUBCASE("figure 1: inequality only")
   {
      const auto mdp = build_figure1(0.1, 0.5);
      const auto report = verify_bellman_gap_lemma(mdp, brute_force_optimal(mdp));
      CHECK_FALSE(report.equality_checked);
      CHECK(report.min_slack >= -1e-8);
   }
   SUBCASE("a corrupted profile is caught")
   {
      const auto mdp = fixtures::two_state_ergodic();
      auto profile = brute_force_optimal(mdp);
      profile.g_star[0] -= 0.1;
      CHECK(kind_of([&] { verify_bellman_gap_lemma(mdp, profile); })
            == ErrorKind::LemmaViolation);
   }
}

TEST_CASE("optimal_gain_policy_iteration")
{
   CHECK(optimal_gain_policy_iteration(fixtures::self_loop(0.3))[0] == doctest::Approx(0.3));
   CHECK(optimal_gain_policy_iteration(fixtures::two_state_ergodic())[0] == doctest::Approx(0.5));
   CHECK(kind_of([] { optimal_gain_policy_iteration(build_figure1(0.1, 0.5)); })
         == ErrorKind::NotUnichain);

   const auto mdp = generate_random_mdp(4, 3, 11, 0.05);
   const auto g = optimal_gain_policy_iteration(mdp);
   CHECK((g - brute_force_optimal(mdp).g_star).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("optimality properties over the seeded suite")
{
   for (const auto& e : fixtures::random_suite(60)) {
      const auto mdp = generate_random_mdp(e.states, e.actions, e.seed, fixtures::kSuiteMixing);
      CAPTURE(e.seed);
      const auto table = evaluate_all(mdp, kDefaultEnumerationCap);
      const auto profile = brute_force_optimal(table);
      REQUIRE(is_ergodic_mdp(mdp).ergodic);

      CHECK_FALSE(profile.bias_optimal_set.empty());
      for (const auto& p : profile.bias_optimal_set) CHECK(profile.is_gain_optimal(p));
      for (const auto& entry : table) {
         if (!profile.is_gain_optimal(entry.policy)) continue;
         CHECK((profile.g_star - entry.eval.gain).maxCoeff() <= profile.gain_tolerance);
      }

      const auto gaps = suboptimality_gaps(mdp, profile);
      for (const auto& row : gaps.delta)
         for (double d : row) CHECK(d >= -1e-9);
      for (const auto& p : profile.bias_optimal_set)
         for (std::size_t x = 0; x < mdp.num_states(); ++x)
            CHECK(gaps.at(x, p.choice[x]) <= 1e-9);

      // gain-suboptimal exactly when some action has a positive gap
      for (const auto& entry : table) {
         bool uses_bad_action = false;
         for (std::size_t x = 0; x < mdp.num_states(); ++x)
            uses_bad_action = uses_bad_action || gaps.at(x, entry.policy.choice[x]) > 1e-9;
         CHECK(uses_bad_action == !profile.is_gain_optimal(entry.policy));
      }

      const auto g = optimal_gain_policy_iteration(mdp);
      CHECK((g - profile.g_star).cwiseAbs().maxCoeff() <= 1e-9);
      CHECK_NOTHROW(verify_bellman_gap_lemma(mdp, table, profile, true));
   }
}
