#include <doctest.h>

#include <algorithm>

#include "fixtures.h"
#include "gainthresh/chain.h"
#include "gainthresh/toolkit.h"
#include "oracles.h"
#include "test_util.h"

using namespace gainthresh;

TEST_CASE("chain_structure")
{
   SUBCASE("identity: two singleton classes")
   {
      const auto s = chain_structure(Eigen::Matrix2d::Identity());
      REQUIRE(s.recurrent_classes.size() == 2);
      CHECK(s.recurrent_classes[0] == std::vector<std::size_t>{0});
      CHECK(s.recurrent_classes[1] == std::vector<std::size_t>{1});
      CHECK(s.transient_states.empty());
   }
   SUBCASE("figure 1 under the left branch")
   {
      const auto c = induce(build_figure1(0.1, 0.5), Policy{{1, 0, 0}});
      const auto s = chain_structure(c.P);
      REQUIRE(s.recurrent_classes.size() == 2);
      CHECK(s.recurrent_classes[0] == std::vector<std::size_t>{1});
      CHECK(s.recurrent_classes[1] == std::vector<std::size_t>{2});
      CHECK(s.transient_states == std::vector<std::size_t>{0});
      CHECK(s.absorption(0, 0) == doctest::Approx(0.0));
      CHECK(s.absorption(0, 1) == doctest::Approx(1.0));
   }
   SUBCASE("leaky state drains into an absorbing one")
   {
      const auto s = chain_structure((Eigen::Matrix2d() << 0.9, 0.1, 0.0, 1.0).finished());
      REQUIRE(s.recurrent_classes.size() == 1);
      CHECK(s.recurrent_classes[0] == std::vector<std::size_t>{1});
      CHECK(s.transient_states == std::vector<std::size_t>{0});
      CHECK(s.absorption(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
   }
   SUBCASE("numerically zero entries are not edges")
   {
      const auto s = chain_structure((Eigen::Matrix2d() << 1.0 - 1e-14, 1e-14, 0.0, 1.0).finished());
      CHECK(s.recurrent_classes.size() == 2);
   }
}

TEST_CASE("stationary_distribution")
{
   CHECK(stationary_distribution(Eigen::MatrixXd::Ones(1, 1), {0})[0] == doctest::Approx(1.0));
   const Eigen::MatrixXd half = Eigen::MatrixXd::Constant(2, 2, 0.5);
   const auto mu = stationary_distribution(half, {0, 1});
   CHECK(mu[0] == doctest::Approx(0.5));
   CHECK(mu[1] == doctest::Approx(0.5));
   const auto swap = (Eigen::Matrix2d() << 0, 1, 1, 0).finished();
   const auto mu2 = stationary_distribution(swap, {0, 1});
   CHECK(mu2[0] == doctest::Approx(0.5));
   CHECK(mu2[1] == doctest::Approx(0.5));

   // state 0 leaks out of {0}: not a closed class
   const auto leaky = (Eigen::Matrix2d() << 0.9, 0.1, 0.0, 1.0).finished();
   CHECK(kind_of([&] { stationary_distribution(leaky, {0}); }) == ErrorKind::SingularSystem);
}

TEST_CASE("cesaro_limit")
{
   SUBCASE("identity")
   {
      CHECK(cesaro_limit(Eigen::Matrix3d::Identity()).isApprox(Eigen::Matrix3d::Identity()));
   }
   SUBCASE("periodic swap averages to one half")
   {
      const auto L = cesaro_limit((Eigen::Matrix2d() << 0, 1, 1, 0).finished());
      CHECK((L.array() - 0.5).abs().maxCoeff() <= 1e-12);
   }
   SUBCASE("figure 1 left branch: state 0 row is the indicator of state 2")
   {
      const auto c = induce(build_figure1(0.1, 0.5), Policy{{1, 0, 0}});
      const auto L = cesaro_limit(c.P);
      CHECK(L(0, 0) == doctest::Approx(0.0));
      CHECK(L(0, 1) == doctest::Approx(0.0));
      CHECK(L(0, 2) == doctest::Approx(1.0));
   }
}

TEST_CASE("cesaro_limit agrees with the explicit power average, T = 1e5")
{
   // Induced chains of generated instances (all entries positive), up to 6
   // states. The plain average carries an O(1/T) bias of (I - P^T) H / T, so
   // at T = 1e5 agreement is checked at 10 / T; the 1e-6 agreement is checked
   // against the T = 2^30 average below.
   for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const std::size_t n = 2 + seed % 5;
      const auto mdp = generate_random_mdp(n, 1, seed, 0.05);
      const Eigen::MatrixXd P = induce(mdp, Policy{std::vector<std::size_t>(n, 0)}).P;
      CAPTURE(seed);
      CHECK((cesaro_limit(P) - oracles::power_average(P, 100000)).cwiseAbs().maxCoeff() <= 1e-4);
      CHECK((cesaro_limit(P) - oracles::power_average_doubling(P, 30)).cwiseAbs().maxCoeff()
            <= 1e-6);
   }
}

TEST_CASE("cesaro_limit on sparse chains with periodic and transient parts")
{
   // Reference average at T = 2^30 via doubling; each squaring doubles the
   // rounding error of P^T, so more doublings lose accuracy.
   for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
      const Eigen::MatrixXd P = oracles::random_stochastic(n, seed, 0.6);
      const auto structure = chain_structure(P);
      const Eigen::MatrixXd L = cesaro_limit(P, structure);
      CAPTURE(seed);
      CHECK((L - oracles::power_average_doubling(P, 30)).cwiseAbs().maxCoeff() <= 1e-6);

      CHECK((L.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
      CHECK((L * P - L).cwiseAbs().maxCoeff() <= 1e-8);
      CHECK((P * L - L).cwiseAbs().maxCoeff() <= 1e-8);
      CHECK((L * L - L).cwiseAbs().maxCoeff() <= 1e-8);

      for (const auto& cls : structure.recurrent_classes)
         for (auto v : cls)
            CHECK((L.row(static_cast<Eigen::Index>(v))
                   - L.row(static_cast<Eigen::Index>(cls.front())))
                      .cwiseAbs()
                      .maxCoeff()
                  <= 1e-10);

      std::vector<int> seen(static_cast<std::size_t>(n), 0);
      for (const auto& cls : structure.recurrent_classes)
         for (auto v : cls) ++seen[v];
      for (auto v : structure.transient_states) ++seen[v];
      CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
      if (structure.absorption.size())
         CHECK((structure.absorption.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
   }
}

TEST_CASE("is_ergodic_mdp")
{
   CHECK(is_ergodic_mdp(fixtures::self_loop(1.0)).ergodic);
   CHECK(is_ergodic_mdp(fixtures::swap()).ergodic);
   CHECK(is_ergodic_mdp(fixtures::two_state_ergodic()).ergodic);

   const auto fig = is_ergodic_mdp(build_figure1(0.1, 0.5));
   CHECK_FALSE(fig.ergodic);
   REQUIRE(fig.witness.has_value());
   CHECK(fig.witness_structure->recurrent_classes.size() == 2);

   CHECK(is_ergodic_mdp(generate_random_mdp(4, 3, 7, 0.05)).ergodic);
   CHECK(kind_of([] { is_ergodic_mdp(generate_random_mdp(4, 3, 7, 0.05), 10); })
         == ErrorKind::EnumerationCapExceeded);
}

TEST_CASE("is_unichain_mdp")
{
   // transient state feeding a single absorbing state
   const auto mdp = fixtures::make_mdp({{{{0.5, 0.5}, 0.0}}, {{{0.0, 1.0}, 1.0}}});
   CHECK(is_unichain_mdp(mdp));
   CHECK_FALSE(is_ergodic_mdp(mdp).ergodic);
   CHECK_FALSE(is_unichain_mdp(build_figure1(0.1, 0.5)));
}
