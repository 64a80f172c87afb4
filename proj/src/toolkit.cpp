#include "gainthresh/toolkit.h"

#include <cmath>
#include <random>
#include <string>

#include "gainthresh/error.h"

namespace gainthresh {

namespace {

Eigen::VectorXd point_mass(Eigen::Index n, Eigen::Index at)
{
   Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
   v[at] = 1.0;
   return v;
}

double unit_draw(std::mt19937_64& engine)
{
   return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

MdpInstance build_figure1(double eps_g, double eps_h)
{
   if (!(eps_g > 0.0) || !(eps_h > 0.0) || !std::isfinite(eps_g) || !std::isfinite(eps_h))
      throw Error(ErrorKind::DomainError, "figure1 needs eps_g > 0 and eps_h > 0");
   MdpInstance mdp;
   mdp.state_labels = {"s0", "s1", "s2"};
   mdp.action_labels = {{"right", "left"}, {"stay"}, {"stay"}};
   mdp.transition = {{point_mass(3, 1), point_mass(3, 2)}, {point_mass(3, 1)}, {point_mass(3, 2)}};
   mdp.reward = {{1.0, 1.0 + eps_h - eps_g}, {1.0}, {1.0 - eps_g}};
   return validate(std::move(mdp));
}

MdpInstance generate_random_mdp(std::size_t n_states, std::size_t n_actions,
                                std::uint64_t seed, double mixing)
{
   if (n_states < 1 || n_actions < 1)
      throw Error(ErrorKind::DomainError, "generator needs at least one state and one action");
   if (!(mixing >= 0.0 && mixing < 1.0))
      throw Error(ErrorKind::DomainError, "mixing weight must lie in [0, 1)");

   std::mt19937_64 engine(seed);
   const auto n = static_cast<Eigen::Index>(n_states);
   MdpInstance mdp;
   for (std::size_t x = 0; x < n_states; ++x) {
      mdp.state_labels.push_back("s" + std::to_string(x));
      mdp.action_labels.emplace_back();
      mdp.transition.emplace_back();
      mdp.reward.emplace_back();
      for (std::size_t a = 0; a < n_actions; ++a) {
         mdp.action_labels[x].push_back("a" + std::to_string(a));
         Eigen::VectorXd row(n);
         for (Eigen::Index y = 0; y < n; ++y) row[y] = 1.0 - unit_draw(engine);
         row = (1.0 - mixing) * row / row.sum()
               + Eigen::VectorXd::Constant(n, mixing / static_cast<double>(n));
         mdp.transition[x].push_back(std::move(row));
         mdp.reward[x].push_back(unit_draw(engine));
      }
   }
   return validate(std::move(mdp));
}

}  // namespace gainthresh
