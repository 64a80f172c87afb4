#include "gainthresh/cli.h"

#include <chrono>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gainthresh/chain.h"
#include "gainthresh/checks.h"
#include "gainthresh/error.h"
#include "gainthresh/io.h"
#include "gainthresh/optimality.h"
#include "gainthresh/thresholds.h"
#include "gainthresh/toolkit.h"

namespace gainthresh {

namespace {

Json vector_json(const Eigen::VectorXd& v)
{
   Json out = Json::array();
   for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
   return out;
}

Json policy_json(const MdpInstance& mdp, const Policy& policy)
{
   Json out = Json::object();
   for (std::size_t x = 0; x < mdp.num_states(); ++x)
      out[mdp.state_labels[x]] = mdp.action_labels[x][policy.choice[x]];
   return out;
}

Json policy_set_json(const MdpInstance& mdp, const std::vector<Policy>& set)
{
   Json out = Json::array();
   for (const auto& p : set) out.push_back(policy_json(mdp, p));
   return out;
}

/// Every ThresholdReport field, null until computed.
Json empty_threshold_report()
{
   Json r = Json::object();
   r["theorem1_bound"] = nullptr;
   r["theorem1_empty_infimum"] = nullptr;
   r["theorem1_unrestricted"] = nullptr;
   r["theorem1_zero_denominator_pairs"] = nullptr;
   r["theorem2_bound"] = nullptr;
   r["theorem2_degenerate"] = nullptr;
   r["delta_g"] = nullptr;
   r["worst_diameter"] = nullptr;
   r["reward_span"] = nullptr;
   r["oracle_estimate"] = nullptr;
   r["oracle_bracket"] = nullptr;
   r["oracle_grid_resolution"] = nullptr;
   r["oracle_witness"] = nullptr;
   r["witnesses"] = Json::array();
   return r;
}

void fill_theorem1(Json& r, const MdpInstance& mdp, const Theorem1Result& t)
{
   r["theorem1_bound"] = t.bound;
   r["theorem1_empty_infimum"] = t.empty_infimum;
   r["theorem1_unrestricted"] = t.unrestricted;
   r["theorem1_zero_denominator_pairs"] = t.zero_denominator_pairs;
   Json witnesses = Json::array();
   for (const auto& w : t.witnesses) {
      Json item = Json::object();
      item["state"] = mdp.state_labels[w.state];
      item["policy"] = policy_json(mdp, w.policy);
      item["gain_deficit"] = w.gain_deficit;
      item["span_sum"] = w.span_sum;
      item["ratio"] = w.ratio;
      witnesses.push_back(std::move(item));
   }
   r["witnesses"] = std::move(witnesses);
}

void fill_theorem2(Json& r, const ErgodicBoundResult& t)
{
   r["theorem2_bound"] = t.bound;
   r["theorem2_degenerate"] = t.degenerate || t.unrestricted;
   r["delta_g"] = t.delta_g ? Json(*t.delta_g) : Json(nullptr);
   r["worst_diameter"] = t.worst_diameter;
   r["reward_span"] = t.reward_span;
}

void fill_oracle(Json& r, const MdpInstance& mdp, const OracleResult& o)
{
   r["oracle_estimate"] = o.estimate;
   r["oracle_bracket"] = Json::array({o.lower, o.upper});
   r["oracle_grid_resolution"] = o.grid_resolution;
   r["oracle_witness"] = o.witness ? policy_json(mdp, *o.witness) : Json(nullptr);
}

Json policy_table_json(const MdpInstance& mdp, const std::vector<EvaluatedPolicy>& table,
                       const OptimalityProfile& profile)
{
   Json rows = Json::array();
   for (const auto& entry : table) {
      Json row = Json::object();
      row["policy"] = policy_json(mdp, entry.policy);
      row["gain"] = vector_json(entry.eval.gain);
      row["bias"] = vector_json(entry.eval.bias);
      row["span_bias"] = entry.eval.span_bias;
      row["poisson_residual"] = entry.eval.poisson_residual;
      row["normalization_residual"] = entry.eval.normalization_residual;
      row["gain_optimal"] = profile.is_gain_optimal(entry.policy);
      rows.push_back(std::move(row));
   }
   return rows;
}

struct Common {
   double tie = 1e-9;
   std::size_t cap = kDefaultEnumerationCap;
   bool policies = false;
   std::string input;
   std::string output;
   int theorem = 1;
   std::size_t grid = 2000;
   double tol = 1e-7;
   std::size_t states = 0;
   std::size_t actions = 0;
   std::uint64_t seed = 0;
   double mixing = 0.0;
   std::string fixture;
   double eps_g = 0.1;
   double eps_h = 0.5;

   Options options() const { return {tie, cap}; }
   OracleSettings oracle() const { return {grid, tol, tie}; }
};

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
   if (path.empty()) {
      out << text;
      return;
   }
   std::ofstream file(path, std::ios::binary);
   if (!file) throw Error(ErrorKind::DomainError, "cannot write '" + path + "'");
   file << text;
}

/// Builds the ReportFile envelope around a command-specific body.
int run_report(const std::string& command, const Common& c, std::ostream& out)
{
   const auto start = std::chrono::steady_clock::now();
   const MdpInstance mdp = load_mdp(c.input);
   const Options options = c.options();

   Json doc = Json::object();
   doc["command"] = command;
   Json instance = Json::object();
   instance["path"] = c.input;
   instance["digest"] = instance_digest(mdp);
   instance["states"] = mdp.num_states();
   instance["policies"] = policy_count(mdp);
   doc["instance"] = std::move(instance);
   Json tolerances = Json::object();
   tolerances["tie"] = c.tie;
   tolerances["cap"] = c.cap;
   tolerances["grid_points"] = c.grid;
   tolerances["refine_tol"] = c.tol;
   doc["tolerances"] = std::move(tolerances);
   Json report = empty_threshold_report();
   int exit_code = kExitOk;

   std::optional<std::vector<EvaluatedPolicy>> table;
   std::optional<OptimalityProfile> profile;
   auto need_table = [&] {
      if (!table) {
         table = evaluate_all(mdp, options.cap);
         profile = brute_force_optimal(*table, options);
      }
   };

   if (command == "analyze") {
      need_table();
      doc["g_star"] = vector_json(profile->g_star);
      doc["h_star"] = vector_json(profile->h_star);
      doc["gain_optimal_set"] = policy_set_json(mdp, profile->gain_optimal_set);
      doc["bias_optimal_set"] = policy_set_json(mdp, profile->bias_optimal_set);
      doc["ergodic"] = is_ergodic_mdp(mdp, options.cap).ergodic;
   } else if (command == "bound") {
      if (c.theorem == 1) {
         need_table();
         fill_theorem1(report, mdp, theorem1_bound(*table, *profile));
      } else {
         fill_theorem2(report, ergodic_bound(mdp, options));
      }
   } else if (command == "oracle") {
      need_table();
      fill_oracle(report, mdp, true_threshold_oracle(*table, *profile, c.oracle()));
   } else if (command == "deltag") {
      report["delta_g"] = delta_g_algorithm1(mdp, options);
   } else if (command == "diameter") {
      report["worst_diameter"] = worst_diameter_algorithm2(mdp, options);
   } else if (command == "check") {
      const auto suite = run_invariant_suite(mdp, options, c.oracle());
      fill_theorem1(report, mdp, suite.theorem1);
      fill_oracle(report, mdp, suite.oracle);
      if (suite.theorem2) fill_theorem2(report, *suite.theorem2);
      if (suite.gain_gap) report["delta_g"] = *suite.gain_gap;
      Json checks = Json::array();
      for (const auto& check : suite.checks) {
         Json item = Json::object();
         item["name"] = check.name;
         item["passed"] = check.passed;
         item["worst"] = check.worst;
         item["detail"] = check.detail;
         checks.push_back(std::move(item));
      }
      doc["ergodic"] = suite.ergodic;
      doc["checks"] = std::move(checks);
      doc["passed"] = suite.all_passed();
      if (!suite.all_passed()) exit_code = kExitCheckFailed;
   }

   doc["report"] = std::move(report);
   if (c.policies || command == "analyze") {
      need_table();
      doc["policies"] = policy_table_json(mdp, *table, *profile);
   }
   const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
   Json timing = Json::object();
   timing["seconds"] = elapsed.count();
   doc["timing"] = std::move(timing);
   emit(dump_json(doc) + "\n", c.output, out);
   return exit_code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
   CLI::App app{"Discount-factor thresholds for gain optimality in finite MDPs", "gainthresh"};
   app.require_subcommand(1);
   Common c;
   app.add_option("--tie-tol", c.tie, "Relative tie tolerance for optimal-set membership")
       ->check(CLI::PositiveNumber);
   app.add_option("--cap", c.cap, "Maximum number of enumerated policies")
       ->check(CLI::PositiveNumber);

   auto with_input = [&](CLI::App* sub) {
      sub->add_option("file", c.input, "Instance JSON file")->required()->check(CLI::ExistingFile);
      sub->add_option("-o,--output", c.output, "Write the report here instead of stdout");
      sub->add_flag("--policies", c.policies, "Include the per-policy evaluation table");
      return sub;
   };
   with_input(app.add_subcommand("analyze", "Per-policy gain/bias table and optimal sets"));
   with_input(app.add_subcommand("bound", "Threshold upper bound"))
       ->add_option("--theorem", c.theorem, "1: policy-enumeration bound, 2: ergodic bound")
       ->check(CLI::IsMember({1, 2}));
   auto* oracle = with_input(app.add_subcommand("oracle", "Brute-force threshold estimate"));
   oracle->add_option("--grid", c.grid, "Number of grid points (>= 100)")
       ->check(CLI::Range(std::size_t{100}, std::size_t{100'000'000}));
   oracle->add_option("--tol", c.tol, "Bisection width")->check(CLI::PositiveNumber);
   with_input(app.add_subcommand("deltag", "Gain gap from restricted copies"));
   with_input(app.add_subcommand("diameter", "Worst diameter from absorbing copies"));
   auto* check = with_input(app.add_subcommand("check", "Run the full invariant suite"));
   check->add_option("--grid", c.grid, "Oracle grid points (>= 100)")
       ->check(CLI::Range(std::size_t{100}, std::size_t{100'000'000}));
   check->add_option("--tol", c.tol, "Oracle bisection width")->check(CLI::PositiveNumber);

   auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
   gen->add_option("--states", c.states, "Number of states")->required()->check(CLI::PositiveNumber);
   gen->add_option("--actions", c.actions, "Actions per state")->required()->check(CLI::PositiveNumber);
   gen->add_option("--seed", c.seed, "Generator seed")->required();
   gen->add_option("--mixing", c.mixing, "Uniform mixing weight in [0, 1)");
   gen->add_option("-o,--output", c.output, "Write the instance here instead of stdout");

   auto* fixture = app.add_subcommand("fixture", "Write a built-in instance");
   fixture->add_option("name", c.fixture, "Fixture name")->required()->check(CLI::IsMember({"figure1"}));
   fixture->add_option("--eg", c.eps_g, "Gain deficit of the left branch (> 0)");
   fixture->add_option("--eh", c.eps_h, "Bias bonus of the left branch (> 0)");
   fixture->add_option("-o,--output", c.output, "Write the instance here instead of stdout");

   try {
      app.parse(argc, argv);
   } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
   } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
   } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return kExitUsage;
   }

   try {
      if (gen->parsed()) {
         emit(serialize_mdp(generate_random_mdp(c.states, c.actions, c.seed, c.mixing)), c.output,
              out);
         return kExitOk;
      }
      if (fixture->parsed()) {
         emit(serialize_mdp(build_figure1(c.eps_g, c.eps_h)), c.output, out);
         return kExitOk;
      }
      const std::string command = app.get_subcommands().front()->get_name();
      return run_report(command, c, out);
   } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return is_assertion_failure(e.kind()) ? kExitCheckFailed : kExitDomainError;
   } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitDomainError;
   }
}

}  // namespace gainthresh
