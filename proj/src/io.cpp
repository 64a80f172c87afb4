#include "gainthresh/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "gainthresh/error.h"

namespace gainthresh {

namespace {

std::string position_of(std::string_view text, std::size_t byte)
{
   std::size_t line = 1;
   std::size_t column = 1;
   for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
         ++line;
         column = 1;
      } else {
         ++column;
      }
   }
   return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void schema_error(const std::string& message)
{
   throw Error(ErrorKind::ParseError, message);
}

const Json& member(const Json& object, const char* key, Json::value_t type)
{
   auto it = object.find(key);
   if (it == object.end()) schema_error(std::string("missing member \"") + key + "\"");
   if (it->type() != type) schema_error(std::string("member \"") + key + "\" has the wrong type");
   return *it;
}

double number(const Json& value, const std::string& where)
{
   if (!value.is_number()) schema_error(where + " is not a number");
   return value.get<double>();
}

void write_json(std::ostream& out, const Json& value, int indent, int depth)
{
   const auto newline = [&](int d) {
      if (indent < 0) return;
      out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
   };
   switch (value.type()) {
      case Json::value_t::object: {
         if (value.empty()) {
            out << "{}";
            return;
         }
         out << '{';
         bool first = true;
         for (auto it = value.begin(); it != value.end(); ++it) {
            if (!first) out << ',';
            first = false;
            newline(depth + 1);
            out << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
            write_json(out, it.value(), indent, depth + 1);
         }
         newline(depth);
         out << '}';
         return;
      }
      case Json::value_t::array: {
         if (value.empty()) {
            out << "[]";
            return;
         }
         out << '[';
         bool first = true;
         for (const auto& item : value) {
            if (!first) out << ',';
            first = false;
            newline(depth + 1);
            write_json(out, item, indent, depth + 1);
         }
         newline(depth);
         out << ']';
         return;
      }
      case Json::value_t::number_float: {
         const double v = value.get<double>();
         if (!std::isfinite(v)) {
            out << "null";
            return;
         }
         char buffer[40];
         std::snprintf(buffer, sizeof buffer, "%.17g", v);
         std::string text(buffer);
         if (text.find_first_of(".eE") == std::string::npos) text += ".0";
         out << text;
         return;
      }
      default:
         out << value.dump();
   }
}

}  // namespace

MdpInstance parse_mdp(std::string_view text)
{
   Json doc;
   try {
      doc = Json::parse(text.begin(), text.end());
   } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError,
                  "malformed JSON at " + position_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": "
                      + e.what());
   }
   if (!doc.is_object()) schema_error("instance document must be a JSON object");

   MdpInstance mdp;
   for (const auto& s : member(doc, "states", Json::value_t::array)) {
      if (!s.is_string()) schema_error("\"states\" entries must be strings");
      mdp.state_labels.push_back(s.get<std::string>());
   }
   const auto& actions = member(doc, "actions", Json::value_t::object);
   const auto& transitions = member(doc, "transitions", Json::value_t::object);
   const auto& rewards = member(doc, "rewards", Json::value_t::object);

   const std::size_t n = mdp.num_states();
   auto require_known = [&](const Json& object, const char* what) {
      for (auto it = object.begin(); it != object.end(); ++it)
         if (mdp.state_index(it.key()) == n)
            schema_error(std::string("\"") + what + "\" names unknown state '" + it.key() + "'");
   };
   require_known(actions, "actions");
   require_known(transitions, "transitions");
   require_known(rewards, "rewards");

   mdp.action_labels.resize(n);
   mdp.transition.resize(n);
   mdp.reward.resize(n);
   for (std::size_t x = 0; x < n; ++x) {
      const auto& state = mdp.state_labels[x];
      if (auto it = actions.find(state); it != actions.end()) {
         if (!it->is_array()) schema_error("actions of '" + state + "' must be an array");
         for (const auto& a : *it) {
            if (!a.is_string()) schema_error("action labels of '" + state + "' must be strings");
            mdp.action_labels[x].push_back(a.get<std::string>());
         }
      }
      const auto t_state = transitions.find(state);
      const auto r_state = rewards.find(state);
      for (const auto& action : mdp.action_labels[x]) {
         const std::string where = "(" + state + ", " + action + ")";
         if (t_state == transitions.end() || !t_state->is_object() || !t_state->contains(action))
            schema_error("missing transition row " + where);
         if (r_state == rewards.end() || !r_state->is_object() || !r_state->contains(action))
            schema_error("missing reward " + where);
         const auto& row_json = (*t_state)[action];
         if (!row_json.is_object()) schema_error("transition row " + where + " must be an object");
         Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
         for (auto it = row_json.begin(); it != row_json.end(); ++it) {
            const std::size_t y = mdp.state_index(it.key());
            if (y == n)
               schema_error("transition row " + where + " names unknown state '" + it.key() + "'");
            row[static_cast<Eigen::Index>(y)] = number(it.value(), "transition " + where);
         }
         mdp.transition[x].push_back(std::move(row));
         mdp.reward[x].push_back(number((*r_state)[action], "reward " + where));
      }
      const auto reject_unknown = [&](const Json& table) {
         const auto& labels = mdp.action_labels[x];
         for (auto it = table.begin(); it != table.end(); ++it) {
            if (std::find(labels.begin(), labels.end(), it.key()) == labels.end())
               schema_error("unknown action '" + it.key() + "' at state '" + state + "'");
         }
      };
      if (t_state != transitions.end() && t_state->is_object()) reject_unknown(*t_state);
      if (r_state != rewards.end() && r_state->is_object()) reject_unknown(*r_state);
   }
   return validate(std::move(mdp));
}

MdpInstance load_mdp(const std::filesystem::path& path)
{
   std::ifstream in(path, std::ios::binary);
   if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
   std::ostringstream buffer;
   buffer << in.rdbuf();
   return parse_mdp(buffer.str());
}

Json mdp_to_json(const MdpInstance& mdp)
{
   Json doc = Json::object();
   doc["states"] = mdp.state_labels;
   Json actions = Json::object();
   Json transitions = Json::object();
   Json rewards = Json::object();
   for (std::size_t x = 0; x < mdp.num_states(); ++x) {
      const auto& state = mdp.state_labels[x];
      actions[state] = mdp.action_labels[x];
      Json t_state = Json::object();
      Json r_state = Json::object();
      for (std::size_t a = 0; a < mdp.num_actions(x); ++a) {
         const auto& action = mdp.action_labels[x][a];
         Json row = Json::object();
         const auto& p = mdp.transition[x][a];
         for (Eigen::Index y = 0; y < p.size(); ++y)
            if (p[y] != 0.0) row[mdp.state_labels[static_cast<std::size_t>(y)]] = p[y];
         t_state[action] = std::move(row);
         r_state[action] = mdp.reward[x][a];
      }
      transitions[state] = std::move(t_state);
      rewards[state] = std::move(r_state);
   }
   doc["actions"] = std::move(actions);
   doc["transitions"] = std::move(transitions);
   doc["rewards"] = std::move(rewards);
   return doc;
}

std::string serialize_mdp(const MdpInstance& mdp)
{
   return dump_json(mdp_to_json(mdp)) + "\n";
}

void save_mdp(const MdpInstance& mdp, const std::filesystem::path& path)
{
   std::ofstream out(path, std::ios::binary);
   if (!out) throw Error(ErrorKind::DomainError, "cannot write '" + path.string() + "'");
   out << serialize_mdp(mdp);
}

std::string dump_json(const Json& value, int indent)
{
   std::ostringstream out;
   write_json(out, value, indent, 0);
   return out.str();
}

std::string instance_digest(const MdpInstance& mdp)
{
   const std::string canonical = dump_json(mdp_to_json(mdp), -1);
   unsigned char digest[EVP_MAX_MD_SIZE];
   unsigned int length = 0;
   EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr);
   static constexpr char kHex[] = "0123456789abcdef";
   std::string out = "sha256:";
   for (unsigned int i = 0; i < length; ++i) {
      out += kHex[digest[i] >> 4];
      out += kHex[digest[i] & 0xf];
   }
   return out;
}

}  // namespace gainthresh
