#ifndef GAINTHRESH_IO_H
#define GAINTHRESH_IO_H

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gainthresh/mdp.h"

namespace gainthresh {

using Json = nlohmann::ordered_json;

/// Parses and validates an instance document. States and actions keep file
/// order. Target states omitted from a transition row have probability 0.
MdpInstance parse_mdp(std::string_view text);
MdpInstance load_mdp(const std::filesystem::path& path);

Json mdp_to_json(const MdpInstance& mdp);
std::string serialize_mdp(const MdpInstance& mdp);
void save_mdp(const MdpInstance& mdp, const std::filesystem::path& path);

/// JSON text with every floating-point number written to 17 significant
/// digits. Non-finite numbers become null.
std::string dump_json(const Json& value, int indent = 2);

/// "sha256:<hex>" of the canonical serialization.
std::string instance_digest(const MdpInstance& mdp);

}  // namespace gainthresh

#endif  // GAINTHRESH_IO_H
