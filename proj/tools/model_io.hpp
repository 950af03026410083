#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "sofic/action.hpp"
#include "sofic/group_parse.hpp"
#include "sofic/verify.hpp"

namespace sofic {

// Model files are self-contained: the group registry rides along as text, so
// a file round-trips without external context. Loading against an explicit
// registry instead binds the images to that registry's group object (matched
// by name), which is what the join and conjugator commands need, since those
// operations compare group identities, not group contents.
//
// Schema (sofic-model/1):
//   format    "sofic-model/1"
//   group     { "spec": <group file text>, "name": <declared name> }
//   d         dimension
//   images    word text -> 1-based image list, one entry per stored word
//   provenance  free-form object; construct subcommands record op, args, seed
//   cells, labels, measure, nu   present only for action models

inline constexpr const char* kModelFormat = "sofic-model/1";
inline constexpr const char* kRunFormat = "sofic-run/1";

struct LoadedModel {
  SoficAssignment model;
  GroupFile registry;      // embedded registry unless an external one was used
  std::string group_name;  // name the model's group was resolved under
  nlohmann::json raw;
};

nlohmann::json model_to_json(const SoficAssignment& a, const GroupFile& registry,
                             const std::string& group_name, nlohmann::json provenance);
nlohmann::json action_to_json(const ActionModel& m, const GroupFile& registry,
                              const std::string& group_name, nlohmann::json provenance);

// Parses the file; binds to `registry` when non-null (the embedded spec is
// then ignored apart from the group name). Throws ParseError on malformed
// input or an unresolvable group name.
LoadedModel load_model(const std::string& path, const GroupFile* registry = nullptr);
ActionModel load_action_model(const std::string& path, const GroupFile* registry = nullptr);

// Resolves a --group argument: an existing file wins; otherwise zN is
// accepted as shorthand for the cyclic group of order N and z for the
// integers, both materialized as ordinary registry text.
GroupFile resolve_group_arg(const std::string& arg);

// Group chosen by --name, or the registry's main (last declared) group.
GroupPtr pick_group(const GroupFile& gf, const std::string& name, std::string* picked_name);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sofic
