#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sofic/group.hpp"

namespace sofic {

// Parsed registry of group declarations, in declaration order. Stanzas, one
// per line, '#' starts a comment:
//   finite NAME table = [[0,1],[1,0]]
//   integer NAME
//   free NAME rank = 2
//   freeproduct NAME = A * B
//   amalgam NAME = A *_{H} B with embed_left = [0,2], embed_right = [0,2]
// Product stanzas reference previously declared names, which must be
// distinct between the two factor slots.
struct GroupFile {
  std::vector<std::pair<std::string, GroupPtr>> groups;
  std::string source;

  GroupPtr main() const;  // last declared group
  GroupPtr get(const std::string& gname) const;
};

GroupFile parse_group_text(const std::string& text);
GroupFile load_group_file(const std::string& path);

}  // namespace sofic
