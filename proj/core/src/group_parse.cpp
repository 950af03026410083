#include "sofic/group_parse.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace sofic {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (const char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// The bracket-balanced array starting at the first '[' at or after pos.
std::string bracket_payload(const std::string& line, size_t pos, const std::string& what) {
  const size_t open = line.find('[', pos);
  if (open == std::string::npos) throw ParseError("missing array for " + what);
  int depth = 0;
  for (size_t i = open; i < line.size(); ++i) {
    if (line[i] == '[') ++depth;
    if (line[i] == ']' && --depth == 0) return line.substr(open, i - open + 1);
  }
  throw ParseError("unbalanced array for " + what);
}

nlohmann::json parse_array(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError("bad array for " + what + ": " + e.what());
  }
}

std::string payload_after_key(const std::string& line, const std::string& key) {
  const size_t pos = line.find(key);
  if (pos == std::string::npos) throw ParseError("missing '" + key + "'");
  return bracket_payload(line, pos, key);
}

}  // namespace

GroupPtr GroupFile::main() const {
  if (groups.empty()) throw ParseError("group file declares no groups");
  return groups.back().second;
}

GroupPtr GroupFile::get(const std::string& gname) const {
  for (const auto& [n, g] : groups)
    if (n == gname) return g;
  throw ParseError("unknown group '" + gname + "'");
}

GroupFile parse_group_text(const std::string& text) {
  GroupFile gf;
  gf.source = text;
  std::map<std::string, GroupPtr> reg;
  const auto lookup = [&](const std::string& n) -> GroupPtr {
    const auto it = reg.find(trim(n));
    if (it == reg.end()) throw ParseError("reference to undeclared group '" + trim(n) + "'");
    return it->second;
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    try {
      std::istringstream ls(line);
      std::string kw, name;
      ls >> kw >> name;
      if (!valid_name(name)) throw ParseError("bad group name '" + name + "'");

      GroupPtr g;
      if (kw == "finite") {
        const auto arr = parse_array(payload_after_key(line, "table"), "table");
        g = Group::finite_table(name, arr.get<std::vector<std::vector<int>>>());
      } else if (kw == "integer") {
        g = Group::integer(name);
      } else if (kw == "free") {
        const size_t pos = line.find("rank");
        if (pos == std::string::npos) throw ParseError("missing 'rank'");
        const size_t eq = line.find('=', pos);
        if (eq == std::string::npos) throw ParseError("missing rank value");
        g = Group::free_group(name, std::stoi(trim(line.substr(eq + 1))));
      } else if (kw == "freeproduct") {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("missing '='");
        const std::string rhs = line.substr(eq + 1);
        const size_t star = rhs.find('*');
        if (star == std::string::npos) throw ParseError("expected 'A * B'");
        g = Group::free_product(name, lookup(rhs.substr(0, star)), lookup(rhs.substr(star + 1)));
      } else if (kw == "amalgam") {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("missing '='");
        const size_t with = line.find("with", eq);
        if (with == std::string::npos) throw ParseError("missing 'with'");
        const std::string rhs = line.substr(eq + 1, with - eq - 1);
        const size_t sub_open = rhs.find("*_{");
        const size_t sub_close = rhs.find('}', sub_open);
        if (sub_open == std::string::npos || sub_close == std::string::npos)
          throw ParseError("expected 'A *_{H} B'");
        const auto emb_l =
            parse_array(payload_after_key(line, "embed_left"), "embed_left").get<std::vector<int>>();
        const auto emb_r = parse_array(payload_after_key(line, "embed_right"), "embed_right")
                               .get<std::vector<int>>();
        g = Group::amalgam(name, lookup(rhs.substr(0, sub_open)), lookup(rhs.substr(sub_close + 1)),
                           lookup(rhs.substr(sub_open + 3, sub_close - sub_open - 3)), emb_l, emb_r);
      } else {
        throw ParseError("unknown stanza '" + kw + "'");
      }

      if (reg.count(name)) throw ParseError("duplicate group name '" + name + "'");
      reg[name] = g;
      gf.groups.emplace_back(name, g);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (gf.groups.empty()) throw ParseError("group file declares no groups");
  return gf;
}

GroupFile load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str());
}

}  // namespace sofic
