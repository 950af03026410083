#include "model_io.hpp"

#include <fstream>
#include <sstream>

#include "sofic/errors.hpp"

namespace sofic {

namespace {

nlohmann::json perm_to_json(const Perm& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const int32_t v : p.images()) arr.push_back(v);
  return arr;
}

Perm perm_from_json(const nlohmann::json& arr, const std::string& what) {
  if (!arr.is_array() || arr.empty()) throw ParseError(what + ": image list must be an array");
  std::vector<int32_t> img;
  img.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw ParseError(what + ": image entries must be integers");
    img.push_back(v.get<int32_t>());
  }
  const int dim = static_cast<int>(img.size());
  return Perm::from_images(dim, std::move(img));
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("model file: missing field '") + key + "'");
  return *it;
}

nlohmann::json parse_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(path + ": top level must be an object");
  return j;
}

LoadedModel model_from_json(nlohmann::json j, const GroupFile* registry) {
  LoadedModel out;
  const std::string fmt = field(j, "format").get<std::string>();
  if (fmt != kModelFormat) throw ParseError("model file: unknown format '" + fmt + "'");
  const nlohmann::json& grp = field(j, "group");
  out.group_name = field(grp, "name").get<std::string>();
  out.registry = registry ? *registry : parse_group_text(field(grp, "spec").get<std::string>());
  out.model.group = out.registry.get(out.group_name);
  out.model.d = field(j, "d").get<int>();
  if (out.model.d < 1) throw ParseError("model file: d must be positive");
  const nlohmann::json& imgs = field(j, "images");
  if (!imgs.is_object()) throw ParseError("model file: images must be an object");
  for (const auto& [text, arr] : imgs.items()) {
    const Perm p = perm_from_json(arr, "images[" + text + "]");
    if (p.dim() != out.model.d)
      throw ParseError("images[" + text + "]: dimension differs from d");
    out.model.set_image(parse_word(*out.model.group, text), p);
  }
  out.raw = std::move(j);
  return out;
}

}  // namespace

nlohmann::json model_to_json(const SoficAssignment& a, const GroupFile& registry,
                             const std::string& group_name, nlohmann::json provenance) {
  nlohmann::json j;
  j["format"] = kModelFormat;
  j["group"] = {{"spec", registry.source}, {"name", group_name}};
  j["d"] = a.d;
  nlohmann::json imgs = nlohmann::json::object();
  for (const auto& [w, p] : a.images) imgs[format_word(*a.group, w)] = perm_to_json(p);
  j["images"] = std::move(imgs);
  j["provenance"] = std::move(provenance);
  return j;
}

nlohmann::json action_to_json(const ActionModel& m, const GroupFile& registry,
                              const std::string& group_name, nlohmann::json provenance) {
  nlohmann::json j = model_to_json(m.sigma, registry, group_name, std::move(provenance));
  j["cells"] = m.cell_count;
  j["labels"] = m.labels;
  j["measure"] = m.measure == MeasureKind::BernoulliProduct ? "bernoulli"
                 : m.measure == MeasureKind::Translation    ? "translation"
                                                            : "single-cell";
  if (m.measure == MeasureKind::BernoulliProduct) j["nu"] = m.nu;
  return j;
}

LoadedModel load_model(const std::string& path, const GroupFile* registry) {
  return model_from_json(parse_file(path), registry);
}

ActionModel load_action_model(const std::string& path, const GroupFile* registry) {
  nlohmann::json j = parse_file(path);
  ActionModel m;
  const nlohmann::json raw = j;
  LoadedModel base = model_from_json(std::move(j), registry);
  m.sigma = std::move(base.model);
  m.cell_count = field(raw, "cells").get<int>();
  m.labels = field(raw, "labels").get<std::vector<int>>();
  const std::string kind = field(raw, "measure").get<std::string>();
  if (kind == "bernoulli") {
    m.measure = MeasureKind::BernoulliProduct;
    m.nu = field(raw, "nu").get<std::vector<double>>();
  } else if (kind == "translation") {
    m.measure = MeasureKind::Translation;
  } else if (kind == "single-cell") {
    m.measure = MeasureKind::SingleCell;
  } else {
    throw ParseError("model file: unknown measure '" + kind + "'");
  }
  m.validate();
  return m;
}

GroupFile resolve_group_arg(const std::string& arg) {
  {
    std::ifstream in(arg);
    if (in.good()) return load_group_file(arg);
  }
  if (arg == "z") return parse_group_text("integer z");
  if (arg.size() > 1 && arg[0] == 'z' &&
      arg.find_first_not_of("0123456789", 1) == std::string::npos) {
    const int n = std::stoi(arg.substr(1));
    if (n >= 1 && n <= 512) {
      std::ostringstream os;
      os << "finite " << arg << " table = [";
      for (int i = 0; i < n; ++i) {
        os << (i ? ",[" : "[");
        for (int k = 0; k < n; ++k) os << (k ? "," : "") << (i + k) % n;
        os << "]";
      }
      os << "]";
      return parse_group_text(os.str());
    }
  }
  throw ParseError("group '" + arg + "': no such file, and not a zN shorthand");
}

GroupPtr pick_group(const GroupFile& gf, const std::string& name, std::string* picked_name) {
  if (name.empty()) {
    if (picked_name) *picked_name = gf.groups.back().first;
    return gf.main();
  }
  if (picked_name) *picked_name = name;
  return gf.get(name);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out.good()) throw Error("short write to '" + path + "'");
}

}  // namespace sofic
