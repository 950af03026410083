#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "model_io.hpp"
#include "sofic/census.hpp"
#include "sofic/construct.hpp"
#include "sofic/errors.hpp"
#include "sofic/stats.hpp"

using nlohmann::json;
using namespace sofic;

namespace {

constexpr const char* kToolVersion = "soficlab/1.0.0";

int g_exit = 0;  // verify sets 1 when the check fails; everything else leaves 0

// Shared invocation state: where output goes, what the run record captures.
struct Run {
  std::vector<std::string> argv;
  std::string out_path;
  std::string record_path;
  bool stable = false;
  std::optional<std::uint64_t> seed;
  json config = json::object();
  std::string started;
};

std::string iso_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Payload goes to --out or stdout; the run record, when asked for, embeds the
// payload plus a structured copy so a replay can be compared field by field.
void finish(Run& run, const std::string& payload, json data) {
  if (run.out_path.empty()) {
    std::cout << payload;
  } else {
    write_text_file(run.out_path, payload);
  }
  if (run.record_path.empty()) return;
  json rec;
  rec["format"] = kRunFormat;
  rec["tool"] = kToolVersion;
  rec["command"] = run.argv;
  rec["config"] = run.config;
  if (run.seed) rec["seed"] = *run.seed;
  if (!run.stable) {
    rec["started"] = run.started;
    rec["finished"] = iso_now();
  }
  rec["outputs"] = {{"payload", payload}, {"data", std::move(data)}};
  write_text_file(run.record_path, rec.dump(2) + "\n");
}

// Master seed: taken from --seed or drawn once from the system source, and
// always announced on stderr so a run can be replayed.
std::uint64_t ensure_seed(Run& run, const CLI::Option* opt, unsigned long long flag_value) {
  std::uint64_t s;
  if (opt->count()) {
    s = flag_value;
  } else {
    std::random_device rd;
    s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  run.seed = s;
  std::cerr << "master seed: " << s << "\n";
  return s;
}

std::string dstr(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : text) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Word> parse_words(const Group& g, const std::string& text) {
  std::vector<Word> out;
  for (const std::string& tok : split_list(text)) out.push_back(parse_word(g, tok));
  if (out.empty()) throw ParseError("empty word list");
  return out;
}

std::vector<Word> all_generators(const Group& g) {
  std::vector<Word> out;
  for (int i = 0; i < g.generator_count(); ++i) out.push_back(Word::single(i));
  return out;
}

std::vector<Word> stored_words(const SoficAssignment& a) {
  std::vector<Word> out;
  for (const auto& [w, p] : a.images) out.push_back(w);
  if (out.empty()) throw ParseError("model stores no images");
  return out;
}

template <class T>
std::vector<T> parse_num_list(const std::string& text, const std::string& what) {
  std::vector<T> out;
  for (const std::string& tok : split_list(text)) {
    try {
      size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw ParseError(what + ": bad integer '" + tok + "'");
    }
  }
  if (out.empty()) throw ParseError(what + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const std::string& tok : split_list(text)) {
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError(what + ": bad number '" + tok + "'");
    }
  }
  if (out.empty()) throw ParseError(what + ": empty list");
  return out;
}

json words_json(const Group& g, const std::vector<Word>& ws) {
  json arr = json::array();
  for (const Word& w : ws) arr.push_back(format_word(g, w));
  return arr;
}

json report_json(const Group& g, const DefectReport& r) {
  json j;
  j["max_mult_defect"] = r.max_mult_defect;
  j["max_trace_defect"] = r.max_trace_defect;
  j["worst_tuple"] = words_json(g, r.worst_tuple);
  json per = json::object();
  for (const auto& [w, tr] : r.per_word) per[format_word(g, w)] = tr;
  j["per_word"] = std::move(per);
  j["delta"] = r.delta;
  j["passed"] = r.passed;
  return j;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::string model, group, name, f, out, record;
  int n = 0;
  double delta = 0.0;
};

void run_verify(Run& run, const VerifyOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  std::optional<GroupFile> reg;
  if (!o.group.empty()) reg = resolve_group_arg(o.group);
  const LoadedModel lm = load_model(o.model, reg ? &*reg : nullptr);
  const Group& g = *lm.model.group;
  const std::vector<Word> f = o.f.empty() ? all_generators(g) : parse_words(g, o.f);
  run.config = {{"model", o.model}, {"group", lm.group_name}, {"n", o.n}, {"delta", o.delta}};

  const DefectReport rep = ga_check(lm.model, f, o.n, o.delta);
  std::ostringstream os;
  os << "group: " << lm.group_name << "\n";
  os << "d: " << lm.model.d << "\n";
  os << "f: ";
  for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << format_word(g, f[i]);
  os << "\nn: " << o.n << "\n";
  os << "delta: " << dstr(o.delta) << "\n";
  os << "max_mult_defect: " << dstr(rep.max_mult_defect) << "\n";
  os << "max_trace_defect: " << dstr(rep.max_trace_defect) << "\n";
  os << "worst_tuple: ";
  if (rep.worst_tuple.empty()) {
    os << "(none)";
  } else {
    for (size_t i = 0; i < rep.worst_tuple.size(); ++i)
      os << (i ? ", " : "") << format_word(g, rep.worst_tuple[i]);
  }
  os << "\npassed: " << (rep.passed ? "true" : "false") << "\n";
  finish(run, os.str(), report_json(g, rep));
  if (!rep.passed) g_exit = 1;
}

// ---------------------------------------------------------------------------
// census / profile

struct CensusOpts {
  std::string group, name, f, e, out, record, witnesses;
  int n = 0;
  double delta = 0.0;
  int d = 0;
  std::vector<int> dlist;
  bool orbit = false;
  unsigned long long work_cap = CensusOptions{}.work_cap;
};

void run_census(Run& run, const CensusOpts& o, bool profile) {
  run.out_path = o.out;
  run.record_path = o.record;
  const GroupFile reg = resolve_group_arg(o.group);
  std::string gname;
  const GroupPtr g = pick_group(reg, o.name, &gname);
  const std::vector<Word> f = o.f.empty() ? all_generators(*g) : parse_words(*g, o.f);
  const std::vector<Word> e = o.e.empty() ? f : parse_words(*g, o.e);

  std::vector<int> ds = o.dlist;
  if (o.d > 0) ds.insert(ds.begin(), o.d);
  if (ds.empty()) throw ParseError("need --d or --d-list");

  CensusOptions copt;
  copt.mode = o.orbit ? CensusMode::OrbitDecomposed : CensusMode::Exhaustive;
  copt.work_cap = o.work_cap;
  copt.collect_witnesses = !profile && !o.witnesses.empty();

  run.config = {{"group", gname},        {"f", o.f},   {"e", o.e},
                {"n", o.n},              {"delta", o.delta}, {"d_list", ds},
                {"mode", census_mode_name(copt.mode)}, {"witnesses", o.witnesses}};

  std::ostringstream os;
  os << census_csv_header() << "\n";
  json rows = json::array();
  for (const int d : ds) {
    CensusResult res = enumerate_ga(g, f, e, o.n, o.delta, d, copt);
    if (run.stable) res.record.seconds = 0.0;
    os << census_csv_row(res.record) << "\n";
    rows.push_back({{"d", d},
                    {"count", to_decimal(res.record.count)},
                    {"rate", res.record.rate},
                    {"rate_minus_inf", res.record.rate_minus_inf},
                    {"mode", census_mode_name(res.record.mode)}});
    if (copt.collect_witnesses) {
      std::filesystem::create_directories(o.witnesses);
      for (size_t i = 0; i < res.witnesses.size(); ++i) {
        const json pj = {{"op", "census-witness"}, {"d", d}, {"index", i}};
        const json mj = model_to_json(res.witnesses[i], reg, gname, pj);
        write_text_file(o.witnesses + "/witness_d" + std::to_string(d) + "_" +
                            std::to_string(i) + ".json",
                        mj.dump(2) + "\n");
      }
      std::cerr << "witnesses: " << res.witnesses.size() << " at d=" << d
                << (res.witnesses_truncated ? " (truncated)" : "") << "\n";
    }
  }
  finish(run, os.str(), std::move(rows));
}

// ---------------------------------------------------------------------------
// construct

json provenance_base(const char* op) { return json{{"op", op}, {"tool", kToolVersion}}; }

void emit_model(Run& run, const SoficAssignment& m, const GroupFile& reg,
                const std::string& gname, json prov) {
  const json j = model_to_json(m, reg, gname, std::move(prov));
  finish(run, j.dump(2) + "\n", j);
}

struct RegularOpts {
  std::string group, name, out, record;
  int copies = 1;
};

void run_regular(Run& run, const RegularOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const GroupFile reg = resolve_group_arg(o.group);
  std::string gname;
  const GroupPtr g = pick_group(reg, o.name, &gname);
  run.config = {{"group", gname}, {"copies", o.copies}};
  json prov = provenance_base("regular");
  prov["group"] = gname;
  prov["copies"] = o.copies;
  emit_model(run, regular_model(g, o.copies), reg, gname, std::move(prov));
}

struct AmplifyOpts {
  std::string model, out, record;
  int copies = 1;
};

void run_amplify(Run& run, const AmplifyOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const LoadedModel lm = load_model(o.model);
  run.config = {{"model", o.model}, {"copies", o.copies}};
  json prov = provenance_base("amplify");
  prov["copies"] = o.copies;
  emit_model(run, amplify(lm.model, o.copies), lm.registry, lm.group_name, std::move(prov));
}

struct InduceOpts {
  std::string model, group, name, embed, transversal, out, record;
  long index = 0;
};

void run_induce(Run& run, const InduceOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const LoadedModel lm = load_model(o.model);
  const GroupFile reg = resolve_group_arg(o.group);
  std::string gname;
  const GroupPtr g = pick_group(reg, o.name, &gname);
  run.config = {{"model", o.model}, {"group", gname}};
  json prov = provenance_base("induce");
  prov["group"] = gname;
  SoficAssignment out;
  if (g->kind() == GroupKind::Integer) {
    if (o.index < 1) throw ParseError("integer induction needs --index >= 1");
    const auto tr = parse_num_list<long long>(o.transversal, "--transversal");
    prov["index"] = o.index;
    prov["transversal"] = tr;
    out = induce_from_subgroup(lm.model, g, o.index, tr);
  } else {
    if (o.embed.empty()) throw ParseError("finite induction needs --embed");
    const auto emb = parse_num_list<int>(o.embed, "--embed");
    const auto tr = parse_num_list<int>(o.transversal, "--transversal");
    prov["embed"] = emb;
    prov["transversal"] = tr;
    out = induce_from_subgroup(lm.model, g, emb, tr);
  }
  emit_model(run, out, reg, gname, std::move(prov));
}

struct QuasitileOpts {
  std::string model, f, out, record;
  std::vector<std::string> tiles;
  double eps = 0.0;
  int n = 0;
};

// Tile syntax: either a half-open power interval "a..b" over the single
// generator, or a comma-separated word list. Interval tiles are what the
// integer-group quasitilings use; word lists cover everything else.
std::vector<Word> parse_tile(const Group& g, const std::string& text) {
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    if (g.generator_count() != 1)
      throw ParseError("interval tiles need a single-generator group");
    long a = 0, b = 0;
    try {
      size_t ua = 0, ub = 0;
      a = std::stol(text.substr(0, dots), &ua);
      b = std::stol(text.substr(dots + 2), &ub);
      if (ua != dots || ub != text.size() - dots - 2) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw ParseError("bad tile interval '" + text + "'");
    }
    if (a >= b) throw ParseError("empty tile interval '" + text + "'");
    std::vector<Word> tile;
    for (long k = a; k < b; ++k) {
      Word w;
      for (long i = 0; i < std::labs(k); ++i)
        w.ls.push_back(Letter{0, static_cast<int8_t>(k < 0 ? -1 : 1)});
      tile.push_back(std::move(w));
    }
    return tile;
  }
  return parse_words(g, text);
}

void run_quasitile(Run& run, const QuasitileOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const LoadedModel lm = load_model(o.model);
  const Group& g = *lm.model.group;
  std::vector<std::vector<Word>> tiles;
  size_t longest = 1;
  for (const std::string& t : o.tiles) {
    tiles.push_back(parse_tile(g, t));
    for (const Word& w : tiles.back()) longest = std::max(longest, w.ls.size());
  }
  const int n = o.n > 0 ? o.n : static_cast<int>(longest);
  const std::vector<Word> f = o.f.empty() ? stored_words(lm.model) : parse_words(g, o.f);
  run.config = {{"model", o.model}, {"eps", o.eps}, {"n", n}, {"tiles", o.tiles}};

  const TilingResult res = quasitile(lm.model, tiles, o.eps, f, n);
  json j;
  j["format"] = "sofic-tiling/1";
  j["d"] = lm.model.d;
  j["eps"] = o.eps;
  j["coverage"] = res.coverage;
  j["disjoint"] = res.disjoint;
  j["lambda_hat"] = res.lambda_hat;
  json used = json::array();
  for (const auto& [tile_idx, centers] : res.tiles_used)
    used.push_back({{"tile", tile_idx}, {"centers", centers}});
  j["tiles"] = std::move(used);
  finish(run, j.dump(2) + "\n", j);
}

struct JoinOpts {
  std::string group, name, left, right, out, record;
  int n = 0;
  unsigned long long seed = 0;
  double eps = AmalgamJoinOptions{}.eps;
  double delta = AmalgamJoinOptions{}.delta;
  bool skip_alignment = false;
  CLI::Option* seed_opt = nullptr;
};

void run_freejoin(Run& run, const JoinOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const GroupFile reg = resolve_group_arg(o.group);
  std::string gname;
  const GroupPtr prod = pick_group(reg, o.name, &gname);
  const LoadedModel left = load_model(o.left, &reg);
  const LoadedModel right = load_model(o.right, &reg);
  const std::uint64_t seed = ensure_seed(run, o.seed_opt, o.seed);
  run.config = {{"group", gname}, {"left", left.group_name}, {"right", right.group_name},
                {"n", o.n}};
  json prov = provenance_base("freejoin");
  prov["seed"] = seed;
  prov["n"] = o.n;
  prov["left"] = left.group_name;
  prov["right"] = right.group_name;
  emit_model(run, free_join(left.model, right.model, prod, o.n, seed), reg, gname,
             std::move(prov));
}

void run_amalgamjoin(Run& run, const JoinOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const GroupFile reg = resolve_group_arg(o.group);
  std::string gname;
  const GroupPtr am = pick_group(reg, o.name, &gname);
  const LoadedModel left = load_model(o.left, &reg);
  const LoadedModel right = load_model(o.right, &reg);
  const std::uint64_t seed = ensure_seed(run, o.seed_opt, o.seed);
  AmalgamJoinOptions opt;
  opt.eps = o.eps;
  opt.delta = o.delta;
  opt.skip_alignment = o.skip_alignment;
  run.config = {{"group", gname}, {"left", left.group_name}, {"right", right.group_name},
                {"n", o.n},       {"eps", o.eps},            {"delta", o.delta}};

  const AmalgamJoinResult res = amalgamated_join(left.model, right.model, am, seed, o.n, opt);
  json prov = provenance_base("amalgamjoin");
  prov["seed"] = seed;
  prov["n"] = o.n;
  prov["eps"] = o.eps;
  prov["delta"] = o.delta;
  prov["aligned_points"] = res.aligned_points.size();
  prov["h_agreement_defect"] = res.h_agreement_defect;
  prov["free_orbits_left"] = res.free_orbits_left;
  prov["free_orbits_right"] = res.free_orbits_right;
  prov["mover"] = res.mover.images();
  prov["ga_passed"] = res.ga.passed;
  prov["ga_max_mult_defect"] = res.ga.max_mult_defect;
  prov["ga_max_trace_defect"] = res.ga.max_trace_defect;
  emit_model(run, res.join, reg, gname, std::move(prov));
}

struct ConjugatorOpts {
  std::string a, b, group, f, out, record;
  long long budget = 10000;
};

void run_conjugator(Run& run, const ConjugatorOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  std::optional<GroupFile> reg;
  if (!o.group.empty()) reg = resolve_group_arg(o.group);
  const LoadedModel a = load_model(o.a, reg ? &*reg : nullptr);
  // Without an explicit registry, b binds against a's, so both models share
  // one group object (the search requires identical groups, not lookalikes).
  const LoadedModel b = load_model(o.b, reg ? &*reg : &a.registry);
  const Group& g = *a.model.group;
  const std::vector<Word> f = o.f.empty() ? stored_words(a.model) : parse_words(g, o.f);
  run.config = {{"a", o.a}, {"b", o.b}, {"budget", o.budget}};

  const ConjugatorResult res = approx_conjugator(a.model, b.model, f, o.budget);
  json j;
  j["format"] = "sofic-conjugator/1";
  j["d"] = a.model.d;
  j["f"] = words_json(g, f);
  j["residual"] = res.residual;
  j["gamma"] = res.gamma.images();
  finish(run, j.dump(2) + "\n", j);
}

struct BernoulliOpts {
  std::string model, nu, out, record;
  unsigned long long seed = 0;
  CLI::Option* seed_opt = nullptr;
};

void run_bernoulli(Run& run, const BernoulliOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const LoadedModel lm = load_model(o.model);
  const std::vector<double> nu = parse_double_list(o.nu, "--nu");
  const std::uint64_t seed = ensure_seed(run, o.seed_opt, o.seed);
  run.config = {{"model", o.model}, {"nu", nu}};
  json prov = provenance_base("bernoulli");
  prov["seed"] = seed;
  prov["nu"] = nu;
  const ActionModel m = bernoulli_model(lm.model, nu, seed);
  const json j = action_to_json(m, lm.registry, lm.group_name, std::move(prov));
  finish(run, j.dump(2) + "\n", j);
}

// ---------------------------------------------------------------------------
// survey

json survey_row_json(const SurveyResult& r) {
  return json{{"d", r.d},           {"trials", r.trials},
              {"count", r.count},   {"fraction", r.fraction},
              {"mean", r.mean},     {"halfwidth", r.confidence_halfwidth},
              {"unreliable", r.unreliable}, {"seed", r.seed}};
}

void emit_survey(Run& run, const std::vector<SurveyResult>& rows, bool as_json,
                 const char* kind) {
  json data;
  data["format"] = "sofic-survey/1";
  data["kind"] = kind;
  data["derivation"] = "Rng(seed).child(slice).child(trial)";
  if (run.seed) data["seed"] = *run.seed;
  json jr = json::array();
  for (const SurveyResult& r : rows) jr.push_back(survey_row_json(r));
  data["rows"] = std::move(jr);
  if (as_json) {
    finish(run, data.dump(2) + "\n", std::move(data));
    return;
  }
  std::ostringstream os;
  os << survey_csv_header() << "\n";
  for (const SurveyResult& r : rows) os << survey_csv_row(r) << "\n";
  finish(run, os.str(), std::move(data));
}

// The canonical fixed-point-free involution family used by the alt and conc
// surveys when no model is supplied: adjacent swap, half shift, reversal,
// shifted adjacent swap, cycling for larger counts. Needs even d.
PartialPerm fpf_map(int d, int which) {
  if (d < 2 || d % 2 != 0) throw ParseError("fpf maps need even d >= 2");
  std::vector<int32_t> img(static_cast<size_t>(d));
  for (int i = 1; i <= d; ++i) {
    int j = 0;
    switch (which % 4) {
      case 0: j = i % 2 == 1 ? i + 1 : i - 1; break;
      case 1: j = i <= d / 2 ? i + d / 2 : i - d / 2; break;
      case 2: j = d + 1 - i; break;
      default: j = i == 1 ? d : (i == d ? 1 : (i % 2 == 0 ? i + 1 : i - 1)); break;
    }
    img[static_cast<size_t>(i) - 1] = j;
  }
  return Perm::from_images(d, std::move(img)).to_partial();
}

std::vector<PartialPerm> fpf_family(int d, int count) {
  std::vector<PartialPerm> out;
  for (int k = 0; k < count; ++k) out.push_back(fpf_map(d, k));
  return out;
}

struct TraceOpts {
  int d = 0;
  double eps = 0.0;
  long long trials = 0;
  unsigned long long seed = 0;
  bool exhaustive = false;
  bool as_json = false;
  std::string out, record;
  CLI::Option* seed_opt = nullptr;
};

void run_trace_survey(Run& run, const TraceOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  run.config = {{"d", o.d}, {"eps", o.eps}, {"exhaustive", o.exhaustive}};
  const PartialPerm a = Perm::identity(o.d).to_partial();
  SurveyResult r;
  if (o.exhaustive) {
    r = trace_survey_exhaustive(a, o.eps);
  } else {
    if (o.trials < 1) throw ParseError("need --trials >= 1");
    r = trace_survey(a, o.eps, o.trials, ensure_seed(run, o.seed_opt, o.seed));
    run.config["trials"] = o.trials;
  }
  emit_survey(run, {r}, o.as_json, "trace");
}

struct AltOpts {
  std::string model, words, rho, out, record;
  int d = 0;
  int fpf = 4;
  long long trials = 0;
  unsigned long long seed = 0;
  bool as_json = false;
  CLI::Option* seed_opt = nullptr;
};

void run_alt_survey(Run& run, const AltOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const std::vector<int> rho = parse_num_list<int>(o.rho, "--rho");
  std::vector<PartialPerm> as;
  if (!o.model.empty()) {
    const LoadedModel lm = load_model(o.model);
    for (const Word& w : parse_words(*lm.model.group, o.words))
      as.push_back(word_image(lm.model, w).to_partial());
  } else {
    if (o.d < 1) throw ParseError("need --d (or --model with --words)");
    as = fpf_family(o.d, o.fpf);
  }
  run.config = {{"rho", rho}, {"d", as.empty() ? 0 : as[0].dim()}, {"maps", as.size()},
                {"trials", o.trials}};
  const std::uint64_t seed = ensure_seed(run, o.seed_opt, o.seed);
  emit_survey(run, {alternating_trace_mean(as, rho, o.trials, seed)}, o.as_json, "alt");
}

struct ConcOpts {
  std::string rho, out, record;
  std::vector<int> dlist;
  int fpf = 4;
  double eps = 0.0;
  long long trials = 0;
  unsigned long long seed = 0;
  bool as_json = false;
  CLI::Option* seed_opt = nullptr;
};

void run_conc_survey(Run& run, const ConcOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const std::vector<int> rho = parse_num_list<int>(o.rho, "--rho");
  const int count = o.fpf;
  run.config = {{"rho", rho}, {"eps", o.eps}, {"d_list", o.dlist}, {"maps", count},
                {"trials", o.trials}};
  const std::uint64_t seed = ensure_seed(run, o.seed_opt, o.seed);
  const auto rows = concentration_profile([count](int d) { return fpf_family(d, count); }, rho,
                                          o.eps, o.dlist, o.trials, seed);
  emit_survey(run, rows, o.as_json, "conc");
}

struct JoinSurveyOpts {
  std::string group, name, out, record;
  std::vector<int> dlist;
  int n = 0;
  double delta = 0.0;
  long long trials = 0;
  unsigned long long seed = 0;
  bool as_json = false;
  CLI::Option* seed_opt = nullptr;
};

void run_join_survey(Run& run, const JoinSurveyOpts& o) {
  run.out_path = o.out;
  run.record_path = o.record;
  const GroupFile reg = resolve_group_arg(o.group);
  std::string gname;
  const GroupPtr prod = pick_group(reg, o.name, &gname);
  if (prod->kind() != GroupKind::FreeProduct)
    throw ParseError("join survey needs a free product group");
  const GroupPtr la = prod->left_factor();
  const GroupPtr rb = prod->right_factor();
  for (const int d : o.dlist)
    if (d < 1 || d % la->order() != 0 || d % rb->order() != 0)
      throw ParseError("every d must be a positive multiple of both factor orders");
  run.config = {{"group", gname}, {"n", o.n}, {"delta", o.delta}, {"d_list", o.dlist},
                {"trials", o.trials}};
  const std::uint64_t seed = ensure_seed(run, o.seed_opt, o.seed);
  const auto make = [&](int d, std::uint64_t s) {
    return free_join(regular_model(la, d / la->order()), regular_model(rb, d / rb->order()),
                     prod, o.n, s);
  };
  const auto rows = join_success_survey(make, all_generators(*prod), o.n, o.delta, o.dlist,
                                        o.trials, seed);
  emit_survey(run, rows, o.as_json, "join");
}

}  // namespace

int main(int argc, char** argv) {
  Run run;
  for (int i = 0; i < argc; ++i) run.argv.push_back(argv[i]);
  run.started = iso_now();

  CLI::App app{"sofic approximation workbench"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand("verify", "check a model against a defect threshold");
  verify->add_option("--model", vo.model, "model JSON file")->required();
  verify->add_option("--group", vo.group, "group file or zN, overrides the embedded registry");
  verify->add_option("--name", vo.name, "group name inside the registry");
  verify->add_option("--f", vo.f, "comma-separated words (default: all generators)");
  verify->add_option("--n", vo.n, "tuple length / ball radius")->required();
  verify->add_option("--delta", vo.delta, "defect threshold")->required();
  verify->add_option("--out", vo.out, "write the report to this file");
  verify->add_option("--record", vo.record, "write a run record here");
  verify->callback([&] { run_verify(run, vo); });

  // census / profile ----------------------------------------------------------
  CensusOpts co;
  CLI::App* census = app.add_subcommand("census", "count models in the strict regime");
  census->add_option("--group", co.group, "group file or zN")->required();
  census->add_option("--name", co.name, "group name inside the registry");
  census->add_option("--f", co.f, "generating words (default: all generators)");
  census->add_option("--e", co.e, "restriction words (default: --f)");
  census->add_option("--n", co.n, "ball radius")->required();
  census->add_option("--delta", co.delta, "strict-regime threshold")->required();
  census->add_option("--d", co.d, "single dimension");
  census->add_option("--d-list", co.dlist, "dimensions")->delimiter(',');
  census->add_flag("--orbit-mode", co.orbit, "count via conjugacy classes");
  census->add_option("--work-cap", co.work_cap, "candidate budget");
  census->add_option("--witnesses", co.witnesses, "write passing models into this directory");
  census->add_option("--out", co.out, "write the CSV to this file");
  census->add_option("--record", co.record, "write a run record here");
  census->add_flag("--stable-output", run.stable, "zero the timing column");
  census->callback([&] { run_census(run, co, false); });

  CensusOpts po;
  CLI::App* profile = app.add_subcommand("profile", "rate profile across dimensions");
  profile->add_option("--group", po.group, "group file or zN")->required();
  profile->add_option("--name", po.name, "group name inside the registry");
  profile->add_option("--f", po.f, "generating words (default: all generators)");
  profile->add_option("--e", po.e, "restriction words (default: --f)");
  profile->add_option("--n", po.n, "ball radius")->required();
  profile->add_option("--delta", po.delta, "strict-regime threshold")->required();
  profile->add_option("--d-list", po.dlist, "dimensions")->delimiter(',')->required();
  profile->add_flag("--orbit-mode", po.orbit, "count via conjugacy classes");
  profile->add_option("--work-cap", po.work_cap, "candidate budget");
  profile->add_option("--out", po.out, "write the CSV to this file");
  profile->add_option("--record", po.record, "write a run record here");
  profile->add_flag("--stable-output", run.stable, "zero the timing column");
  profile->callback([&] { run_census(run, po, true); });

  // construct ---------------------------------------------------------------
  CLI::App* construct = app.add_subcommand("construct", "build models");
  construct->require_subcommand(1);

  RegularOpts ro;
  CLI::App* regular = construct->add_subcommand("regular", "left translation model");
  regular->add_option("--group", ro.group, "group file or zN")->required();
  regular->add_option("--name", ro.name, "group name inside the registry");
  regular->add_option("--copies", ro.copies, "block copies")->check(CLI::PositiveNumber);
  regular->add_option("--out", ro.out, "output file");
  regular->add_option("--record", ro.record, "run record file");
  regular->callback([&] { run_regular(run, ro); });

  AmplifyOpts ao;
  CLI::App* amplify_cmd = construct->add_subcommand("amplify", "block-diagonal repetition");
  amplify_cmd->add_option("--model", ao.model, "model JSON file")->required();
  amplify_cmd->add_option("--copies", ao.copies, "block copies")
      ->required()
      ->check(CLI::PositiveNumber);
  amplify_cmd->add_option("--out", ao.out, "output file");
  amplify_cmd->add_option("--record", ao.record, "run record file");
  amplify_cmd->callback([&] { run_amplify(run, ao); });

  InduceOpts io;
  CLI::App* induce = construct->add_subcommand("induce", "induce along a finite-index subgroup");
  induce->add_option("--model", io.model, "subgroup model JSON file")->required();
  induce->add_option("--group", io.group, "target group file or zN")->required();
  induce->add_option("--name", io.name, "group name inside the registry");
  induce->add_option("--embed", io.embed, "subgroup element indices inside the target");
  induce->add_option("--index", io.index, "subgroup index m for mZ inside Z");
  induce->add_option("--transversal", io.transversal, "coset representatives")->required();
  induce->add_option("--out", io.out, "output file");
  induce->add_option("--record", io.record, "run record file");
  induce->callback([&] { run_induce(run, io); });

  QuasitileOpts qo;
  CLI::App* quasi = construct->add_subcommand("quasitile", "greedy tiling certificates");
  quasi->add_option("--model", qo.model, "model JSON file")->required();
  quasi->add_option("--tile", qo.tiles, "tile: a..b power interval or word list")->required();
  quasi->add_option("--eps", qo.eps, "overlap tolerance")->required();
  quasi->add_option("--f", qo.f, "ball alphabet (default: stored words)");
  quasi->add_option("--n", qo.n, "ball radius (default: longest tile word)");
  quasi->add_option("--out", qo.out, "output file");
  quasi->add_option("--record", qo.record, "run record file");
  quasi->callback([&] { run_quasitile(run, qo); });

  JoinOpts fo;
  CLI::App* freejoin = construct->add_subcommand("freejoin", "join models along a free product");
  freejoin->add_option("--group", fo.group, "registry declaring factors and product")->required();
  freejoin->add_option("--name", fo.name, "product name inside the registry");
  freejoin->add_option("--left", fo.left, "left factor model")->required();
  freejoin->add_option("--right", fo.right, "right factor model")->required();
  freejoin->add_option("--n", fo.n, "ball radius")->required()->check(CLI::NonNegativeNumber);
  fo.seed_opt = freejoin->add_option("--seed", fo.seed, "master seed");
  freejoin->add_option("--out", fo.out, "output file");
  freejoin->add_option("--record", fo.record, "run record file");
  freejoin->callback([&] { run_freejoin(run, fo); });

  JoinOpts mo;
  CLI::App* amjoin = construct->add_subcommand("amalgamjoin", "join models along an amalgam");
  amjoin->add_option("--group", mo.group, "registry declaring factors and amalgam")->required();
  amjoin->add_option("--name", mo.name, "amalgam name inside the registry");
  amjoin->add_option("--left", mo.left, "left factor model")->required();
  amjoin->add_option("--right", mo.right, "right factor model")->required();
  amjoin->add_option("--n", mo.n, "ball radius")->required()->check(CLI::NonNegativeNumber);
  mo.seed_opt = amjoin->add_option("--seed", mo.seed, "master seed");
  amjoin->add_option("--eps", mo.eps, "tolerated non-free fraction");
  amjoin->add_option("--delta", mo.delta, "threshold for the attached check");
  amjoin->add_flag("--skip-alignment", mo.skip_alignment, "leave the right side unaligned");
  amjoin->add_option("--out", mo.out, "output file");
  amjoin->add_option("--record", mo.record, "run record file");
  amjoin->callback([&] { run_amalgamjoin(run, mo); });

  ConjugatorOpts xo;
  CLI::App* conj = construct->add_subcommand("conjugator", "search for an aligning conjugator");
  conj->add_option("--a", xo.a, "model to conjugate")->required();
  conj->add_option("--b", xo.b, "target model")->required();
  conj->add_option("--group", xo.group, "registry binding both models");
  conj->add_option("--f", xo.f, "words to align (default: stored words of --a)");
  conj->add_option("--budget", xo.budget, "refinement evaluation budget")
      ->check(CLI::NonNegativeNumber);
  conj->add_option("--out", xo.out, "output file");
  conj->add_option("--record", xo.record, "run record file");
  conj->callback([&] { run_conjugator(run, xo); });

  BernoulliOpts bo;
  CLI::App* bern = construct->add_subcommand("bernoulli", "i.i.d. labeling action model");
  bern->add_option("--model", bo.model, "permutation model JSON file")->required();
  bern->add_option("--nu", bo.nu, "cell weights, e.g. 0.5,0.5")->required();
  bo.seed_opt = bern->add_option("--seed", bo.seed, "master seed");
  bern->add_option("--out", bo.out, "output file");
  bern->add_option("--record", bo.record, "run record file");
  bern->callback([&] { run_bernoulli(run, bo); });

  // survey --------------------------------------------------------------------
  CLI::App* survey = app.add_subcommand("survey", "Monte Carlo surveys");
  survey->require_subcommand(1);

  TraceOpts to;
  CLI::App* trace_cmd = survey->add_subcommand("trace", "tr(U A V*) acceptance fraction");
  trace_cmd->add_option("--d", to.d, "dimension")->required()->check(CLI::PositiveNumber);
  trace_cmd->add_option("--eps", to.eps, "acceptance threshold")->required();
  CLI::Option* trace_trials =
      trace_cmd->add_option("--trials", to.trials, "sample count")->check(CLI::PositiveNumber);
  to.seed_opt = trace_cmd->add_option("--seed", to.seed, "master seed");
  CLI::Option* exh = trace_cmd->add_flag("--exhaustive", to.exhaustive, "iterate all pairs");
  exh->excludes(trace_trials);
  exh->excludes(to.seed_opt);
  trace_cmd->add_flag("--json", to.as_json, "JSON output");
  trace_cmd->add_option("--out", to.out, "output file");
  trace_cmd->add_option("--record", to.record, "run record file");
  trace_cmd->callback([&] { run_trace_survey(run, to); });

  AltOpts lo;
  CLI::App* alt = survey->add_subcommand("alt", "alternating product trace mean");
  alt->add_option("--rho", lo.rho, "slot assignment, e.g. 1,2,1,2")->required();
  alt->add_option("--d", lo.d, "dimension for the built-in involution family");
  alt->add_option("--fpf", lo.fpf, "involution family size")->check(CLI::PositiveNumber);
  alt->add_option("--model", lo.model, "take maps from this model instead");
  alt->add_option("--words", lo.words, "comma-separated words for --model");
  alt->add_option("--trials", lo.trials, "sample count")
      ->required()
      ->check(CLI::PositiveNumber);
  lo.seed_opt = alt->add_option("--seed", lo.seed, "master seed");
  alt->add_flag("--json", lo.as_json, "JSON output");
  alt->add_option("--out", lo.out, "output file");
  alt->add_option("--record", lo.record, "run record file");
  alt->callback([&] { run_alt_survey(run, lo); });

  ConcOpts oo;
  CLI::App* conc = survey->add_subcommand("conc", "acceptance fraction across dimensions");
  conc->add_option("--rho", oo.rho, "slot assignment")->required();
  conc->add_option("--eps", oo.eps, "acceptance threshold")->required();
  conc->add_option("--d-list", oo.dlist, "dimensions")->delimiter(',')->required();
  conc->add_option("--fpf", oo.fpf, "involution family size")->check(CLI::PositiveNumber);
  conc->add_option("--trials", oo.trials, "samples per dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  oo.seed_opt = conc->add_option("--seed", oo.seed, "master seed");
  conc->add_flag("--json", oo.as_json, "JSON output");
  conc->add_option("--out", oo.out, "output file");
  conc->add_option("--record", oo.record, "run record file");
  conc->callback([&] { run_conc_survey(run, oo); });

  JoinSurveyOpts jo;
  CLI::App* joinsv = survey->add_subcommand("join", "free join success trend");
  joinsv->add_option("--group", jo.group, "registry with the free product")->required();
  joinsv->add_option("--name", jo.name, "product name inside the registry");
  joinsv->add_option("--n", jo.n, "ball radius")->required()->check(CLI::PositiveNumber);
  joinsv->add_option("--delta", jo.delta, "defect threshold")->required();
  joinsv->add_option("--d-list", jo.dlist, "dimensions")->delimiter(',')->required();
  joinsv->add_option("--trials", jo.trials, "joins per dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  jo.seed_opt = joinsv->add_option("--seed", jo.seed, "master seed");
  joinsv->add_flag("--json", jo.as_json, "JSON output");
  joinsv->add_option("--out", jo.out, "output file");
  joinsv->add_option("--record", jo.record, "run record file");
  joinsv->callback([&] { run_join_survey(run, jo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const sofic::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sofic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
