#include "sofic/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "sofic/errors.hpp"
#include "sofic/parallel.hpp"

namespace sofic {

namespace {

// Candidate images use 0-based points internally; Perm is 1-based.

struct AlphaSrc {
  int kind = 0;     // 0 identity, 1 stored, 2 inverse of stored
  int unknown = -1; // index into Frame::unknowns for kinds 1 and 2
};

struct Frame {
  const Group* G = nullptr;
  int d = 0;
  int n = 0;
  Ball B;
  std::vector<Word> unknowns; // sorted distinct nonidentity normal forms of F
  std::vector<AlphaSrc> alpha_src;
  std::vector<int> elem_unknown;       // stored unknown per element, or -1
  std::vector<int> depth;              // BFS depth per element
  std::vector<std::vector<int>> trans; // element x alphabet -> element; rows only below depth n
  std::vector<int> e_idx;              // E as unknown indices, sorted distinct
  bool e_equals_f = false;
};

int find_word(const std::vector<Word>& sorted, const Word& w) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
  if (it != sorted.end() && *it == w) return static_cast<int>(it - sorted.begin());
  return -1;
}

Frame build_frame(const GroupPtr& g, const std::vector<Word>& f_words,
                  const std::vector<Word>& e_words, int n, int d) {
  Frame fr;
  fr.G = g.get();
  fr.d = d;
  fr.n = n;
  for (const Word& f : f_words) {
    Word w = g->normal_form(f);
    if (!g->is_identity(w)) fr.unknowns.push_back(std::move(w));
  }
  std::sort(fr.unknowns.begin(), fr.unknowns.end());
  fr.unknowns.erase(std::unique(fr.unknowns.begin(), fr.unknowns.end()), fr.unknowns.end());
  for (const Word& e : e_words) {
    Word w = g->normal_form(e);
    if (g->is_identity(w)) continue;
    const int u = find_word(fr.unknowns, w);
    if (u < 0) throw Error("enumerate_ga: E must be a subset of F");
    fr.e_idx.push_back(u);
  }
  std::sort(fr.e_idx.begin(), fr.e_idx.end());
  fr.e_idx.erase(std::unique(fr.e_idx.begin(), fr.e_idx.end()), fr.e_idx.end());
  fr.e_equals_f = fr.e_idx.size() == fr.unknowns.size();

  fr.B = ball(*g, f_words, n);
  const size_t na = fr.B.alphabet.size();
  const size_t ne = fr.B.elements.size();
  fr.alpha_src.resize(na);
  for (size_t s = 0; s < na; ++s) {
    const Word& w = fr.B.alphabet[s];
    int u = find_word(fr.unknowns, w);
    if (u >= 0) {
      fr.alpha_src[s] = {1, u};
      continue;
    }
    if (g->is_identity(w)) {
      fr.alpha_src[s] = {0, -1};
      continue;
    }
    u = find_word(fr.unknowns, g->normal_form(g->inverse(w)));
    if (u < 0) throw Error("enumerate_ga: alphabet entry without a stored source");
    fr.alpha_src[s] = {2, u};
  }
  fr.elem_unknown.resize(ne);
  fr.depth.assign(ne, 0);
  for (size_t i = 0; i < ne; ++i) {
    fr.elem_unknown[i] = find_word(fr.unknowns, fr.B.elements[i]);
    if (i > 0) fr.depth[i] = fr.depth[static_cast<size_t>(fr.B.from[i].parent)] + 1;
  }
  fr.trans.assign(ne, {});
  for (size_t i = 0; i < ne; ++i) {
    if (fr.depth[i] >= n) continue;
    auto& row = fr.trans[i];
    row.assign(na, -1);
    for (size_t s = 0; s < na; ++s) {
      const Word w = g->multiply(fr.B.elements[i], fr.B.alphabet[s]);
      const auto it = fr.B.index.find(w);
      if (it != fr.B.index.end()) row[s] = it->second;
    }
  }
  return fr;
}

struct Scratch {
  std::vector<std::vector<int32_t>> alpha_img, elem_img;
  std::vector<char> alpha_det, elem_det;

  void init(const Frame& fr) {
    alpha_img.assign(fr.B.alphabet.size(), std::vector<int32_t>(static_cast<size_t>(fr.d)));
    elem_img.assign(fr.B.elements.size(), std::vector<int32_t>(static_cast<size_t>(fr.d)));
    alpha_det.assign(fr.B.alphabet.size(), 0);
    elem_det.assign(fr.B.elements.size(), 0);
  }
};

// Exact ball check on the first m assigned generators. Undetermined images
// are skipped; with all generators assigned this is the full predicate:
// every nonidentity ball element fixed-point-free (n >= 1) and every
// one-step product relation exact, which by prefix induction is equivalent
// to exactness of every length-n tuple product.
bool strict_pass(const Frame& fr, const std::vector<std::vector<int32_t>>& cand, int m,
                 Scratch& ws) {
  const int d = fr.d;
  const size_t na = fr.B.alphabet.size();
  const size_t ne = fr.B.elements.size();
  for (size_t s = 0; s < na; ++s) {
    const AlphaSrc& src = fr.alpha_src[s];
    auto& img = ws.alpha_img[s];
    ws.alpha_det[s] = 0;
    if (src.kind == 0) {
      std::iota(img.begin(), img.end(), 0);
      ws.alpha_det[s] = 1;
    } else if (src.unknown < m) {
      const auto& c = cand[static_cast<size_t>(src.unknown)];
      if (src.kind == 1) {
        img = c;
      } else {
        for (int32_t x = 0; x < d; ++x) img[static_cast<size_t>(c[static_cast<size_t>(x)])] = x;
      }
      ws.alpha_det[s] = 1;
    }
  }
  std::iota(ws.elem_img[0].begin(), ws.elem_img[0].end(), 0);
  ws.elem_det[0] = 1;
  for (size_t i = 1; i < ne; ++i) {
    ws.elem_det[i] = 0;
    const int eu = fr.elem_unknown[i];
    if (eu >= 0) {
      if (eu < m) {
        ws.elem_img[i] = cand[static_cast<size_t>(eu)];
        ws.elem_det[i] = 1;
      }
      continue;
    }
    const size_t p = static_cast<size_t>(fr.B.from[i].parent);
    const size_t s = static_cast<size_t>(fr.B.from[i].step);
    if (!ws.elem_det[p] || !ws.alpha_det[s]) continue;
    const auto& pi = ws.elem_img[p];
    const auto& si = ws.alpha_img[s];
    auto& img = ws.elem_img[i];
    for (int32_t c = 0; c < d; ++c)
      img[static_cast<size_t>(c)] = pi[static_cast<size_t>(si[static_cast<size_t>(c)])];
    ws.elem_det[i] = 1;
  }
  if (fr.n >= 1) {
    for (size_t i = 1; i < ne; ++i) {
      if (!ws.elem_det[i]) continue;
      const auto& img = ws.elem_img[i];
      for (int32_t c = 0; c < d; ++c)
        if (img[static_cast<size_t>(c)] == c) return false;
    }
  }
  if (fr.n >= 2) {
    for (size_t i = 0; i < ne; ++i) {
      if (fr.depth[i] >= fr.n || !ws.elem_det[i]) continue;
      const auto& wi = ws.elem_img[i];
      for (size_t s = 0; s < na; ++s) {
        if (!ws.alpha_det[s]) continue;
        const int t = fr.trans[i][s];
        if (t < 0 || !ws.elem_det[static_cast<size_t>(t)]) continue;
        const auto& wt = ws.elem_img[static_cast<size_t>(t)];
        const auto& si = ws.alpha_img[s];
        for (int32_t c = 0; c < d; ++c)
          if (wt[static_cast<size_t>(c)] != wi[static_cast<size_t>(si[static_cast<size_t>(c)])])
            return false;
      }
    }
  }
  return true;
}

bool has_fixed_point(const std::vector<int32_t>& img) {
  for (int32_t c = 0; c < static_cast<int32_t>(img.size()); ++c)
    if (img[static_cast<size_t>(c)] == c) return true;
  return false;
}

struct BranchOut {
  BigInt count = 0;
  std::set<std::vector<int32_t>> rests;                 // flattened E-restriction keys
  std::vector<std::vector<std::vector<int32_t>>> wits;  // passing candidate tuples
  bool truncated = false;
};

void record_pass(const Frame& fr, const CensusOptions& opt,
                 const std::vector<std::vector<int32_t>>& cand, BranchOut& out) {
  if (fr.e_equals_f) {
    out.count += 1;
  } else {
    std::vector<int32_t> key;
    key.reserve(fr.e_idx.size() * static_cast<size_t>(fr.d));
    for (const int u : fr.e_idx) {
      const auto& c = cand[static_cast<size_t>(u)];
      key.insert(key.end(), c.begin(), c.end());
    }
    out.rests.insert(std::move(key));
  }
  if (opt.collect_witnesses) {
    if (out.wits.size() < opt.witness_cap) out.wits.push_back(cand);
    else out.truncated = true;
  }
}

// Candidates in lexicographic image order; a nonnegative fixed_first pins
// the image of point 0 (the subtree split used for parallelism).
template <class Body>
void for_candidates(int d, int fixed_first, Body&& body) {
  if (fixed_first >= 0) {
    std::vector<int32_t> rest;
    rest.reserve(static_cast<size_t>(d) - 1);
    for (int32_t x = 0; x < d; ++x)
      if (x != fixed_first) rest.push_back(x);
    std::vector<int32_t> img(static_cast<size_t>(d));
    img[0] = fixed_first;
    do {
      std::copy(rest.begin(), rest.end(), img.begin() + 1);
      body(img);
    } while (std::next_permutation(rest.begin(), rest.end()));
  } else {
    std::vector<int32_t> img(static_cast<size_t>(d));
    std::iota(img.begin(), img.end(), 0);
    do {
      body(img);
    } while (std::next_permutation(img.begin(), img.end()));
  }
}

void dfs_level(const Frame& fr, const CensusOptions& opt, std::vector<std::vector<int32_t>>& cand,
               size_t k, int fixed_first, Scratch& ws, BranchOut& out) {
  for_candidates(fr.d, k == 0 ? fixed_first : -1, [&](const std::vector<int32_t>& img) {
    if (fr.n >= 1 && has_fixed_point(img)) return;
    cand[k] = img;
    if (!strict_pass(fr, cand, static_cast<int>(k) + 1, ws)) return;
    if (k + 1 == fr.unknowns.size()) record_pass(fr, opt, cand, out);
    else dfs_level(fr, opt, cand, k + 1, fixed_first, ws, out);
  });
}

SoficAssignment make_witness(const GroupPtr& g, int d, const Frame& fr,
                             const std::vector<std::vector<int32_t>>& cand) {
  SoficAssignment a;
  a.group = g;
  a.d = d;
  for (size_t j = 0; j < fr.unknowns.size(); ++j) {
    std::vector<int32_t> img(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c)
      img[static_cast<size_t>(c)] = cand[j][static_cast<size_t>(c)] + 1;
    a.set_image(fr.unknowns[j], Perm::from_images(d, std::move(img)));
  }
  return a;
}

BigInt partition_count(int d) {
  std::vector<BigInt> dp(static_cast<size_t>(d) + 1, 0);
  dp[0] = 1;
  for (int part = 1; part <= d; ++part)
    for (int j = part; j <= d; ++j)
      dp[static_cast<size_t>(j)] += dp[static_cast<size_t>(j - part)];
  return dp[static_cast<size_t>(d)];
}

}  // namespace

CensusResult enumerate_ga(GroupPtr g, const std::vector<Word>& f_words,
                          const std::vector<Word>& e_words, int n, double delta, int d,
                          const CensusOptions& opt) {
  if (!g) throw Error("enumerate_ga: null group");
  if (d < 1) throw Error("enumerate_ga: d must be at least 1");
  if (n < 0) throw Error("enumerate_ga: n must be nonnegative");
  if (!(delta > 0.0) || delta >= std::sqrt(2.0 / d))
    throw UnsupportedRegime("enumerate_ga: needs the strict regime 0 < delta < sqrt(2/d)");
  const auto t0 = std::chrono::steady_clock::now();
  const Frame fr = build_frame(g, f_words, e_words, n, d);

  CensusResult res;
  BigInt count = 0;

  if (opt.mode == CensusMode::OrbitDecomposed) {
    if (fr.unknowns.size() != 1 || !fr.e_equals_f)
      throw OrbitError("enumerate_ga: orbit-decomposed mode needs a single generator with E = F");
    const BigInt parts_total = partition_count(d);
    if (parts_total > opt.work_cap)
      throw WorkCapExceeded("enumerate_ga: partition count " + to_decimal(parts_total) +
                            " exceeds work cap " + std::to_string(opt.work_cap));
    Scratch ws;
    ws.init(fr);
    std::vector<std::vector<int32_t>> cand(1, std::vector<int32_t>(static_cast<size_t>(d)));
    std::vector<int> parts;
    // Ascending partitions of d; parts of size 1 are fixed points and die
    // on the trace condition, so they are skipped at the source for n >= 1.
    std::function<void(int, int)> gen = [&](int rem, int min_part) {
      if (rem == 0) {
        auto& img = cand[0];
        int pos = 0;
        for (const int len : parts) {
          for (int i = 0; i + 1 < len; ++i) img[static_cast<size_t>(pos + i)] = pos + i + 1;
          img[static_cast<size_t>(pos + len - 1)] = pos;
          pos += len;
        }
        if (strict_pass(fr, cand, 1, ws)) {
          count += conjugacy_class_size(d, parts);
          if (opt.collect_witnesses) {
            if (res.witnesses.size() < opt.witness_cap)
              res.witnesses.push_back(make_witness(g, d, fr, cand));
            else
              res.witnesses_truncated = true;
          }
        }
        return;
      }
      for (int p = min_part; p <= rem; ++p) {
        parts.push_back(p);
        gen(rem - p, p);
        parts.pop_back();
      }
    };
    gen(d, fr.n >= 1 ? 2 : 1);
  } else if (fr.unknowns.empty()) {
    count = 1;
    if (opt.collect_witnesses) {
      SoficAssignment a;
      a.group = g;
      a.d = d;
      res.witnesses.push_back(std::move(a));
    }
  } else {
    const BigInt worst = pow_int(factorial(static_cast<unsigned>(d)),
                                 static_cast<unsigned>(fr.unknowns.size()));
    if (worst > opt.work_cap)
      throw WorkCapExceeded("enumerate_ga: (d!)^|F| = " + to_decimal(worst) +
                            " exceeds work cap " + std::to_string(opt.work_cap));
    auto branches = parallel_map<BranchOut>(static_cast<size_t>(d), [&](size_t v) {
      BranchOut out;
      Scratch ws;
      ws.init(fr);
      std::vector<std::vector<int32_t>> cand(fr.unknowns.size());
      dfs_level(fr, opt, cand, 0, static_cast<int>(v), ws, out);
      return out;
    });
    std::set<std::vector<int32_t>> rests;
    for (auto& br : branches) {
      count += br.count;
      rests.merge(br.rests);
      if (!opt.collect_witnesses) continue;
      res.witnesses_truncated = res.witnesses_truncated || br.truncated;
      for (auto& cw : br.wits) {
        if (res.witnesses.size() >= opt.witness_cap) {
          res.witnesses_truncated = true;
          break;
        }
        res.witnesses.push_back(make_witness(g, d, fr, cw));
      }
    }
    if (!fr.e_equals_f) count = static_cast<BigInt>(rests.size());
  }

  CountRecord& rec = res.record;
  rec.group = g->name();
  rec.f_words = f_words;
  rec.e_words = e_words;
  {
    std::string ft, et;
    for (const Word& w : f_words) {
      if (!ft.empty()) ft += ' ';
      ft += format_word(*g, w);
    }
    for (const Word& w : e_words) {
      if (!et.empty()) et += ' ';
      et += format_word(*g, w);
    }
    rec.f_text = std::move(ft);
    rec.e_text = std::move(et);
  }
  rec.n = n;
  rec.delta = delta;
  rec.d = d;
  rec.count = count;
  if (d >= 2) {
    rec.rate = rate_of(count, d, &rec.rate_minus_inf);
  } else {
    rec.rate_minus_inf = (count == 0);
    rec.rate = rec.rate_minus_inf ? -std::numeric_limits<double>::infinity() : 0.0;
  }
  rec.mode = opt.mode;
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<CountRecord> dimension_profile(GroupPtr g, const std::vector<Word>& f_words,
                                           const std::vector<Word>& e_words, int n, double delta,
                                           const std::vector<int>& d_list,
                                           const CensusOptions& opt) {
  std::vector<CountRecord> out;
  out.reserve(d_list.size());
  for (const int d : d_list)
    out.push_back(enumerate_ga(g, f_words, e_words, n, delta, d, opt).record);
  return out;
}

int packing_number(const std::vector<SoficAssignment>& maps, const std::vector<Word>& e_words,
                   double eps) {
  if (eps < 0.0) throw Error("packing_number: eps must be nonnegative");
  std::vector<size_t> kept;
  for (size_t i = 0; i < maps.size(); ++i) {
    bool separated = true;
    for (const size_t k : kept) {
      if (rho_restriction(maps[i], maps[k], e_words) <= eps) {
        separated = false;
        break;
      }
    }
    if (separated) kept.push_back(i);
  }
  return static_cast<int>(kept.size());
}

double rate_of(const BigInt& count, int d, bool* minus_inf) {
  if (d < 2) throw Error("rate_of: d must be at least 2");
  if (count < 0) throw Error("rate_of: negative count");
  if (minus_inf) *minus_inf = (count == 0);
  if (count == 0) return -std::numeric_limits<double>::infinity();
  if (count == 1) return 0.0;
  return log_big(count) / (static_cast<double>(d) * std::log(static_cast<double>(d)));
}

BigInt upper_bound_count(int d, int k) {
  if (d < 1 || k < 0) throw Error("upper_bound_count: needs d >= 1, k >= 0");
  return pow_int(partial_perm_count(static_cast<unsigned>(d)), static_cast<unsigned>(k));
}

BigInt upper_bound_count_coarse(int d, int k) {
  if (d < 1 || k < 0) throw Error("upper_bound_count: needs d >= 1, k >= 0");
  const BigInt base = binomial(2 * static_cast<unsigned>(d), static_cast<unsigned>(d)) *
                      factorial(static_cast<unsigned>(d));
  return pow_int(base, static_cast<unsigned>(k));
}

std::vector<PartialPerm> all_partial_perms(int d) {
  if (d < 1 || d > 12) throw Error("all_partial_perms: needs 1 <= d <= 12");
  std::vector<PartialPerm> out;
  std::vector<int32_t> img(static_cast<size_t>(d), 0);
  std::vector<char> used(static_cast<size_t>(d) + 1, 0);
  std::function<void(int)> rec = [&](int c) {
    if (c == d) {
      out.push_back(PartialPerm::from_images(d, img));
      return;
    }
    img[static_cast<size_t>(c)] = 0;
    rec(c + 1);
    for (int32_t v = 1; v <= d; ++v) {
      if (used[static_cast<size_t>(v)]) continue;
      used[static_cast<size_t>(v)] = 1;
      img[static_cast<size_t>(c)] = v;
      rec(c + 1);
      img[static_cast<size_t>(c)] = 0;
      used[static_cast<size_t>(v)] = 0;
    }
  };
  rec(0);
  return out;
}

Perm canonical_cycle_perm(int d, const std::vector<int>& lengths) {
  if (d < 1) throw Error("canonical_cycle_perm: d must be at least 1");
  std::vector<int> sorted = lengths;
  std::sort(sorted.begin(), sorted.end());
  int sum = 0;
  for (const int len : sorted) {
    if (len < 1) throw Error("canonical_cycle_perm: cycle lengths must be positive");
    sum += len;
  }
  if (sum != d) throw Error("canonical_cycle_perm: cycle lengths must sum to d");
  std::vector<int32_t> img(static_cast<size_t>(d));
  int pos = 1;
  for (const int len : sorted) {
    for (int i = 0; i + 1 < len; ++i) img[static_cast<size_t>(pos + i - 1)] = pos + i + 1;
    img[static_cast<size_t>(pos + len - 2)] = pos;
    pos += len;
  }
  return Perm::from_images(d, std::move(img));
}

Perm lex_least_conjugate(const Perm& p) {
  const int d = p.dim();
  std::vector<int32_t> gamma(static_cast<size_t>(d) + 1, 0);
  std::vector<int32_t> ginv(static_cast<size_t>(d) + 1, 0);
  std::vector<int32_t> t(static_cast<size_t>(d) + 1, 0);
  std::vector<int32_t> best;

  struct Opt {
    int32_t tau, a, s, v;  // v = 0: no second binding
  };
  std::function<void(int)> dfs = [&](int i) {
    if (i > d) {
      std::vector<int32_t> full(t.begin() + 1, t.end());
      if (best.empty() || full < best) best = std::move(full);
      return;
    }
    std::vector<Opt> opts;
    auto consider = [&](int32_t a) {
      const int32_t s = p.image(a);
      if (gamma[static_cast<size_t>(s)] != 0) {
        opts.push_back({gamma[static_cast<size_t>(s)], a, s, 0});
      } else if (s == a) {
        opts.push_back({static_cast<int32_t>(i), a, s, 0});
      } else {
        for (int32_t v = 1; v <= d; ++v) {
          if (v == i || ginv[static_cast<size_t>(v)] != 0) continue;
          opts.push_back({v, a, s, v});
        }
      }
    };
    if (ginv[static_cast<size_t>(i)] != 0) {
      consider(ginv[static_cast<size_t>(i)]);
    } else {
      for (int32_t a = 1; a <= d; ++a)
        if (gamma[static_cast<size_t>(a)] == 0) consider(a);
    }
    std::stable_sort(opts.begin(), opts.end(),
                     [](const Opt& x, const Opt& y) { return x.tau < y.tau; });
    for (const Opt& o : opts) {
      // Pruning against best is only sound while the prefix built so far
      // equals best's prefix; once it is strictly smaller every completion
      // wins. best moves during the loop, so recheck per option.
      bool tight = !best.empty();
      for (int j = 1; tight && j < i; ++j)
        if (t[static_cast<size_t>(j)] != best[static_cast<size_t>(j) - 1]) tight = false;
      if (tight && o.tau > best[static_cast<size_t>(i) - 1]) break;
      const bool bind_a = gamma[static_cast<size_t>(o.a)] == 0;
      if (bind_a) {
        gamma[static_cast<size_t>(o.a)] = static_cast<int32_t>(i);
        ginv[static_cast<size_t>(i)] = o.a;
      }
      if (o.v != 0) {
        gamma[static_cast<size_t>(o.s)] = o.v;
        ginv[static_cast<size_t>(o.v)] = o.s;
      }
      t[static_cast<size_t>(i)] = o.tau;
      dfs(i + 1);
      if (o.v != 0) {
        gamma[static_cast<size_t>(o.s)] = 0;
        ginv[static_cast<size_t>(o.v)] = 0;
      }
      if (bind_a) {
        gamma[static_cast<size_t>(o.a)] = 0;
        ginv[static_cast<size_t>(i)] = 0;
      }
    }
  };
  dfs(1);
  return Perm::from_images(d, std::move(best));
}

BigInt conjugacy_class_size(int d, const std::vector<int>& lengths) {
  int sum = 0;
  std::map<int, int> mult;
  for (const int len : lengths) {
    if (len < 1) throw Error("conjugacy_class_size: cycle lengths must be positive");
    sum += len;
    ++mult[len];
  }
  if (sum != d) throw Error("conjugacy_class_size: cycle lengths must sum to d");
  BigInt denom = 1;
  for (const auto& [len, m] : mult)
    denom *= pow_int(BigInt(len), static_cast<unsigned>(m)) * factorial(static_cast<unsigned>(m));
  return factorial(static_cast<unsigned>(d)) / denom;
}

std::string census_mode_name(CensusMode m) {
  return m == CensusMode::OrbitDecomposed ? "orbit-decomposed" : "exhaustive";
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}
}  // namespace

std::string census_csv_header() { return "group,F,E,n,delta,d,count,rate,mode,seconds"; }

std::string census_csv_row(const CountRecord& r) {
  char buf[64];
  std::ostringstream os;
  os << csv_field(r.group) << ',' << csv_field(r.f_text) << ',' << csv_field(r.e_text) << ','
     << r.n << ',';
  std::snprintf(buf, sizeof buf, "%.9g", r.delta);
  os << buf << ',' << r.d << ',' << to_decimal(r.count) << ',';
  if (r.rate_minus_inf) {
    os << "-inf";
  } else {
    std::snprintf(buf, sizeof buf, "%.9g", r.rate);
    os << buf;
  }
  os << ',' << census_mode_name(r.mode) << ',';
  std::snprintf(buf, sizeof buf, "%.6g", r.seconds);
  os << buf;
  return os.str();
}

}  // namespace sofic
