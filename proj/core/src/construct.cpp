#include "sofic/construct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "sofic/rng.hpp"

namespace sofic {

namespace {

Perm letter_image(const SoficAssignment& a, const Group& g, Letter l) {
  const Word w = g.normal_form(Word{{l}});
  if (w.empty()) return Perm::identity(a.d);
  if (const Perm* p = a.stored(w)) return *p;
  const Word wi = g.normal_form(g.inverse(w));
  if (const Perm* p = a.stored(wi)) return p->inverse();
  throw MissingImage("word_image: no stored image for " + format_word(g, w));
}

Perm perm_power(const Perm& p, long long e) {
  const Perm base = e < 0 ? p.inverse() : p;
  long long k = e < 0 ? -e : e;
  Perm acc = Perm::identity(p.dim());
  for (; k > 0; --k) acc = compose(acc, base);
  return acc;
}

int checked_dim(long long d, const char* who) {
  if (d < 1 || d > kMaxDim) throw DimensionMismatch(std::string(who) + ": dimension out of range");
  return static_cast<int>(d);
}

// Syllable evaluation shared by the joins: left syllables through the left
// model, right syllables through v * omega * v^{-1}. Stores every nonidentity
// element of the radius-n ball over the product's generators.
SoficAssignment build_join(GroupPtr product, const SoficAssignment& left,
                           const SoficAssignment& right, const Perm& v, int n) {
  std::vector<Word> f;
  for (int i = 0; i < product->generator_count(); ++i) f.push_back(Word::single(i));
  const Ball b = ball(*product, f, n);
  SoficAssignment out;
  out.group = product;
  out.d = left.d;
  for (size_t i = 1; i < b.elements.size(); ++i) {
    Perm acc = Perm::identity(out.d);
    for (const auto& [side, local] : product->syllables(b.elements[i])) {
      const Perm p = side == 0 ? word_image(left, local)
                               : conjugate(v, word_image(right, local));
      acc = compose(acc, p);
    }
    out.set_image(b.elements[i], std::move(acc));
  }
  return out;
}

// Cycles of a full permutation, each starting at its least point, listed by
// start point ascending.
std::vector<std::vector<int>> cycles_of(const Perm& p) {
  std::vector<char> seen(static_cast<size_t>(p.dim()) + 1, 0);
  std::vector<std::vector<int>> out;
  for (int c = 1; c <= p.dim(); ++c) {
    if (seen[static_cast<size_t>(c)]) continue;
    std::vector<int> cyc;
    for (int x = c; !seen[static_cast<size_t>(x)]; x = p.image(x)) {
      seen[static_cast<size_t>(x)] = 1;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

}  // namespace

Perm word_image(const SoficAssignment& a, const Word& w) {
  if (!a.group) throw Error("word_image: assignment has no group");
  const Group& g = *a.group;
  const Word nf = g.normal_form(w);
  if (nf.empty()) return Perm::identity(a.d);
  if (const Perm* p = a.stored(nf)) return *p;
  Perm acc = Perm::identity(a.d);
  for (const Letter& l : nf.ls) acc = compose(acc, letter_image(a, g, l));
  return acc;
}

SoficAssignment regular_model(GroupPtr g, int copies) {
  if (!g || g->kind() != GroupKind::FiniteTable)
    throw GroupKindError("regular_model: needs a finite table group");
  if (copies < 1) throw Error("regular_model: copies must be positive");
  const int q = g->order();
  const int d = checked_dim(static_cast<long long>(q) * copies, "regular_model");
  SoficAssignment out;
  out.group = g;
  out.d = d;
  for (int s = 1; s < q; ++s) {
    std::vector<int32_t> img(static_cast<size_t>(d));
    for (int j = 0; j < copies; ++j)
      for (int x = 0; x < q; ++x)
        img[static_cast<size_t>(j * q + x)] = j * q + g->table_mul(s, x) + 1;
    out.set_image(g->element_word(s), Perm::from_images(d, std::move(img)));
  }
  return out;
}

SoficAssignment amplify(const SoficAssignment& a, int copies) {
  if (copies < 1) throw Error("amplify: copies must be positive");
  const int d = checked_dim(static_cast<long long>(a.d) * copies, "amplify");
  SoficAssignment out;
  out.group = a.group;
  out.d = d;
  for (const auto& [w, p] : a.images) {
    std::vector<int32_t> img(static_cast<size_t>(d));
    for (int j = 0; j < copies; ++j)
      for (int c = 1; c <= a.d; ++c)
        img[static_cast<size_t>(j * a.d + c - 1)] = j * a.d + p.image(c);
    out.set_image(w, Perm::from_images(d, std::move(img)));
  }
  return out;
}

SoficAssignment induce_from_subgroup(const SoficAssignment& h_model, GroupPtr g,
                                     const std::vector<int>& h_embed,
                                     const std::vector<int>& transversal) {
  if (!g || g->kind() != GroupKind::FiniteTable)
    throw GroupKindError("induce_from_subgroup: needs a finite table group");
  if (!h_model.group || h_model.group->kind() != GroupKind::FiniteTable)
    throw GroupKindError("induce_from_subgroup: subgroup model must be over a finite table group");
  const Group& big = *g;
  const Group& sub = *h_model.group;
  const int q = sub.order();
  const int nbig = big.order();
  if (static_cast<int>(h_embed.size()) != q)
    throw TransversalError("induce_from_subgroup: embedding size differs from subgroup order");
  std::vector<int> emb_inv(static_cast<size_t>(nbig), -1);
  for (int x = 0; x < q; ++x) {
    const int e = h_embed[static_cast<size_t>(x)];
    if (e < 0 || e >= nbig || emb_inv[static_cast<size_t>(e)] != -1)
      throw TransversalError("induce_from_subgroup: embedding is not injective into the group");
    emb_inv[static_cast<size_t>(e)] = x;
  }
  if (h_embed[0] != 0)
    throw TransversalError("induce_from_subgroup: embedding must fix the identity");
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      if (big.table_mul(h_embed[static_cast<size_t>(x)], h_embed[static_cast<size_t>(y)]) !=
          h_embed[static_cast<size_t>(sub.table_mul(x, y))])
        throw TransversalError("induce_from_subgroup: embedding is not a homomorphism");

  const int m = static_cast<int>(transversal.size());
  if (m < 1 || m * q != nbig)
    throw TransversalError("induce_from_subgroup: transversal size differs from the index");
  // beta: element -> transversal slot of its left coset; hpart: the subgroup
  // index of rep^{-1} * element. Overlapping cosets surface as a refill.
  std::vector<int> beta(static_cast<size_t>(nbig), -1);
  std::vector<int> hpart(static_cast<size_t>(nbig), -1);
  for (int ti = 0; ti < m; ++ti) {
    const int r = transversal[static_cast<size_t>(ti)];
    if (r < 0 || r >= nbig) throw TransversalError("induce_from_subgroup: representative out of range");
    for (int x = 0; x < q; ++x) {
      const int el = big.table_mul(r, h_embed[static_cast<size_t>(x)]);
      if (beta[static_cast<size_t>(el)] != -1)
        throw TransversalError("induce_from_subgroup: representatives share a coset");
      beta[static_cast<size_t>(el)] = ti;
      hpart[static_cast<size_t>(el)] = x;
    }
  }

  std::vector<Perm> sh;
  sh.reserve(static_cast<size_t>(q));
  for (int x = 0; x < q; ++x) sh.push_back(word_image(h_model, sub.element_word(x)));

  const int d = checked_dim(static_cast<long long>(h_model.d) * m, "induce_from_subgroup");
  SoficAssignment out;
  out.group = g;
  out.d = d;
  for (int s = 1; s < nbig; ++s) {
    std::vector<int32_t> img(static_cast<size_t>(d));
    for (int ti = 0; ti < m; ++ti) {
      const int x = big.table_mul(s, transversal[static_cast<size_t>(ti)]);
      const int tj = beta[static_cast<size_t>(x)];
      const Perm& p = sh[static_cast<size_t>(hpart[static_cast<size_t>(x)])];
      for (int c = 1; c <= h_model.d; ++c)
        img[static_cast<size_t>(ti * h_model.d + c - 1)] = tj * h_model.d + p.image(c);
    }
    out.set_image(big.element_word(s), Perm::from_images(d, std::move(img)));
  }
  return out;
}

SoficAssignment induce_from_subgroup(const SoficAssignment& h_model, GroupPtr z, long m,
                                     const std::vector<long long>& transversal) {
  if (!z || z->kind() != GroupKind::Integer)
    throw GroupKindError("induce_from_subgroup: needs an integer group");
  if (!h_model.group || h_model.group->kind() != GroupKind::Integer)
    throw GroupKindError("induce_from_subgroup: subgroup model must be over an integer group");
  if (m < 1) throw TransversalError("induce_from_subgroup: index must be positive");
  if (static_cast<long>(transversal.size()) != m)
    throw TransversalError("induce_from_subgroup: transversal size differs from the index");
  std::vector<int> slot(static_cast<size_t>(m), -1);
  for (int ti = 0; ti < m; ++ti) {
    const long long rr = ((transversal[static_cast<size_t>(ti)] % m) + m) % m;
    if (slot[static_cast<size_t>(rr)] != -1)
      throw TransversalError("induce_from_subgroup: representatives share a residue class");
    slot[static_cast<size_t>(rr)] = ti;
  }

  const Perm step = word_image(h_model, Word::single(0));
  const int d = checked_dim(static_cast<long long>(h_model.d) * m, "induce_from_subgroup");
  std::vector<int32_t> img(static_cast<size_t>(d));
  for (int ti = 0; ti < m; ++ti) {
    const long long k = transversal[static_cast<size_t>(ti)] + 1;
    const int tj = slot[static_cast<size_t>(((k % m) + m) % m)];
    const long long e = (k - transversal[static_cast<size_t>(tj)]) / m;
    const Perm p = perm_power(step, e);
    for (int c = 1; c <= h_model.d; ++c)
      img[static_cast<size_t>(ti * h_model.d + c - 1)] = tj * h_model.d + p.image(c);
  }
  SoficAssignment out;
  out.group = z;
  out.d = d;
  out.set_image(Word::single(0), Perm::from_images(d, std::move(img)));
  return out;
}

TilingResult quasitile(const SoficAssignment& a, const std::vector<std::vector<Word>>& tiles,
                       double eps, const std::vector<Word>& f_words, int n) {
  if (tiles.empty()) throw Error("quasitile: no tiles");
  if (!(eps >= 0.0) || eps >= 1.0) throw Error("quasitile: eps must lie in [0, 1)");
  if (!a.group) throw Error("quasitile: assignment has no group");
  const Group& g = *a.group;
  const ResolvedBall rb = resolve(a, f_words, n);

  const int k = static_cast<int>(tiles.size());
  std::vector<std::vector<int>> tix(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) {
    std::set<Word> nfs;
    for (const Word& w : tiles[static_cast<size_t>(j)]) nfs.insert(g.normal_form(w));
    if (!nfs.count(Word::one())) throw Error("quasitile: tile must contain the identity");
    for (const Word& w : nfs) {
      const auto it = rb.ball.index.find(w);
      if (it == rb.ball.index.end()) throw Error("quasitile: tile not in ball");
      tix[static_cast<size_t>(j)].push_back(it->second);
    }
    std::sort(tix[static_cast<size_t>(j)].begin(), tix[static_cast<size_t>(j)].end());
  }
  for (int j = 0; j + 1 < k; ++j)
    if (!std::includes(tix[static_cast<size_t>(j) + 1].begin(), tix[static_cast<size_t>(j) + 1].end(),
                       tix[static_cast<size_t>(j)].begin(), tix[static_cast<size_t>(j)].end()))
      throw Error("quasitile: tiles must be nested");

  const int d = a.d;
  std::vector<char> covered(static_cast<size_t>(d) + 1, 0);
  int covered_count = 0;
  bool overlapped = false;
  TilingResult res;
  res.tiles_used.resize(static_cast<size_t>(k));
  res.lambda_hat.resize(static_cast<size_t>(k), 0.0);
  for (int j = 0; j < k; ++j) res.tiles_used[static_cast<size_t>(j)].first = j;

  std::vector<int> stamp(static_cast<size_t>(d) + 1, 0);
  int gen = 0;
  std::vector<int> pts;
  for (int j = k - 1; j >= 0; --j) {
    const std::vector<int>& tile = tix[static_cast<size_t>(j)];
    const double allowed = eps * static_cast<double>(tile.size());
    for (int c = 1; c <= d; ++c) {
      ++gen;
      pts.clear();
      bool injective = true;
      int overlap = 0;
      for (const int idx : tile) {
        const int p = rb.elem_image[static_cast<size_t>(idx)].image(c);
        if (stamp[static_cast<size_t>(p)] == gen) {
          injective = false;
          break;
        }
        stamp[static_cast<size_t>(p)] = gen;
        if (covered[static_cast<size_t>(p)]) ++overlap;
        pts.push_back(p);
      }
      if (!injective || static_cast<double>(overlap) > allowed) continue;
      res.tiles_used[static_cast<size_t>(j)].second.push_back(c);
      if (overlap > 0) overlapped = true;
      for (const int p : pts)
        if (!covered[static_cast<size_t>(p)]) {
          covered[static_cast<size_t>(p)] = 1;
          ++covered_count;
        }
    }
  }
  for (int j = 0; j < k; ++j)
    res.lambda_hat[static_cast<size_t>(j)] =
        static_cast<double>(tix[static_cast<size_t>(j)].size()) *
        static_cast<double>(res.tiles_used[static_cast<size_t>(j)].second.size()) /
        static_cast<double>(d);
  res.coverage = static_cast<double>(covered_count) / static_cast<double>(d);
  res.disjoint = !overlapped;
  return res;
}

SoficAssignment free_join(const SoficAssignment& left, const SoficAssignment& right,
                          GroupPtr product, int n, const Perm& u) {
  if (!product || product->kind() != GroupKind::FreeProduct)
    throw GroupKindError("free_join: needs a free product group");
  if (product->left_factor().get() != left.group.get() ||
      product->right_factor().get() != right.group.get())
    throw Error("free_join: factor models do not match the product's factors");
  if (left.d != right.d) throw DimensionMismatch("free_join: input dimensions differ");
  if (u.dim() != left.d) throw DimensionMismatch("free_join: randomizer dimension differs");
  if (n < 0) throw Error("free_join: negative radius");
  return build_join(product, left, right, u, n);
}

SoficAssignment free_join(const SoficAssignment& left, const SoficAssignment& right,
                          GroupPtr product, int n, std::uint64_t seed) {
  if (left.d != right.d) throw DimensionMismatch("free_join: input dimensions differ");
  Rng rng(seed);
  return free_join(left, right, product, n, random_perm(left.d, rng));
}

AmalgamJoinResult amalgamated_join(const SoficAssignment& left, const SoficAssignment& right,
                                   GroupPtr amalgam, std::uint64_t seed, int n,
                                   const AmalgamJoinOptions& opt) {
  if (!amalgam || amalgam->kind() != GroupKind::Amalgam)
    throw GroupKindError("amalgamated_join: needs an amalgam group");
  if (amalgam->left_factor().get() != left.group.get() ||
      amalgam->right_factor().get() != right.group.get())
    throw Error("amalgamated_join: factor models do not match the amalgam's factors");
  if (left.d != right.d) throw DimensionMismatch("amalgamated_join: input dimensions differ");
  if (n < 0) throw Error("amalgamated_join: negative radius");
  if (!(opt.eps >= 0.0) || opt.eps >= 1.0)
    throw Error("amalgamated_join: eps must lie in [0, 1)");
  const GroupPtr hsub = amalgam->amalgam_subgroup();
  const Group& h = *hsub;
  const int q = h.order();
  const int d = left.d;

  const auto h_images = [&](const SoficAssignment& model, int side) {
    const std::vector<int>& emb = amalgam->embedding(side);
    const Group& fac = side == 0 ? *amalgam->left_factor() : *amalgam->right_factor();
    std::vector<Perm> out;
    out.reserve(static_cast<size_t>(q));
    for (int x = 0; x < q; ++x)
      out.push_back(word_image(model, fac.element_word(emb[static_cast<size_t>(x)])));
    return out;
  };
  const std::vector<Perm> sl = h_images(left, 0);
  const std::vector<Perm> sr = h_images(right, 1);

  // Greedy free-orbit scan: a base point opens an orbit when the q images are
  // distinct, unclaimed, and the action on them is regular. Failed bases
  // become exceptional singletons.
  const auto scan = [&](const std::vector<Perm>& sh) {
    std::vector<char> used(static_cast<size_t>(d) + 1, 0);
    std::vector<std::vector<int>> orbits;
    std::vector<int> pts(static_cast<size_t>(q));
    for (int c = 1; c <= d; ++c) {
      if (used[static_cast<size_t>(c)]) continue;
      bool ok = true;
      for (int x = 0; x < q && ok; ++x) {
        const int p = sh[static_cast<size_t>(x)].image(c);
        if (used[static_cast<size_t>(p)]) ok = false;
        for (int y = 0; y < x && ok; ++y)
          if (pts[static_cast<size_t>(y)] == p) ok = false;
        pts[static_cast<size_t>(x)] = p;
      }
      for (int y = 0; y < q && ok; ++y)
        for (int x = 0; x < q && ok; ++x)
          if (sh[static_cast<size_t>(y)].image(pts[static_cast<size_t>(x)]) !=
              pts[static_cast<size_t>(h.table_mul(y, x))])
            ok = false;
      if (!ok) {
        used[static_cast<size_t>(c)] = 1;
        continue;
      }
      for (const int p : pts) used[static_cast<size_t>(p)] = 1;
      orbits.push_back(pts);
    }
    return orbits;
  };
  const std::vector<std::vector<int>> ol = scan(sl);
  const std::vector<std::vector<int>> orr = scan(sr);

  const int need = static_cast<int>(std::ceil((1.0 - opt.eps) * static_cast<double>(d) /
                                              static_cast<double>(q)));
  if (static_cast<int>(ol.size()) < need || static_cast<int>(orr.size()) < need)
    throw OrbitError("amalgamated_join: insufficient free subgroup orbits");
  const int kk = static_cast<int>(std::min(ol.size(), orr.size()));

  Perm w = Perm::identity(d);
  if (!opt.skip_alignment) {
    std::vector<int32_t> img(static_cast<size_t>(d), 0);
    std::vector<char> left_taken(static_cast<size_t>(d) + 1, 0);
    for (int i = 0; i < kk; ++i)
      for (int x = 0; x < q; ++x) {
        const int from = orr[static_cast<size_t>(i)][static_cast<size_t>(x)];
        const int to = ol[static_cast<size_t>(i)][static_cast<size_t>(x)];
        img[static_cast<size_t>(from) - 1] = to;
        left_taken[static_cast<size_t>(to)] = 1;
      }
    std::vector<int> spare;
    for (int c = 1; c <= d; ++c)
      if (!left_taken[static_cast<size_t>(c)]) spare.push_back(c);
    size_t si = 0;
    for (int c = 1; c <= d; ++c)
      if (img[static_cast<size_t>(c) - 1] == 0) img[static_cast<size_t>(c) - 1] = spare[si++];
    w = Perm::from_images(d, std::move(img));
  }

  Rng rng(seed);
  Rng r_pi = rng.child(1);
  Rng r_in = rng.child(2);
  const Perm pi = random_perm(std::max(kk, 1), r_pi);
  std::vector<int32_t> uimg(static_cast<size_t>(d));
  for (int c = 1; c <= d; ++c) uimg[static_cast<size_t>(c) - 1] = c;
  for (int i = 0; i < kk; ++i) {
    const int ti = pi.image(i + 1) - 1;
    const int shift = static_cast<int>(r_in.below(static_cast<uint64_t>(q)));
    for (int x = 0; x < q; ++x)
      uimg[static_cast<size_t>(ol[static_cast<size_t>(i)][static_cast<size_t>(x)]) - 1] =
          ol[static_cast<size_t>(ti)][static_cast<size_t>(h.table_mul(x, shift))];
  }
  const Perm u = Perm::from_images(d, std::move(uimg));
  const Perm v = compose(u, w);

  AmalgamJoinResult res;
  res.mover = v;
  res.free_orbits_left = static_cast<int>(ol.size());
  res.free_orbits_right = static_cast<int>(orr.size());
  for (int i = 0; i < kk; ++i)
    for (int x = 0; x < q; ++x)
      res.aligned_points.push_back(ol[static_cast<size_t>(i)][static_cast<size_t>(x)]);
  std::sort(res.aligned_points.begin(), res.aligned_points.end());
  for (int x = 1; x < q; ++x)
    res.h_agreement_defect = std::max(
        res.h_agreement_defect,
        hs_dist(conjugate(v, sr[static_cast<size_t>(x)]), sl[static_cast<size_t>(x)]));

  res.join = build_join(amalgam, left, right, v, n);
  std::vector<Word> f;
  for (int i = 0; i < amalgam->generator_count(); ++i) f.push_back(Word::single(i));
  res.ga = ga_check(res.join, f, n, opt.delta);
  return res;
}

ConjugatorResult approx_conjugator(const SoficAssignment& a, const SoficAssignment& b,
                                   const std::vector<Word>& f_words, long long budget) {
  if (a.d != b.d) throw DimensionMismatch("approx_conjugator: input dimensions differ");
  if (!a.group || a.group.get() != b.group.get())
    throw Error("approx_conjugator: inputs must share a group");
  if (f_words.empty()) throw Error("approx_conjugator: empty word set");
  const int d = a.d;
  std::vector<Perm> va, vb;
  for (const Word& w : f_words) {
    va.push_back(word_image(a, w));
    vb.push_back(word_image(b, w));
  }
  const auto residual_of = [&](const Perm& g) {
    double r = 0.0;
    for (size_t i = 0; i < va.size(); ++i)
      r = std::max(r, hs_dist(conjugate(g, va[i]), vb[i]));
    return r;
  };

  ConjugatorResult best;
  best.gamma = Perm::identity(d);
  best.residual = residual_of(best.gamma);

  if (d <= 8) {
    std::vector<int32_t> img(static_cast<size_t>(d));
    for (int c = 1; c <= d; ++c) img[static_cast<size_t>(c) - 1] = c;
    do {
      const Perm g = Perm::from_images(d, img);
      const double r = residual_of(g);
      if (r < best.residual) {
        best.gamma = g;
        best.residual = r;
      }
    } while (std::next_permutation(img.begin(), img.end()));
    return best;
  }

  // Cycle matching on the first word: conjugacy classes of the symmetric
  // group are cycle types, so equal types admit an exact conjugator there.
  const std::vector<std::vector<int>> ca = cycles_of(va[0]);
  const std::vector<std::vector<int>> cb = cycles_of(vb[0]);
  std::map<size_t, std::vector<size_t>> by_len_a, by_len_b;
  for (size_t i = 0; i < ca.size(); ++i) by_len_a[ca[i].size()].push_back(i);
  for (size_t i = 0; i < cb.size(); ++i) by_len_b[cb[i].size()].push_back(i);
  bool matchable = by_len_a.size() == by_len_b.size();
  for (auto it = by_len_a.begin(); matchable && it != by_len_a.end(); ++it) {
    const auto jt = by_len_b.find(it->first);
    matchable = jt != by_len_b.end() && jt->second.size() == it->second.size();
  }
  if (matchable) {
    std::vector<int32_t> img(static_cast<size_t>(d));
    for (const auto& [len, ia] : by_len_a) {
      const std::vector<size_t>& ib = by_len_b[len];
      for (size_t t = 0; t < ia.size(); ++t)
        for (size_t x = 0; x < len; ++x)
          img[static_cast<size_t>(ca[ia[t]][x]) - 1] = cb[ib[t]][x];
    }
    const Perm g = Perm::from_images(d, std::move(img));
    const double r = residual_of(g);
    if (r < best.residual) {
      best.gamma = g;
      best.residual = r;
    }
  }

  long long evals = 0;
  bool improved = true;
  while (improved && evals < budget) {
    improved = false;
    for (int i = 1; i <= d && evals < budget; ++i) {
      for (int j = i + 1; j <= d && evals < budget; ++j) {
        std::vector<int32_t> img = best.gamma.images();
        for (auto& x : img) {
          if (x == i)
            x = j;
          else if (x == j)
            x = i;
        }
        const Perm g = Perm::from_images(d, std::move(img));
        ++evals;
        const double r = residual_of(g);
        if (r < best.residual) {
          best.gamma = g;
          best.residual = r;
          improved = true;
        }
      }
    }
  }
  return best;
}

ActionModel bernoulli_model(const SoficAssignment& a, const std::vector<double>& nu,
                            std::uint64_t seed) {
  if (nu.empty()) throw Error("bernoulli_model: empty distribution");
  double sum = 0.0;
  for (const double x : nu) {
    if (!(x >= 0.0)) throw Error("bernoulli_model: negative weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("bernoulli_model: weights must sum to 1");
  Rng rng(seed);
  std::vector<int> labels(static_cast<size_t>(a.d), 0);
  for (int c = 0; c < a.d; ++c) {
    const double x = rng.unit();
    double acc = 0.0;
    int pick = static_cast<int>(nu.size()) - 1;
    for (size_t y = 0; y < nu.size(); ++y) {
      acc += nu[y];
      if (x < acc) {
        pick = static_cast<int>(y);
        break;
      }
    }
    labels[static_cast<size_t>(c)] = pick;
  }
  ActionModel m;
  m.sigma = a;
  m.cell_count = static_cast<int>(nu.size());
  m.labels = std::move(labels);
  m.measure = MeasureKind::BernoulliProduct;
  m.nu = nu;
  m.validate();
  return m;
}

}  // namespace sofic
