#include "sofic/verify.hpp"

#include <algorithm>
#include <functional>

namespace sofic {

void SoficAssignment::set_image(const Word& w, Perm p) {
  if (!group) throw Error("assignment has no group");
  if (p.dim() != d) throw DimensionMismatch("image dimension differs from assignment dimension");
  images.insert_or_assign(group->normal_form(w), std::move(p));
}

const Perm* SoficAssignment::stored(const Word& w) const {
  if (!group) throw Error("assignment has no group");
  const auto it = images.find(group->normal_form(w));
  return it == images.end() ? nullptr : &it->second;
}

ResolvedBall resolve(const SoficAssignment& a, const std::vector<Word>& F, int n) {
  if (!a.group) throw Error("assignment has no group");
  const Group& G = *a.group;
  ResolvedBall rb{ball(G, F, n), {}, {}};

  rb.alpha_image.reserve(rb.ball.alphabet.size());
  for (const Word& w : rb.ball.alphabet) {
    if (const Perm* p = a.stored(w)) {
      rb.alpha_image.push_back(*p);
    } else if (w.empty()) {
      rb.alpha_image.push_back(Perm::identity(a.d));
    } else if (const Perm* q = a.stored(G.inverse(w))) {
      rb.alpha_image.push_back(q->inverse());
    } else {
      throw MissingImage("no stored image for '" + format_word(G, w) + "' or its inverse");
    }
  }

  rb.elem_image.reserve(rb.ball.elements.size());
  for (size_t i = 0; i < rb.ball.elements.size(); ++i) {
    if (const Perm* p = a.stored(rb.ball.elements[i])) {
      rb.elem_image.push_back(*p);
    } else if (i == 0) {
      rb.elem_image.push_back(Perm::identity(a.d));
    } else {
      const BallStep f = rb.ball.from[i];
      rb.elem_image.push_back(compose(rb.elem_image[f.parent], rb.alpha_image[f.step]));
    }
  }
  return rb;
}

DefectReport ga_check(const SoficAssignment& a, const std::vector<Word>& F, int n, double delta) {
  const ResolvedBall rb = resolve(a, F, n);
  const Group& G = *a.group;
  DefectReport rep;
  rep.delta = delta;

  if (!rb.elem_image[0].is_identity()) {
    rep.max_mult_defect = hs_dist(rb.elem_image[0], Perm::identity(a.d));
    rep.worst_tuple = {Word::one()};
  }

  for (size_t i = 1; i < rb.ball.elements.size(); ++i) {
    const double t = trace(rb.elem_image[i]);
    rep.per_word[rb.ball.elements[i]] = t;
    rep.max_trace_defect = std::max(rep.max_trace_defect, t);
  }

  const int A = static_cast<int>(rb.ball.alphabet.size());
  std::vector<std::vector<int>> trans(rb.ball.elements.size(), std::vector<int>(A, -2));
  const auto step_to = [&](int elem, int s) {
    int& t = trans[elem][s];
    if (t == -2) t = rb.ball.index.at(G.multiply(rb.ball.elements[elem], rb.ball.alphabet[s]));
    return t;
  };

  std::vector<int> steps(std::max(n, 1), -1);
  std::function<void(int, int, const Perm&)> go = [&](int k, int elem, const Perm& prod) {
    if (k == n) {
      const double dd = hs_dist(rb.elem_image[elem], prod);
      if (dd > rep.max_mult_defect) {
        rep.max_mult_defect = dd;
        rep.worst_tuple.clear();
        for (int j = 0; j < n; ++j)
          rep.worst_tuple.push_back(steps[j] < 0 ? Word::one() : rb.ball.alphabet[steps[j]]);
      }
      return;
    }
    steps[k] = -1;
    go(k + 1, elem, prod);
    for (int s = 0; s < A; ++s) {
      steps[k] = s;
      go(k + 1, step_to(elem, s), compose(prod, rb.alpha_image[s]));
    }
    steps[k] = -1;
  };
  if (n > 0) go(0, 0, Perm::identity(a.d));

  rep.passed = std::max(rep.max_mult_defect, rep.max_trace_defect) < delta;
  return rep;
}

double adjoint_defect(const SoficAssignment& a, const std::vector<Word>& F, int n) {
  if (n < 3) throw Error("adjoint_defect requires tuple length n >= 3");
  if (!a.group) throw Error("assignment has no group");
  const Group& G = *a.group;
  double m = 0.0;
  for (const Word& f : F) {
    const Word nf = G.normal_form(f);
    const Perm* pf = a.stored(nf);
    if (!pf) throw MissingImage("no stored image for '" + format_word(G, nf) + "'");
    const Perm* pi = a.stored(G.inverse(nf));
    const Perm inv_img = pi ? *pi : pf->inverse();
    m = std::max(m, hs_dist(inv_img, pf->inverse()));
  }
  return m;
}

double rho_restriction(const SoficAssignment& a, const SoficAssignment& b,
                       const std::vector<Word>& E) {
  const auto img = [](const SoficAssignment& x, const Word& w) -> Perm {
    if (const Perm* p = x.stored(w)) return *p;
    if (x.group->is_identity(w)) return Perm::identity(x.d);
    if (const Perm* q = x.stored(x.group->inverse(w))) return q->inverse();
    throw MissingImage("restriction word has no stored image");
  };
  double m = 0.0;
  for (const Word& w : E) m = std::max(m, hs_dist(img(a, w), img(b, w)));
  return m;
}

IsometryRecovery partial_isometry_recovery(const PartialPerm& v, const PartialPerm& w) {
  IsometryRecovery r;
  r.vwv_defect = hs_dist(compose(compose(v, w), v), v);
  r.wvw_defect = hs_dist(compose(compose(w, v), w), w);
  r.adjoint_gap = hs_dist(w, adjoint(v));
  return r;
}

}  // namespace sofic
