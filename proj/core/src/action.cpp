#include "sofic/action.hpp"

#include <cmath>
#include <functional>
#include <set>

namespace sofic {

DiagProjection ActionModel::cell(int i) const {
  if (i < 0 || i >= cell_count) throw Error("cell index out of range");
  DiagProjection p(sigma.d);
  for (int c = 1; c <= sigma.d; ++c)
    if (labels[static_cast<size_t>(c) - 1] == i) p.add(c);
  return p;
}

void ActionModel::validate() const {
  if (!sigma.group) throw Error("action model has no group");
  if (static_cast<int>(labels.size()) != sigma.d)
    throw DimensionMismatch("labels length differs from dimension");
  if (cell_count < 1) throw Error("cell_count must be positive");
  for (const int l : labels)
    if (l < 0 || l >= cell_count) throw Error("label out of range");
  switch (measure) {
    case MeasureKind::SingleCell:
      if (cell_count != 1) throw Error("single-cell model must have exactly one cell");
      break;
    case MeasureKind::Translation:
      if (sigma.group->kind() != GroupKind::FiniteTable)
        throw GroupKindError("translation measure needs a finite table group");
      if (cell_count != sigma.group->order())
        throw Error("translation model needs one cell per group element");
      break;
    case MeasureKind::BernoulliProduct: {
      if (static_cast<int>(nu.size()) != cell_count)
        throw Error("nu length differs from cell_count");
      double s = 0.0;
      for (const double x : nu) {
        if (x < 0.0) throw Error("negative cell weight");
        s += x;
      }
      if (std::abs(s - 1.0) > 1e-9) throw Error("cell weights must sum to 1");
      break;
    }
  }
}

double measure_of(const ActionModel& m, const std::map<Word, int>& proj) {
  switch (m.measure) {
    case MeasureKind::SingleCell:
      return 1.0;
    case MeasureKind::Translation: {
      const Group& G = *m.sigma.group;
      int point = -1;
      for (const auto& [t, y] : proj) {
        const int p = G.table_mul(G.word_element(t), y);
        if (point == -1)
          point = p;
        else if (point != p)
          return 0.0;
      }
      return point == -1 ? 1.0 : 1.0 / G.order();
    }
    case MeasureKind::BernoulliProduct: {
      double mu = 1.0;
      for (const auto& [t, y] : proj) mu *= m.nu[y];
      return mu;
    }
  }
  return 0.0;
}

DiagProjection phi_translate(const ActionModel& m, const Word& w, int cell, const Perm& sigma_inv) {
  const int d = m.sigma.d;
  switch (m.measure) {
    case MeasureKind::SingleCell:
      return DiagProjection::full(d);
    case MeasureKind::Translation: {
      const Group& G = *m.sigma.group;
      return m.cell(G.table_mul(G.word_element(w), cell));
    }
    case MeasureKind::BernoulliProduct: {
      DiagProjection p(d);
      for (int c = 1; c <= d; ++c)
        if (m.labels[static_cast<size_t>(sigma_inv.image(c)) - 1] == cell) p.add(c);
      return p;
    }
  }
  throw Error("unreachable");
}

FormalElem formal_mul(const Group& g, const FormalElem& x, const FormalElem& y) {
  if (x.zero || y.zero) return FormalElem{true, {}, {}};
  FormalElem r = x;
  for (const auto& [t, c] : y.proj) {
    const Word t2 = g.multiply(x.u, t);
    const auto it = r.proj.find(t2);
    if (it != r.proj.end()) {
      if (it->second != c) return FormalElem{true, {}, {}};
    } else {
      r.proj[t2] = c;
    }
  }
  r.u = g.multiply(x.u, y.u);
  return r;
}

FormalElem formal_adjoint(const Group& g, const FormalElem& x) {
  if (x.zero) return x;
  FormalElem r;
  r.u = g.inverse(x.u);
  for (const auto& [t, c] : x.proj) r.proj[g.multiply(r.u, t)] = c;
  return r;
}

HaReport ha_check(const ActionModel& m, const std::vector<Word>& F, int n, double delta,
                  size_t work_cap) {
  m.validate();
  HaReport rep;
  rep.delta = delta;
  rep.ga = ga_check(m.sigma, F, n, delta);

  const ResolvedBall rb = resolve(m.sigma, F, n);
  const Group& G = *m.sigma.group;
  const size_t K = rb.ball.elements.size();

  std::vector<std::vector<DiagProjection>> alpha;
  alpha.reserve(K);
  for (size_t i = 0; i < K; ++i) {
    const int inv = rb.ball.index.at(G.inverse(rb.ball.elements[i]));
    std::vector<DiagProjection> row;
    row.reserve(static_cast<size_t>(m.cell_count));
    for (int y = 0; y < m.cell_count; ++y)
      row.push_back(phi_translate(m, rb.ball.elements[i], y, rb.elem_image[inv]));
    alpha.push_back(std::move(row));
  }

  for (size_t i = 0; i < K; ++i)
    for (int y = 0; y < m.cell_count; ++y) {
      const double dd = hs_dist(alpha[i][y], translate(rb.elem_image[i], m.cell(y)));
      if (dd > rep.max_equivariance_defect) {
        rep.max_equivariance_defect = dd;
        rep.worst_word = rb.ball.elements[i];
        rep.worst_cell = y;
      }
    }

  size_t leaves = 0;
  std::map<Word, int> cur;
  std::function<void(size_t, const DiagProjection&)> go = [&](size_t i, const DiagProjection& p) {
    if (i == K) {
      if (++leaves > work_cap)
        throw WorkCapExceeded("intersection enumeration exceeds work cap");
      const double defect = std::abs(trace(p) - measure_of(m, cur));
      if (defect > rep.max_measure_defect) {
        rep.max_measure_defect = defect;
        rep.worst_intersection = cur;
      }
      return;
    }
    go(i + 1, p);
    for (int y = 0; y < m.cell_count; ++y) {
      cur[rb.ball.elements[i]] = y;
      go(i + 1, intersect(p, alpha[i][y]));
    }
    cur.erase(rb.ball.elements[i]);
  };
  go(0, DiagProjection::full(m.sigma.d));

  rep.passed =
      rep.ga.passed && std::max(rep.max_measure_defect, rep.max_equivariance_defect) < delta;
  return rep;
}

SaReport sa_check(const ActionModel& m, const std::vector<Word>& F, int n, double delta,
                  size_t work_cap) {
  m.validate();
  const Group& G = *m.sigma.group;
  // radius n+1 so projection keys (one translate past the u-part) resolve
  const ResolvedBall rb = resolve(m.sigma, F, n + 1);
  SaReport rep;
  rep.delta = delta;

  const auto realize = [&](const FormalElem& x) -> PartialPerm {
    if (x.zero) return PartialPerm(m.sigma.d);
    DiagProjection q = DiagProjection::full(m.sigma.d);
    for (const auto& [t, y] : x.proj) {
      const int inv = rb.ball.index.at(G.inverse(t));
      q = intersect(q, phi_translate(m, t, y, rb.elem_image[inv]));
    }
    return compose(to_partial(q), rb.elem_image[rb.ball.index.at(x.u)].to_partial());
  };
  const auto tau = [&](const FormalElem& x) -> double {
    if (x.zero || !x.u.empty()) return 0.0;
    return measure_of(m, x.proj);
  };

  std::vector<FormalElem> X;
  std::vector<PartialPerm> ximg;
  {
    std::set<FormalElem> seen;
    std::vector<Word> ss = {Word::one()};
    for (const Word& a2 : rb.ball.alphabet) ss.push_back(a2);
    for (const Word& s : ss)
      for (int p = -1; p < m.cell_count; ++p) {
        FormalElem x;
        x.u = s;
        if (p >= 0) x.proj[Word::one()] = p;
        if (seen.insert(x).second) X.push_back(std::move(x));
      }
  }
  ximg.reserve(X.size());
  for (const auto& x : X) ximg.push_back(realize(x));

  size_t leaves = 0;
  std::function<void(int, const FormalElem&, const PartialPerm&)> go =
      [&](int k, const FormalElem& red, const PartialPerm& prod) {
        if (k == n) {
          if (++leaves > work_cap)
            throw WorkCapExceeded("formal product enumeration exceeds work cap");
          const PartialPerm r = realize(red);
          const double md = hs_dist(r, prod);
          const double td = std::abs(trace(r) - tau(red));
          if (md > rep.max_mult_defect) {
            rep.max_mult_defect = md;
            rep.worst_elem = red;
          }
          rep.max_trace_defect = std::max(rep.max_trace_defect, td);
          return;
        }
        for (size_t i = 0; i < X.size(); ++i)
          go(k + 1, formal_mul(G, red, X[i]), compose(prod, ximg[i]));
      };
  if (n > 0) go(0, FormalElem{}, PartialPerm::identity(m.sigma.d));

  rep.passed = std::max(rep.max_mult_defect, rep.max_trace_defect) < delta;
  return rep;
}

PartialPerm phi_bridge(const ActionModel& m, int cell, const Word& w, const std::vector<Word>& F,
                       int n) {
  m.validate();
  if (cell >= m.cell_count) throw Error("cell index out of range");
  const ResolvedBall rb = resolve(m.sigma, F, n);
  const Word nf = m.sigma.group->normal_form(w);
  const auto it = rb.ball.index.find(nf);
  if (it == rb.ball.index.end()) throw MissingImage("word lies outside the resolved ball");
  const DiagProjection q = cell >= 0 ? m.cell(cell) : DiagProjection::full(m.sigma.d);
  return compose(to_partial(q), rb.elem_image[it->second].to_partial());
}

}  // namespace sofic
