#pragma once

#include <map>
#include <vector>

#include "sofic/verify.hpp"

namespace sofic {

// How the abstract measure of cell intersections is evaluated.
//  SingleCell:       one cell, the whole space; everything has measure 1.
//  Translation:      finite group acting on itself; cells indexed by group
//                    elements, each of abstract measure 1/|G|.
//  BernoulliProduct: i.i.d. labels with weights nu; coordinates at distinct
//                    group elements are independent.
enum class MeasureKind { SingleCell, Translation, BernoulliProduct };

// Action model: a permutation assignment together with a labeled partition
// of the point set (cell i = {c : labels[c-1] == i}) standing for the
// generating partition of the abstract system.
struct ActionModel {
  SoficAssignment sigma;
  int cell_count = 1;
  std::vector<int> labels;
  MeasureKind measure = MeasureKind::SingleCell;
  std::vector<double> nu;  // BernoulliProduct only

  DiagProjection cell(int i) const;
  void validate() const;
};

// Abstract measure of the intersection over (t, y) entries of the t-translate
// of cell y. Empty map = the unit, measure 1.
double measure_of(const ActionModel& m, const std::map<Word, int>& proj);

// Realized translate of a cell: the model's stand-in for the w-image of
// cell y. sigma_inv must be the resolved image of w^{-1}; only the
// Bernoulli realization reads it.
DiagProjection phi_translate(const ActionModel& m, const Word& w, int cell, const Perm& sigma_inv);

// Formal element q * u_w of the crossed product: q is the intersection over
// the proj entries (t -> cell) of t-translated cells, w a group word. zero
// marks the formally vanishing projection (same translate, two cells).
struct FormalElem {
  bool zero = false;
  std::map<Word, int> proj;
  Word u;

  friend auto operator<=>(const FormalElem&, const FormalElem&) = default;
};

FormalElem formal_mul(const Group& g, const FormalElem& x, const FormalElem& y);
FormalElem formal_adjoint(const Group& g, const FormalElem& x);

struct HaReport {
  DefectReport ga;                       // the underlying permutation part
  double max_measure_defect = 0.0;       // |tr(phi(q)) - mu(q)| over intersections
  double max_equivariance_defect = 0.0;  // ||phi(alpha_s(p)) - Ad(sigma_s) phi(p)||_2
  std::map<Word, int> worst_intersection;
  Word worst_word;
  int worst_cell = -1;
  double delta = 0.0;
  bool passed = false;  // ga.passed and both action defects < delta
};

// Action-level check: the permutation conditions, the measure condition
// over all cell-or-skip intersections of ball translates, and equivariance
// of every cell under every ball element. Intersection enumeration past
// work_cap raises WorkCapExceeded.
HaReport ha_check(const ActionModel& m, const std::vector<Word>& F, int n, double delta,
                  size_t work_cap = 1000000);

struct SaReport {
  double max_mult_defect = 0.0;
  double max_trace_defect = 0.0;
  FormalElem worst_elem;
  double delta = 0.0;
  bool passed = false;
};

// Crossed-product check over formal generators {p u_s : p cell or 1,
// s in F, inverses, or e}: multiplicativity of the realization against
// length-n products, and the realized trace against mu(q) * [w == e].
// For the single-cell (trivial) action this coincides with ga_check.
SaReport sa_check(const ActionModel& m, const std::vector<Word>& F, int n, double delta,
                  size_t work_cap = 1000000);

// Realization q * u_w -> phi(q) sigma_w as a partial permutation.
// cell < 0 means q = 1.
PartialPerm phi_bridge(const ActionModel& m, int cell, const Word& w,
                       const std::vector<Word>& F, int n);

}  // namespace sofic
