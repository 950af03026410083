#pragma once

#include <map>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/partial_perm.hpp"

namespace sofic {

// Finite model: permutation images for finitely many group elements, keyed
// by normal form. The identity always maps to the identity permutation
// unless a different image is stored explicitly (which then shows up as a
// multiplicativity defect).
struct SoficAssignment {
  GroupPtr group;
  int d = 1;
  std::map<Word, Perm> images;

  void set_image(const Word& w, Perm p);
  // Stored image of the normal form, or null.
  const Perm* stored(const Word& w) const;
};

// Images for every element of the radius-n ball. Resolution order per
// element: stored image; identity; inverse of a stored image (alphabet
// only); composition along the ball's recorded factorization. A generator
// with neither its own nor its inverse's image stored raises MissingImage.
struct ResolvedBall {
  Ball ball;
  std::vector<Perm> elem_image;   // aligned with ball.elements
  std::vector<Perm> alpha_image;  // aligned with ball.alphabet
};

ResolvedBall resolve(const SoficAssignment& a, const std::vector<Word>& F, int n);

struct DefectReport {
  double max_mult_defect = 0.0;
  double max_trace_defect = 0.0;
  std::vector<Word> worst_tuple;      // factors attaining max_mult_defect
  std::map<Word, double> per_word;    // trace of each nonidentity ball element
  double delta = 0.0;
  bool passed = false;                // max(mult, trace) < delta
};

// Exact check of both approximation conditions over every length-n tuple
// from the alphabet of F, its inverses, and the identity. Products without
// stored images are synthesized along the ball factorization; disagreement
// between factorizations surfaces in max_mult_defect.
DefectReport ga_check(const SoficAssignment& a, const std::vector<Word>& F, int n, double delta);

// Max over s in F of the gap between the stored image of s^{-1} and the
// adjoint of the image of s. The 4*delta bound backing this diagnostic
// needs tuple length at least 3, so smaller n is refused.
double adjoint_defect(const SoficAssignment& a, const std::vector<Word>& F, int n);

// Restriction distance: max hs_dist over E between the two assignments'
// images (stored or inverse-of-stored).
double rho_restriction(const SoficAssignment& a, const SoficAssignment& b,
                       const std::vector<Word>& E);

struct IsometryRecovery {
  double vwv_defect = 0.0;   // ||vwv - v||_2
  double wvw_defect = 0.0;   // ||wvw - w||_2
  double adjoint_gap = 0.0;  // ||w - v*||_2
};

// When both defects are below delta the gap is below 4*delta.
IsometryRecovery partial_isometry_recovery(const PartialPerm& v, const PartialPerm& w);

}  // namespace sofic
