#pragma once

#include <cstdint>
#include <vector>

#include "sofic/action.hpp"
#include "sofic/group.hpp"
#include "sofic/partial_perm.hpp"
#include "sofic/verify.hpp"

namespace sofic {

// Image of an arbitrary word of the model's group: the stored image of its
// normal form when present, otherwise the letterwise product of generator
// images (stored or inverse-of-stored). MissingImage when a letter has
// neither.
Perm word_image(const SoficAssignment& a, const Word& w);

// m disjoint copies of the left translation action of a finite group on
// itself, at dimension |G|*m. Every nonidentity element gets a stored image;
// both defect conditions hold exactly at every (F, n, delta).
SoficAssignment regular_model(GroupPtr g, int copies);

// Block-diagonal repetition: copies of the input laid side by side. Every
// stored word keeps its image per block, so all defect values (mult and
// trace) are preserved exactly.
SoficAssignment amplify(const SoficAssignment& a, int copies);

// Induction along a finite-index subgroup, finite flavor. h_model is a model
// of the subgroup as its own FiniteTable group; h_embed maps its element
// indices into g (injective homomorphism fixing e); transversal lists left
// coset representatives by element index. Output dimension is
// h_model.d * [G:H]; the point (c, t) at slot t*d + c moves to
// (sigma_{beta(st)^{-1} st}(c), beta(st)) where beta(x) is the representative
// of the coset x H. Identity-preserving; a defect bound delta for h_model
// over L = H n R^{-1} F R transfers to the output over F unchanged.
SoficAssignment induce_from_subgroup(const SoficAssignment& h_model, GroupPtr g,
                                     const std::vector<int>& h_embed,
                                     const std::vector<int>& transversal);

// Induction for mZ inside Z. h_model is over an Integer group whose generator
// stands for g^m; transversal lists one exponent per residue class mod m.
SoficAssignment induce_from_subgroup(const SoficAssignment& h_model, GroupPtr z, long m,
                                     const std::vector<long long>& transversal);

struct TilingResult {
  std::vector<std::pair<int, std::vector<int>>> tiles_used;  // (tile index, centers)
  double coverage = 0.0;              // fraction of {1..d} covered
  std::vector<double> lambda_hat;     // |T_j| * |C_j| / d per tile
  bool disjoint = false;              // chosen translates pairwise disjoint
};

// Greedy quasitiling: tiles must be nested (each contained in the next),
// contain the identity, and lie inside the (F, n) ball. Passes from the
// largest tile down, scanning centers in increasing point order; a center is
// kept when the translate s -> sigma_s(c) is injective on the tile and meets
// the union of everything already chosen in at most eps * |tile| points.
// Both certificates hold exactly for the returned centers; coverage carries
// no a priori guarantee.
TilingResult quasitile(const SoficAssignment& a, const std::vector<std::vector<Word>>& tiles,
                       double eps, const std::vector<Word>& f_words, int n);

// Join of two equal-dimension models along a free product. Every element of
// the radius-n ball over the product's generators gets a stored image: the
// syllable product of sigma on left syllables and u * omega * u^{-1} on right
// ones. Restrictions to either factor reproduce the inputs bit for bit, so
// within-factor defects match the inputs; cross-factor trace defects depend
// on u. Inputs are not revalidated here; joins are judged by ga_check.
SoficAssignment free_join(const SoficAssignment& left, const SoficAssignment& right,
                          GroupPtr product, int n, const Perm& u);
// Same with u drawn uniformly from S_d.
SoficAssignment free_join(const SoficAssignment& left, const SoficAssignment& right,
                          GroupPtr product, int n, std::uint64_t seed);

struct AmalgamJoinOptions {
  double eps = 0.05;            // tolerated fraction of points outside free orbits
  bool skip_alignment = false;  // leave omega unaligned; exposes the misalignment defect
  double delta = 0.3;           // threshold for the attached ga_check report
};

struct AmalgamJoinResult {
  SoficAssignment join;
  Perm mover = Perm(1);             // v: right syllables evaluate as v * omega * v^{-1}
  std::vector<int> aligned_points;  // union of the aligned orbit blocks
  double h_agreement_defect = 0.0;  // max hs gap between the two subgroup actions
  int free_orbits_left = 0;
  int free_orbits_right = 0;
  DefectReport ga;                  // ga_check over the product generators at (n, delta)
};

// Join along an amalgam of FiniteTable factors over a finite common subgroup.
// Each side's subgroup action is decomposed into free regular orbits; fewer
// than ceil((1-eps) d / |H|) on either side raises OrbitError. The right
// model is conjugated so the two subgroup actions agree on min(k_l, k_r)
// aligned orbit blocks, then randomized by a uniform block permutation
// composed with independent uniform equivariant in-block maps; points outside
// the aligned blocks stay fixed by the randomizer. On the aligned part the
// output's subgroup action equals the left model's exactly.
AmalgamJoinResult amalgamated_join(const SoficAssignment& left, const SoficAssignment& right,
                                   GroupPtr amalgam, std::uint64_t seed, int n,
                                   const AmalgamJoinOptions& opt = {});

struct ConjugatorResult {
  Perm gamma = Perm(1);
  double residual = 0.0;  // max hs gap over f_words after conjugation
};

// Search for gamma minimizing max over f_words of
// hs_dist(gamma sigma_w gamma^{-1}, omega_w). Exhaustive over S_d for d <= 8;
// otherwise cycle matching on the first word followed by greedy transposition
// refinement within budget residual evaluations. Never worse than the
// identity conjugator.
ConjugatorResult approx_conjugator(const SoficAssignment& a, const SoficAssignment& b,
                                   const std::vector<Word>& f_words, long long budget);

// i.i.d. labeling of the point set with weights nu; cell y collects the
// points labeled y, so the target measure of cell y is nu[y]. Action defects
// of the result are random in the labeling; they are checked statistically,
// not per instance.
ActionModel bernoulli_model(const SoficAssignment& a, const std::vector<double>& nu,
                            std::uint64_t seed);

}  // namespace sofic
