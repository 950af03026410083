#pragma once

#include <cstdint>
#include <vector>

#include "sofic/bigint.hpp"
#include "sofic/errors.hpp"
#include "sofic/rng.hpp"

namespace sofic {

// Hard cap on the point-set size; dense image arrays stay cheap below this.
inline constexpr int kMaxDim = 1 << 20;

class Perm;

// Injective partial self-map of {1..d}; equivalently a 0/1 matrix with at
// most one 1 per row and column. Points are 1-indexed. image() returns 0
// for points outside the domain. The domain bitmask is kept in sync with
// the image array.
class PartialPerm {
 public:
  explicit PartialPerm(int dim);  // empty domain

  static PartialPerm identity(int dim);
  static PartialPerm from_images(int dim, std::vector<int32_t> img);

  int dim() const { return dim_; }
  int32_t image(int c) const { return img_[static_cast<size_t>(c) - 1]; }
  bool defined(int c) const { return img_[static_cast<size_t>(c) - 1] != 0; }
  int domain_size() const { return dom_size_; }
  const std::vector<int32_t>& images() const { return img_; }
  const std::vector<uint64_t>& domain_mask() const { return dom_; }

  // Define c -> v. c must be currently undefined and v unused; callers own
  // injectivity across updates (checked in debug builds only).
  void set_image(int c, int32_t v);

  bool is_full() const { return dom_size_ == dim_; }
  Perm to_perm() const;  // requires is_full()

  bool operator==(const PartialPerm& o) const { return dim_ == o.dim_ && img_ == o.img_; }
  bool operator!=(const PartialPerm& o) const { return !(*this == o); }
  bool operator<(const PartialPerm& o) const;  // by dim, then image array

 private:
  int dim_;
  int dom_size_;
  std::vector<int32_t> img_;
  std::vector<uint64_t> dom_;
};

// Full permutation of {1..d}. Separate type: most pipeline maps are total,
// and the distinction catches domain bugs at compile time.
class Perm {
 public:
  explicit Perm(int dim);  // identity

  static Perm identity(int dim) { return Perm(dim); }
  static Perm from_images(int dim, std::vector<int32_t> img);

  int dim() const { return dim_; }
  int32_t image(int c) const { return img_[static_cast<size_t>(c) - 1]; }
  int32_t operator()(int c) const { return image(c); }
  const std::vector<int32_t>& images() const { return img_; }

  Perm inverse() const;
  PartialPerm to_partial() const;
  bool is_identity() const;

  bool operator==(const Perm& o) const { return dim_ == o.dim_ && img_ == o.img_; }
  bool operator!=(const Perm& o) const { return !(*this == o); }
  bool operator<(const Perm& o) const;

 private:
  int dim_;
  std::vector<int32_t> img_;
};

// Subset of {1..d}, viewed as a diagonal 0/1 matrix.
class DiagProjection {
 public:
  explicit DiagProjection(int dim);  // empty
  static DiagProjection full(int dim);
  static DiagProjection from_points(int dim, const std::vector<int>& pts);

  int dim() const { return dim_; }
  bool contains(int c) const {
    const size_t i = static_cast<size_t>(c) - 1;
    return (bits_[i >> 6] >> (i & 63)) & 1;
  }
  void add(int c);
  int support_size() const { return size_; }
  std::vector<int> points() const;
  const std::vector<uint64_t>& bits() const { return bits_; }

  bool operator==(const DiagProjection& o) const { return dim_ == o.dim_ && bits_ == o.bits_; }
  bool operator!=(const DiagProjection& o) const { return !(*this == o); }
  bool operator<(const DiagProjection& o) const;

 private:
  int dim_;
  int size_;
  std::vector<uint64_t> bits_;
};

// Composition acts right-to-left: compose(a, b) maps c to a(b(c)).
PartialPerm compose(const PartialPerm& a, const PartialPerm& b);
Perm compose(const Perm& a, const Perm& b);

// Adjoint of the matrix, i.e. the inverse partial map.
PartialPerm adjoint(const PartialPerm& a);

// Normalized trace: fraction of points fixed.
double trace(const PartialPerm& a);
double trace(const Perm& a);
double trace(const DiagProjection& p);

// Normalized Hilbert-Schmidt distance:
// hs_dist(a,b)^2 = (|dom a| + |dom b| - 2 * |{c : a(c) = b(c), both defined}|) / d.
double hs_dist(const PartialPerm& a, const PartialPerm& b);
double hs_dist(const Perm& a, const Perm& b);
double hs_dist(const DiagProjection& p, const DiagProjection& q);

// Fraction of points where two full permutations disagree. For full
// permutations hamming_dist == hs_dist^2 / 2.
double hamming_dist(const Perm& a, const Perm& b);

// g a g^{-1}.
PartialPerm conjugate(const Perm& g, const PartialPerm& a);
Perm conjugate(const Perm& g, const Perm& a);

// Max hs_dist over aligned pairs; the restriction metric on assignments.
double rho_max(const std::vector<PartialPerm>& xs, const std::vector<PartialPerm>& ys);
double rho_max(const std::vector<Perm>& xs, const std::vector<Perm>& ys);

// Cardinality bound for an hs eps-ball in the partial-permutation monoid:
// C(d, m) * d^m with m = floor(eps^2 * d), clamped to [0, d].
BigInt ball_count_bound(int d, double eps);

DiagProjection intersect(const DiagProjection& p, const DiagProjection& q);
DiagProjection unite(const DiagProjection& p, const DiagProjection& q);
DiagProjection complement(const DiagProjection& p);
// Image set {s(c) : c in p}.
DiagProjection translate(const Perm& s, const DiagProjection& p);
// p as a partial permutation (identity on its support).
PartialPerm to_partial(const DiagProjection& p);

// Uniform element of the symmetric group, Fisher-Yates driven by rng.
Perm random_perm(int d, Rng& rng);

// Cycle lengths of a full permutation, longest first.
std::vector<int> cycle_type(const Perm& a);

}  // namespace sofic
