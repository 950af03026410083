#include "sofic/partial_perm.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>

namespace sofic {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw DimensionMismatch("dimension " + std::to_string(dim) + " outside [1, 2^20]");
}

size_t mask_words(int dim) { return (static_cast<size_t>(dim) + 63) / 64; }

void require_same_dim(int a, int b) {
  if (a != b)
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b));
}

}  // namespace

PartialPerm::PartialPerm(int dim) : dim_(dim), dom_size_(0) {
  check_dim(dim);
  img_.assign(static_cast<size_t>(dim), 0);
  dom_.assign(mask_words(dim), 0);
}

PartialPerm PartialPerm::identity(int dim) {
  PartialPerm a(dim);
  for (int c = 1; c <= dim; ++c) a.set_image(c, c);
  return a;
}

PartialPerm PartialPerm::from_images(int dim, std::vector<int32_t> img) {
  check_dim(dim);
  if (img.size() != static_cast<size_t>(dim))
    throw DimensionMismatch("image array length != dimension");
  PartialPerm a(dim);
  std::vector<char> used(static_cast<size_t>(dim) + 1, 0);
  for (int c = 1; c <= dim; ++c) {
    const int32_t v = img[static_cast<size_t>(c) - 1];
    if (v == 0) continue;
    if (v < 1 || v > dim) throw Error("image value out of range");
    if (used[static_cast<size_t>(v)]) throw Error("image array not injective");
    used[static_cast<size_t>(v)] = 1;
    a.set_image(c, v);
  }
  return a;
}

void PartialPerm::set_image(int c, int32_t v) {
  assert(c >= 1 && c <= dim_ && v >= 1 && v <= dim_);
  assert(img_[static_cast<size_t>(c) - 1] == 0);
  img_[static_cast<size_t>(c) - 1] = v;
  const size_t i = static_cast<size_t>(c) - 1;
  dom_[i >> 6] |= uint64_t{1} << (i & 63);
  ++dom_size_;
}

Perm PartialPerm::to_perm() const {
  if (!is_full()) throw Error("partial permutation is not full");
  return Perm::from_images(dim_, img_);
}

bool PartialPerm::operator<(const PartialPerm& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  return img_ < o.img_;
}

Perm::Perm(int dim) : dim_(dim) {
  check_dim(dim);
  img_.resize(static_cast<size_t>(dim));
  for (int c = 1; c <= dim; ++c) img_[static_cast<size_t>(c) - 1] = c;
}

Perm Perm::from_images(int dim, std::vector<int32_t> img) {
  check_dim(dim);
  if (img.size() != static_cast<size_t>(dim))
    throw DimensionMismatch("image array length != dimension");
  std::vector<char> used(static_cast<size_t>(dim) + 1, 0);
  for (const int32_t v : img) {
    if (v < 1 || v > dim) throw Error("image value out of range");
    if (used[static_cast<size_t>(v)]) throw Error("image array not a bijection");
    used[static_cast<size_t>(v)] = 1;
  }
  Perm a(dim);
  a.img_ = std::move(img);
  return a;
}

Perm Perm::inverse() const {
  Perm r(dim_);
  for (int c = 1; c <= dim_; ++c) r.img_[static_cast<size_t>(image(c)) - 1] = c;
  return r;
}

PartialPerm Perm::to_partial() const {
  PartialPerm a(dim_);
  for (int c = 1; c <= dim_; ++c) a.set_image(c, image(c));
  return a;
}

bool Perm::is_identity() const {
  for (int c = 1; c <= dim_; ++c)
    if (image(c) != c) return false;
  return true;
}

bool Perm::operator<(const Perm& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  return img_ < o.img_;
}

DiagProjection::DiagProjection(int dim) : dim_(dim), size_(0) {
  check_dim(dim);
  bits_.assign(mask_words(dim), 0);
}

DiagProjection DiagProjection::full(int dim) {
  DiagProjection p(dim);
  for (int c = 1; c <= dim; ++c) p.add(c);
  return p;
}

DiagProjection DiagProjection::from_points(int dim, const std::vector<int>& pts) {
  DiagProjection p(dim);
  for (const int c : pts) {
    if (c < 1 || c > dim) throw Error("projection point out of range");
    if (!p.contains(c)) p.add(c);
  }
  return p;
}

void DiagProjection::add(int c) {
  assert(c >= 1 && c <= dim_ && !contains(c));
  const size_t i = static_cast<size_t>(c) - 1;
  bits_[i >> 6] |= uint64_t{1} << (i & 63);
  ++size_;
}

std::vector<int> DiagProjection::points() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(size_));
  for (int c = 1; c <= dim_; ++c)
    if (contains(c)) out.push_back(c);
  return out;
}

bool DiagProjection::operator<(const DiagProjection& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  return bits_ < o.bits_;
}

PartialPerm compose(const PartialPerm& a, const PartialPerm& b) {
  require_same_dim(a.dim(), b.dim());
  PartialPerm r(a.dim());
  for (int c = 1; c <= b.dim(); ++c) {
    const int32_t mid = b.image(c);
    if (mid == 0) continue;
    const int32_t v = a.image(mid);
    if (v != 0) r.set_image(c, v);
  }
  return r;
}

Perm compose(const Perm& a, const Perm& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<int32_t> img(static_cast<size_t>(a.dim()));
  for (int c = 1; c <= b.dim(); ++c) img[static_cast<size_t>(c) - 1] = a.image(b.image(c));
  return Perm::from_images(a.dim(), std::move(img));
}

PartialPerm adjoint(const PartialPerm& a) {
  PartialPerm r(a.dim());
  for (int c = 1; c <= a.dim(); ++c) {
    const int32_t v = a.image(c);
    if (v != 0) r.set_image(v, c);
  }
  return r;
}

double trace(const PartialPerm& a) {
  int fixed = 0;
  for (int c = 1; c <= a.dim(); ++c)
    if (a.image(c) == c) ++fixed;
  return static_cast<double>(fixed) / a.dim();
}

double trace(const Perm& a) {
  int fixed = 0;
  for (int c = 1; c <= a.dim(); ++c)
    if (a.image(c) == c) ++fixed;
  return static_cast<double>(fixed) / a.dim();
}

double trace(const DiagProjection& p) {
  return static_cast<double>(p.support_size()) / p.dim();
}

double hs_dist(const PartialPerm& a, const PartialPerm& b) {
  require_same_dim(a.dim(), b.dim());
  int agree = 0;
  for (int c = 1; c <= a.dim(); ++c) {
    const int32_t va = a.image(c);
    if (va != 0 && va == b.image(c)) ++agree;
  }
  const double num = a.domain_size() + b.domain_size() - 2.0 * agree;
  return std::sqrt(num / a.dim());
}

double hs_dist(const Perm& a, const Perm& b) {
  require_same_dim(a.dim(), b.dim());
  int diff = 0;
  for (int c = 1; c <= a.dim(); ++c)
    if (a.image(c) != b.image(c)) ++diff;
  return std::sqrt(2.0 * diff / a.dim());
}

double hs_dist(const DiagProjection& p, const DiagProjection& q) {
  require_same_dim(p.dim(), q.dim());
  int symdiff = 0;
  for (size_t w = 0; w < p.bits().size(); ++w)
    symdiff += std::popcount(p.bits()[w] ^ q.bits()[w]);
  return std::sqrt(static_cast<double>(symdiff) / p.dim());
}

double hamming_dist(const Perm& a, const Perm& b) {
  require_same_dim(a.dim(), b.dim());
  int diff = 0;
  for (int c = 1; c <= a.dim(); ++c)
    if (a.image(c) != b.image(c)) ++diff;
  return static_cast<double>(diff) / a.dim();
}

PartialPerm conjugate(const Perm& g, const PartialPerm& a) {
  require_same_dim(g.dim(), a.dim());
  PartialPerm r(a.dim());
  for (int c = 1; c <= a.dim(); ++c) {
    const int32_t v = a.image(c);
    if (v != 0) r.set_image(g.image(c), g.image(v));
  }
  return r;
}

Perm conjugate(const Perm& g, const Perm& a) {
  require_same_dim(g.dim(), a.dim());
  std::vector<int32_t> img(static_cast<size_t>(a.dim()));
  for (int c = 1; c <= a.dim(); ++c)
    img[static_cast<size_t>(g.image(c)) - 1] = g.image(a.image(c));
  return Perm::from_images(a.dim(), std::move(img));
}

double rho_max(const std::vector<PartialPerm>& xs, const std::vector<PartialPerm>& ys) {
  if (xs.size() != ys.size()) throw DimensionMismatch("rho_max: list lengths differ");
  double m = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) m = std::max(m, hs_dist(xs[i], ys[i]));
  return m;
}

double rho_max(const std::vector<Perm>& xs, const std::vector<Perm>& ys) {
  if (xs.size() != ys.size()) throw DimensionMismatch("rho_max: list lengths differ");
  double m = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) m = std::max(m, hs_dist(xs[i], ys[i]));
  return m;
}

BigInt ball_count_bound(int d, double eps) {
  check_dim(d);
  long long m = static_cast<long long>(std::floor(eps * eps * d));
  m = std::clamp<long long>(m, 0, d);
  return binomial(static_cast<unsigned>(d), static_cast<unsigned>(m)) *
         pow_int(d, static_cast<unsigned>(m));
}

DiagProjection intersect(const DiagProjection& p, const DiagProjection& q) {
  require_same_dim(p.dim(), q.dim());
  DiagProjection r(p.dim());
  for (int c = 1; c <= p.dim(); ++c)
    if (p.contains(c) && q.contains(c)) r.add(c);
  return r;
}

DiagProjection unite(const DiagProjection& p, const DiagProjection& q) {
  require_same_dim(p.dim(), q.dim());
  DiagProjection r(p.dim());
  for (int c = 1; c <= p.dim(); ++c)
    if (p.contains(c) || q.contains(c)) r.add(c);
  return r;
}

DiagProjection complement(const DiagProjection& p) {
  DiagProjection r(p.dim());
  for (int c = 1; c <= p.dim(); ++c)
    if (!p.contains(c)) r.add(c);
  return r;
}

DiagProjection translate(const Perm& s, const DiagProjection& p) {
  require_same_dim(s.dim(), p.dim());
  DiagProjection r(p.dim());
  std::vector<int> pts;
  for (int c = 1; c <= p.dim(); ++c)
    if (p.contains(c)) pts.push_back(s.image(c));
  std::sort(pts.begin(), pts.end());
  for (const int c : pts) r.add(c);
  return r;
}

PartialPerm to_partial(const DiagProjection& p) {
  PartialPerm a(p.dim());
  for (int c = 1; c <= p.dim(); ++c)
    if (p.contains(c)) a.set_image(c, c);
  return a;
}

Perm random_perm(int d, Rng& rng) {
  check_dim(d);
  std::vector<int32_t> img(static_cast<size_t>(d));
  for (int c = 1; c <= d; ++c) img[static_cast<size_t>(c) - 1] = c;
  for (int i = d - 1; i > 0; --i) {
    const auto j = static_cast<size_t>(rng.below(static_cast<uint64_t>(i) + 1));
    std::swap(img[static_cast<size_t>(i)], img[j]);
  }
  return Perm::from_images(d, std::move(img));
}

std::vector<int> cycle_type(const Perm& a) {
  std::vector<char> seen(static_cast<size_t>(a.dim()) + 1, 0);
  std::vector<int> lens;
  for (int c = 1; c <= a.dim(); ++c) {
    if (seen[static_cast<size_t>(c)]) continue;
    int len = 0;
    int x = c;
    while (!seen[static_cast<size_t>(x)]) {
      seen[static_cast<size_t>(x)] = 1;
      x = a.image(x);
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

}  // namespace sofic
