#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sofic/bigint.hpp"
#include "sofic/group.hpp"
#include "sofic/partial_perm.hpp"
#include "sofic/verify.hpp"

namespace sofic {

// Counting only runs in the strict regime delta < sqrt(2/d), where the
// approximation inequalities collapse to exact equalities: every counted
// assignment is exactly multiplicative over the radius-n ball and every
// nonidentity ball element gets a fixed-point-free image. Within the regime
// the count does not depend on delta, which is what makes it reproducible.
enum class CensusMode { Exhaustive, OrbitDecomposed };

struct CountRecord {
  std::string group;
  std::vector<Word> f_words;
  std::vector<Word> e_words;
  std::string f_text;  // space-joined formatted words, for CSV
  std::string e_text;
  int n = 0;
  double delta = 0.0;
  int d = 0;
  BigInt count = 0;
  double rate = 0.0;           // ln(count) / (d ln d); 0 when count <= 1
  bool rate_minus_inf = false; // exactly when count == 0
  CensusMode mode = CensusMode::Exhaustive;
  double seconds = 0.0;
};

struct CensusOptions {
  CensusMode mode = CensusMode::Exhaustive;
  // Upper bound on candidates the run may visit, checked up front: (d!)^|F|
  // for exhaustive mode, the partition count p(d) for orbit mode. A run
  // whose worst case exceeds the cap raises WorkCapExceeded before any work.
  std::uint64_t work_cap = 200000000ull;
  bool collect_witnesses = false;
  std::size_t witness_cap = 100000;
};

struct CensusResult {
  CountRecord record;
  // Full passing assignments (one image per distinct nonidentity normal
  // form of F), in enumeration order. Only filled on request.
  std::vector<SoficAssignment> witnesses;
  bool witnesses_truncated = false;
};

// Count of distinct restrictions to E over all assignments of permutations
// to F that pass the exact ball check. Requires E a subset of F (by normal
// form) and the strict regime. Exhaustive mode walks candidate images one
// generator at a time in lexicographic image order, checking every
// fully-determined product condition after each assignment; subtrees are
// partitioned by the first generator's image of point 1 and merged in a
// fixed order, so the result is schedule-independent. Orbit-decomposed mode
// sums d!/|centralizer| over one canonical representative per conjugacy
// class and is limited to a single generator with E = F, where the check is
// a class function.
CensusResult enumerate_ga(GroupPtr g, const std::vector<Word>& f_words,
                          const std::vector<Word>& e_words, int n, double delta, int d,
                          const CensusOptions& opt = {});

std::vector<CountRecord> dimension_profile(GroupPtr g, const std::vector<Word>& f_words,
                                           const std::vector<Word>& e_words, int n, double delta,
                                           const std::vector<int>& d_list,
                                           const CensusOptions& opt = {});

// Greedy packing count under the restriction pseudometric over e_words: a
// map is kept when its distance to every already-kept map strictly exceeds
// eps. The result sits between the exact packing numbers at 2*eps and eps;
// at eps = 0 it equals the number of distinct restrictions.
int packing_number(const std::vector<SoficAssignment>& maps, const std::vector<Word>& e_words,
                   double eps);

// ln(count) / (d ln d). Returns 0 for count 1 and -infinity for count 0
// (minus_inf set when non-null). Requires d >= 2.
double rate_of(const BigInt& count, int d, bool* minus_inf = nullptr);

// (sum_j C(d,j)^2 j!)^k: the number of k-tuples of partial permutations,
// hence an upper bound on any census count with |E| = k. The coarse variant
// replaces the base with C(2d,d) d!.
BigInt upper_bound_count(int d, int k);
BigInt upper_bound_count_coarse(int d, int k);

// Every partial permutation of {1..d}, in lexicographic image order.
std::vector<PartialPerm> all_partial_perms(int d);

// Representative of the conjugacy class with the given cycle lengths:
// cycles laid out on consecutive points, shortest first. This is the
// lexicographically least element of the class.
Perm canonical_cycle_perm(int d, const std::vector<int>& lengths);

// Lexicographically least simultaneous conjugate g p g^{-1}, found by
// branch-and-bound over g with prefix pruning. Exponential in the worst
// case; meant for validating canonical representatives at small d.
Perm lex_least_conjugate(const Perm& p);

BigInt conjugacy_class_size(int d, const std::vector<int>& lengths);

std::string census_mode_name(CensusMode m);
std::string census_csv_header();
std::string census_csv_row(const CountRecord& r);

}  // namespace sofic
