#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sofic/partial_perm.hpp"
#include "sofic/verify.hpp"

namespace sofic {

// One Monte Carlo slice. fraction counts the survey's event, mean averages
// its statistic; confidence_halfwidth is the 99% normal approximation for
// the headline quantity (the fraction for event surveys, the mean for the
// alternating survey). unreliable marks event counts below 10, where the
// normal width is not trustworthy.
struct SurveyResult {
  int d = 0;
  long long trials = 0;
  long long count = 0;  // trials satisfying the event; fraction * trials
  double fraction = 0.0;
  double mean = 0.0;
  double confidence_halfwidth = 0.0;
  bool unreliable = false;
  std::uint64_t seed = 0;

  bool operator==(const SurveyResult&) const = default;
};

// Fraction of uniform pairs (U, V) with tr(U A V*) < eps, plus the mean of
// those traces. Trial t draws U then V from Rng(seed).child(t), so results
// are reproducible and independent of execution order.
SurveyResult trace_survey(const PartialPerm& a, double eps, long long trials,
                          std::uint64_t seed);

// Exact version iterating every pair in S_d x S_d; d <= 5 or WorkCapExceeded.
// Halfwidth 0, seed 0.
SurveyResult trace_survey_exhaustive(const PartialPerm& a, double eps);

// Sample mean of tr(A_1 (U_rho(1) A_2 U_rho(2)*) A_3 ... A_2n U_rho(2n)*)
// over independent uniform (U_1..U_l); rho (1-based) must cover 1..l with
// l = max entry, and the A list must have even length with equal dimensions.
// The event counted into fraction is an exactly vanishing trace.
SurveyResult alternating_trace_mean(const std::vector<PartialPerm>& as,
                                    const std::vector<int>& rho, long long trials,
                                    std::uint64_t seed);

// Per-d fraction of sampled tuples whose alternating trace falls below eps;
// make_as supplies the A list at each dimension. eps >= 1 accepts every
// sample (the trace never exceeds 1). Slice i, trial t draws from
// Rng(seed).child(i).child(t).
std::vector<SurveyResult> concentration_profile(
    const std::function<std::vector<PartialPerm>(int)>& make_as, const std::vector<int>& rho,
    double eps, const std::vector<int>& d_list, long long trials, std::uint64_t seed);

// Per-d fraction of constructed joins passing ga_check(f_words, n, delta).
// make_join(d, s) must build the model deterministically from s and be safe
// to call concurrently; trial seeds come from Rng(seed).child(i).child(t).
// mean reports the average of each trial's worst defect.
std::vector<SurveyResult> join_success_survey(
    const std::function<SoficAssignment(int, std::uint64_t)>& make_join,
    const std::vector<Word>& f_words, int n, double delta, const std::vector<int>& d_list,
    long long trials, std::uint64_t seed);

std::string survey_csv_header();
std::string survey_csv_row(const SurveyResult& r);

}  // namespace sofic
