#include "sofic/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sofic/parallel.hpp"
#include "sofic/rng.hpp"

namespace sofic {

namespace {

constexpr double kZ99 = 2.5758293035489004;

double binomial_halfwidth(long long count, long long trials) {
  const double f = static_cast<double>(count) / static_cast<double>(trials);
  return kZ99 * std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
}

// tr(U A V*) without building the composite: (U A V*)(V(p)) = U(A(p)).
double uav_trace(const Perm& u, const PartialPerm& a, const Perm& v) {
  const int d = a.dim();
  int fixed = 0;
  for (int p = 1; p <= d; ++p) {
    const int32_t y = a.image(p);
    if (y != 0 && u.image(y) == v.image(p)) ++fixed;
  }
  return static_cast<double>(fixed) / static_cast<double>(d);
}

void validate_alternating(const std::vector<PartialPerm>& as, const std::vector<int>& rho,
                          int* out_l) {
  if (as.size() < 2 || as.size() % 2 != 0)
    throw Error("alternating survey: need an even number of at least two maps");
  for (const PartialPerm& a : as)
    if (a.dim() != as[0].dim())
      throw DimensionMismatch("alternating survey: map dimensions differ");
  if (rho.size() != as.size())
    throw Error("alternating survey: rho length differs from the map list");
  int l = 0;
  for (const int r : rho) {
    if (r < 1) throw Error("alternating survey: rho entries are 1-based");
    l = std::max(l, r);
  }
  std::vector<char> hit(static_cast<size_t>(l), 0);
  for (const int r : rho) hit[static_cast<size_t>(r) - 1] = 1;
  for (const char h : hit)
    if (!h) throw Error("alternating survey: rho must cover 1..l");
  *out_l = l;
}

double alternating_trace(const std::vector<PartialPerm>& as, const std::vector<int>& rho,
                         const std::vector<Perm>& us) {
  PartialPerm acc = as[0];
  for (size_t j = 0; j < as.size(); ++j) {
    if (j > 0) acc = compose(acc, as[j]);
    const Perm& u = us[static_cast<size_t>(rho[j]) - 1];
    acc = compose(acc, (j % 2 == 0 ? u : u.inverse()).to_partial());
  }
  return trace(acc);
}

SurveyResult fill_fraction_survey(int d, long long trials, long long count, double mean_sum,
                                  std::uint64_t seed) {
  SurveyResult r;
  r.d = d;
  r.trials = trials;
  r.count = count;
  r.fraction = static_cast<double>(count) / static_cast<double>(trials);
  r.mean = mean_sum / static_cast<double>(trials);
  r.confidence_halfwidth = binomial_halfwidth(count, trials);
  r.unreliable = count < 10;
  r.seed = seed;
  return r;
}

}  // namespace

SurveyResult trace_survey(const PartialPerm& a, double eps, long long trials,
                          std::uint64_t seed) {
  if (trials < 1) throw Error("trace_survey: trials must be positive");
  const int d = a.dim();
  const Rng master(seed);
  const std::vector<double> traces =
      parallel_map<double>(static_cast<size_t>(trials), [&](size_t t) {
        Rng rng = master.child(static_cast<uint64_t>(t));
        const Perm u = random_perm(d, rng);
        const Perm v = random_perm(d, rng);
        return uav_trace(u, a, v);
      });
  long long count = 0;
  double sum = 0.0;
  for (const double tr : traces) {
    if (tr < eps) ++count;
    sum += tr;
  }
  return fill_fraction_survey(d, trials, count, sum, seed);
}

SurveyResult trace_survey_exhaustive(const PartialPerm& a, double eps) {
  const int d = a.dim();
  if (d > 5) throw WorkCapExceeded("trace_survey_exhaustive: d! squared pairs need d <= 5");
  std::vector<int32_t> ui(static_cast<size_t>(d)), vi(static_cast<size_t>(d));
  long long count = 0, total = 0;
  double sum = 0.0;
  for (int c = 1; c <= d; ++c) ui[static_cast<size_t>(c) - 1] = c;
  do {
    const Perm u = Perm::from_images(d, ui);
    for (int c = 1; c <= d; ++c) vi[static_cast<size_t>(c) - 1] = c;
    do {
      const Perm v = Perm::from_images(d, vi);
      const double tr = uav_trace(u, a, v);
      if (tr < eps) ++count;
      sum += tr;
      ++total;
    } while (std::next_permutation(vi.begin(), vi.end()));
  } while (std::next_permutation(ui.begin(), ui.end()));
  SurveyResult r;
  r.d = d;
  r.trials = total;
  r.count = count;
  r.fraction = static_cast<double>(count) / static_cast<double>(total);
  r.mean = sum / static_cast<double>(total);
  r.confidence_halfwidth = 0.0;
  r.unreliable = count < 10;
  r.seed = 0;
  return r;
}

SurveyResult alternating_trace_mean(const std::vector<PartialPerm>& as,
                                    const std::vector<int>& rho, long long trials,
                                    std::uint64_t seed) {
  if (trials < 1) throw Error("alternating_trace_mean: trials must be positive");
  int l = 0;
  validate_alternating(as, rho, &l);
  const int d = as[0].dim();
  const Rng master(seed);
  const std::vector<double> traces =
      parallel_map<double>(static_cast<size_t>(trials), [&](size_t t) {
        Rng rng = master.child(static_cast<uint64_t>(t));
        std::vector<Perm> us;
        us.reserve(static_cast<size_t>(l));
        for (int k = 0; k < l; ++k) us.push_back(random_perm(d, rng));
        return alternating_trace(as, rho, us);
      });
  long long zero = 0;
  double sum = 0.0;
  for (const double tr : traces) {
    if (tr == 0.0) ++zero;
    sum += tr;
  }
  SurveyResult r;
  r.d = d;
  r.trials = trials;
  r.count = zero;
  r.fraction = static_cast<double>(zero) / static_cast<double>(trials);
  r.mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (const double tr : traces) ss += (tr - r.mean) * (tr - r.mean);
  r.confidence_halfwidth =
      trials > 1 ? kZ99 * std::sqrt(ss / static_cast<double>(trials - 1) /
                                    static_cast<double>(trials))
                 : 0.0;
  r.unreliable = zero < 10;
  r.seed = seed;
  return r;
}

std::vector<SurveyResult> concentration_profile(
    const std::function<std::vector<PartialPerm>(int)>& make_as, const std::vector<int>& rho,
    double eps, const std::vector<int>& d_list, long long trials, std::uint64_t seed) {
  if (trials < 1) throw Error("concentration_profile: trials must be positive");
  std::vector<SurveyResult> out;
  const Rng master(seed);
  for (size_t i = 0; i < d_list.size(); ++i) {
    const int d = d_list[i];
    const std::vector<PartialPerm> as = make_as(d);
    int l = 0;
    validate_alternating(as, rho, &l);
    if (as[0].dim() != d)
      throw DimensionMismatch("concentration_profile: generator returned the wrong dimension");
    const Rng slice = master.child(static_cast<uint64_t>(i));
    const std::vector<double> traces =
        parallel_map<double>(static_cast<size_t>(trials), [&](size_t t) {
          Rng rng = slice.child(static_cast<uint64_t>(t));
          std::vector<Perm> us;
          us.reserve(static_cast<size_t>(l));
          for (int k = 0; k < l; ++k) us.push_back(random_perm(d, rng));
          return alternating_trace(as, rho, us);
        });
    long long count = 0;
    double sum = 0.0;
    for (const double tr : traces) {
      if (tr < eps || eps >= 1.0) ++count;
      sum += tr;
    }
    out.push_back(fill_fraction_survey(d, trials, count, sum, seed));
  }
  return out;
}

std::vector<SurveyResult> join_success_survey(
    const std::function<SoficAssignment(int, std::uint64_t)>& make_join,
    const std::vector<Word>& f_words, int n, double delta, const std::vector<int>& d_list,
    long long trials, std::uint64_t seed) {
  if (trials < 1) throw Error("join_success_survey: trials must be positive");
  std::vector<SurveyResult> out;
  const Rng master(seed);
  for (size_t i = 0; i < d_list.size(); ++i) {
    const int d = d_list[i];
    const Rng slice = master.child(static_cast<uint64_t>(i));
    const std::vector<std::pair<int, double>> runs =
        parallel_map<std::pair<int, double>>(static_cast<size_t>(trials), [&](size_t t) {
          const std::uint64_t s = slice.child(static_cast<uint64_t>(t)).seed();
          const SoficAssignment join = make_join(d, s);
          const DefectReport rep = ga_check(join, f_words, n, delta);
          return std::pair<int, double>(rep.passed ? 1 : 0,
                                        std::max(rep.max_mult_defect, rep.max_trace_defect));
        });
    long long count = 0;
    double sum = 0.0;
    for (const auto& [hit, worst] : runs) {
      count += hit;
      sum += worst;
    }
    out.push_back(fill_fraction_survey(d, trials, count, sum, seed));
  }
  return out;
}

std::string survey_csv_header() { return "d,trials,count,fraction,mean,halfwidth,unreliable,seed"; }

std::string survey_csv_row(const SurveyResult& r) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%d,%lld,%lld,%.9g,%.9g,%.9g,%d,%llu", r.d, r.trials, r.count,
                r.fraction, r.mean, r.confidence_halfwidth, r.unreliable ? 1 : 0,
                static_cast<unsigned long long>(r.seed));
  return buf;
}

}  // namespace sofic
