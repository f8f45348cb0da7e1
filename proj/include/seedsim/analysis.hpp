#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "seedsim/csv.hpp"
#include "seedsim/errors.hpp"
#include "seedsim/experiment.hpp"
#include "seedsim/metrics.hpp"

namespace seedsim {

enum class WilcoxonMethod { Auto, Exact, NormalApprox };

struct WilcoxonResult {
  double statistic = 0.0;  // W = min(W+, W-)
  double p_value = 1.0;    // two-sided
  std::size_t n = 0;       // non-zero differences
  bool exact = false;
  double w_plus = 0.0;
  double w_minus = 0.0;
};

// Paired signed-rank test on differences y - x. Zero differences are
// dropped; tied magnitudes get average ranks. Auto uses exact enumeration of
// the 2^n sign assignments for n <= 12 and the normal approximation with
// continuity and tie corrections otherwise. The exact path sums a
// subset-sum table over doubled ranks (integers even with tied halves), so
// forcing Exact stays cheap for any n.
inline WilcoxonResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs,
                                           WilcoxonMethod method = WilcoxonMethod::Auto) {
  std::vector<double> diffs;
  for (const auto& [x, y] : pairs) {
    const double d = y - x;
    if (d != 0.0) diffs.push_back(d);
  }
  const std::size_t n = diffs.size();
  if (n < 5) throw InputError("wilcoxon: fewer than 5 non-zero differences");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(diffs[a]) < std::abs(diffs[b]); });

  std::vector<double> rank(n);
  double tie_correction = 0.0;  // sum of t^3 - t over tie groups
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && std::abs(diffs[idx[j]]) == std::abs(diffs[idx[i]])) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j) + 1.0) / 2.0;
    for (std::size_t k = i; k < j; ++k) rank[idx[k]] = avg;
    const double t = static_cast<double>(j - i);
    tie_correction += t * t * t - t;
    i = j;
  }

  WilcoxonResult res;
  res.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0.0) res.w_plus += rank[i];
    else res.w_minus += rank[i];
  }
  res.statistic = std::min(res.w_plus, res.w_minus);

  const bool use_exact =
      method == WilcoxonMethod::Exact || (method == WilcoxonMethod::Auto && n <= 12);
  if (use_exact) {
    // distribution of 2*W+ over all sign assignments
    std::vector<long long> ranks2(n);
    long long sum2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ranks2[i] = std::llround(2.0 * rank[i]);
      sum2 += ranks2[i];
    }
    std::vector<double> count(static_cast<std::size_t>(sum2) + 1, 0.0);
    count[0] = 1.0;
    for (long long r : ranks2) {
      for (long long s = sum2; s >= r; --s) {
        count[static_cast<std::size_t>(s)] += count[static_cast<std::size_t>(s - r)];
      }
    }
    const long long obs2 = std::llround(2.0 * res.w_plus);
    double below = 0.0, above = 0.0, total = 0.0;
    for (long long s = 0; s <= sum2; ++s) {
      const double c = count[static_cast<std::size_t>(s)];
      total += c;
      if (s <= obs2) below += c;
      if (s >= obs2) above += c;
    }
    res.p_value = std::min(1.0, 2.0 * std::min(below, above) / total);
    res.exact = true;
  } else {
    const double nd = static_cast<double>(n);
    const double mu = nd * (nd + 1.0) / 4.0;
    const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_correction / 48.0;
    const double z = (res.statistic - mu + 0.5) / std::sqrt(var);
    res.p_value = std::min(1.0, 2.0 * 0.5 * std::erfc(-z / std::sqrt(2.0)));
    res.exact = false;
  }
  return res;
}

// Aggregates of one group of paired records. Undefined ratios (nan) are left
// out of the means and medians and reported as counts instead.
struct SummaryRow {
  std::string group;
  std::size_t n_records = 0;
  std::size_t n_undefined_coverage = 0;
  std::size_t n_undefined_duration = 0;
  double mean_coverage_ref = std::numeric_limits<double>::quiet_NaN();
  double median_coverage_ref = std::numeric_limits<double>::quiet_NaN();
  double mean_duration_ref = std::numeric_limits<double>::quiet_NaN();
  double median_duration_ref = std::numeric_limits<double>::quiet_NaN();
  double win_fraction = 0.0;  // cases where the sequential run covered strictly more
  double wilcoxon_w = std::numeric_limits<double>::quiet_NaN();
  double wilcoxon_p = std::numeric_limits<double>::quiet_NaN();
  std::size_t wilcoxon_n = 0;
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

inline std::string group_field(const PairRecord& r, const std::string& field) {
  if (field == "network") return r.network;
  if (field == "strategy") return to_string(r.strategy);
  if (field == "mode") return to_string(r.mode);
  if (field == "pp") return format_double(r.pp);
  if (field == "sp") return format_double(r.sp);
  throw InputError("unknown group-by field: " + field);
}

}  // namespace detail

// Groups records by the named key fields (any of network, strategy, mode,
// pp, sp) and aggregates each group. An empty field list yields one "all"
// row. Groups come back sorted by their label.
inline std::vector<SummaryRow> summarize(const std::vector<PairRecord>& records,
                                         const std::vector<std::string>& group_by) {
  if (records.empty()) throw InputError("summarize: no records");

  std::map<std::string, std::vector<const PairRecord*>> groups;
  for (const PairRecord& r : records) {
    std::string label;
    for (const std::string& field : group_by) {
      if (!label.empty()) label += '|';
      label += field + "=" + detail::group_field(r, field);
    }
    if (label.empty()) label = "all";
    groups[label].push_back(&r);
  }

  std::vector<SummaryRow> rows;
  for (const auto& [label, members] : groups) {
    SummaryRow row;
    row.group = label;
    row.n_records = members.size();
    std::vector<double> cov_refs, dur_refs;
    std::vector<std::pair<double, double>> cov_pairs;
    std::size_t wins = 0;
    for (const PairRecord* r : members) {
      if (std::isnan(r->coverage_ref)) ++row.n_undefined_coverage;
      else cov_refs.push_back(r->coverage_ref);
      if (std::isnan(r->duration_ref)) ++row.n_undefined_duration;
      else dur_refs.push_back(r->duration_ref);
      if (r->coverage_seq > r->coverage_ss) ++wins;
      cov_pairs.emplace_back(r->coverage_ss, r->coverage_seq);
    }
    row.mean_coverage_ref = detail::mean_of(cov_refs);
    row.median_coverage_ref = detail::median_of(cov_refs);
    row.mean_duration_ref = detail::mean_of(dur_refs);
    row.median_duration_ref = detail::median_of(dur_refs);
    row.win_fraction = static_cast<double>(wins) / static_cast<double>(members.size());
    for (const auto& [x, y] : cov_pairs) {
      if (y != x) ++row.wilcoxon_n;
    }
    if (row.wilcoxon_n >= 5) {
      WilcoxonResult w = wilcoxon_signed_rank(cov_pairs);
      row.wilcoxon_w = w.statistic;
      row.wilcoxon_p = w.p_value;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline constexpr const char* kSummaryCsvHeader =
    "group,n_records,n_undefined_coverage,n_undefined_duration,mean_coverage_ref,"
    "median_coverage_ref,mean_duration_ref,median_duration_ref,win_fraction,"
    "wilcoxon_w,wilcoxon_p,wilcoxon_n";

inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryCsvHeader << '\n';
  for (const SummaryRow& r : rows) {
    out << r.group << ',' << r.n_records << ',' << r.n_undefined_coverage << ','
        << r.n_undefined_duration << ',' << format_double(r.mean_coverage_ref) << ','
        << format_double(r.median_coverage_ref) << ',' << format_double(r.mean_duration_ref) << ','
        << format_double(r.median_duration_ref) << ',' << format_double(r.win_fraction) << ','
        << format_double(r.wilcoxon_w) << ',' << format_double(r.wilcoxon_p) << ','
        << r.wilcoxon_n << '\n';
  }
}

// Plot-ready series: one scatter point per record.
inline void write_scatter_csv(std::ostream& out, const std::vector<PairRecord>& records) {
  out << "coverage_ref,duration_ref,mode\n";
  for (const PairRecord& r : records) {
    out << format_double(r.coverage_ref) << ',' << format_double(r.duration_ref) << ','
        << to_string(r.mode) << '\n';
  }
}

// Raw durations per record for distribution plots; either column can be
// histogrammed downstream.
inline void write_durations_csv(std::ostream& out, const std::vector<PairRecord>& records) {
  out << "mode,duration_ss,duration_seq\n";
  for (const PairRecord& r : records) {
    out << to_string(r.mode) << ',' << r.duration_ss << ',' << r.duration_seq << '\n';
  }
}

}  // namespace seedsim
