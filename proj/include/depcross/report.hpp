#ifndef DEPCROSS_REPORT_HPP
#define DEPCROSS_REPORT_HPP

// Aggregation of per-sentence results into treebank summaries, by-length
// groupings and across-treebank curves, plus the TSV serialization of all
// of them. Output is byte-deterministic: fixed column orders, shortest
// round-trip number formatting, no timestamps, and plain left-to-right
// accumulation so any independent implementation can reproduce the bytes.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "depcross/conll.hpp"
#include "depcross/text.hpp"
#include "depcross/version.hpp"

namespace depcross {

enum class StddevMode { Population, Sample };

inline const char* to_string(StddevMode m) {
  return m == StddevMode::Population ? "population" : "sample";
}

inline double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / double(xs.size());
}

inline double median_of(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of empty sequence");
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : (xs[m - 1] + xs[m]) / 2.0;
}

// Population or sample standard deviation; a single point has deviation 0
// under either convention here.
inline double stddev_of(std::span<const double> xs, double mean,
                        StddevMode mode) {
  if (xs.empty()) throw std::invalid_argument("stddev of empty sequence");
  if (xs.size() == 1) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double denom =
      mode == StddevMode::Population ? double(xs.size()) : double(xs.size() - 1);
  return std::sqrt(ss / denom);
}

// One analyzed sentence, as written to the per-treebank sentences TSV.
struct SentenceMetricsRow {
  long long sentence = 0;  // ordinal in the input stream
  int n = 0;
  long long c_true = 0;
  long long q = 0;
  long long d = 0;
  double k2 = 0.0;
  double h = 0.0;
  double e0 = 0.0;
  double e2 = 0.0;
  double delta0 = 0.0;
  double delta2 = 0.0;
};

// Options that shape aggregation output (and participate in the config
// fingerprint; thread count deliberately does not).
struct AnalysisOptions {
  int min_group_size = 1;
  StddevMode stddev = StddevMode::Population;
};

// Canonical serialization of everything that may change output bytes.
// ingest is null for runs that never parse a corpus (report).
inline std::string canonical_options(const IngestConfig* ingest,
                                     const AnalysisOptions& opt) {
  std::string s;
  if (ingest) {
    s += ingest->canonical();
    s += '\n';
  }
  s += "min_group_size=" + format_int(opt.min_group_size);
  s += "\nstddev=";
  s += to_string(opt.stddev);
  return s;
}

inline std::uint64_t config_fingerprint(const IngestConfig* ingest,
                                        const AnalysisOptions& opt) {
  return fnv1a64(canonical_options(ingest, opt));
}

struct OutputHeader {
  std::string config;  // 16 hex digits
  std::optional<std::string> stddev;
  std::optional<std::string> treebank;
  std::optional<std::uint64_t> seed;
};

inline void write_header(std::ostream& out, const OutputHeader& h) {
  out << "# " << kToolName << ' ' << kToolVersion << '\n';
  out << "# config: " << h.config << '\n';
  if (h.stddev) out << "# stddev: " << *h.stddev << '\n';
  if (h.treebank) out << "# treebank: " << *h.treebank << '\n';
  if (h.seed) out << "# seed: " << *h.seed << '\n';
}

inline void write_sentences_tsv(std::ostream& out, const OutputHeader& header,
                                std::span<const SentenceMetricsRow> rows) {
  write_header(out, header);
  out << "sentence\tn\tc_true\tq\td\tk2\th\te0\te2\tdelta0\tdelta2\n";
  for (const auto& r : rows) {
    out << r.sentence << '\t' << r.n << '\t' << r.c_true << '\t' << r.q
        << '\t' << r.d << '\t' << format_double(r.k2) << '\t'
        << format_double(r.h) << '\t' << format_double(r.e0) << '\t'
        << format_double(r.e2) << '\t' << format_double(r.delta0) << '\t'
        << format_double(r.delta2) << '\n';
  }
}

struct SentencesFile {
  std::string treebank;
  std::vector<SentenceMetricsRow> rows;
};

// Reads back a sentences TSV produced by write_sentences_tsv.
inline SentencesFile read_sentences_tsv(std::istream& in) {
  SentencesFile out;
  std::string line;
  long line_no = 0;
  bool saw_header = false;
  const auto bad = [&](const std::string& what) {
    return std::runtime_error("sentences tsv line " + std::to_string(line_no) +
                              ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      constexpr std::string_view kTag = "# treebank: ";
      if (line.size() > kTag.size() && std::string_view(line).substr(0, kTag.size()) == kTag)
        out.treebank = line.substr(kTag.size());
      continue;
    }
    if (!saw_header) {
      if (line != "sentence\tn\tc_true\tq\td\tk2\th\te0\te2\tdelta0\tdelta2")
        throw bad("unexpected column header");
      saw_header = true;
      continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 11) throw bad("expected 11 columns");
    SentenceMetricsRow r;
    const auto int_field = [&](std::string_view f, long long& v) {
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size())
        throw bad("bad integer field");
    };
    const auto dbl_field = [&](std::string_view f, double& v) {
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size())
        throw bad("bad numeric field");
    };
    long long n = 0;
    int_field(cols[0], r.sentence);
    int_field(cols[1], n);
    r.n = int(n);
    int_field(cols[2], r.c_true);
    int_field(cols[3], r.q);
    int_field(cols[4], r.d);
    dbl_field(cols[5], r.k2);
    dbl_field(cols[6], r.h);
    dbl_field(cols[7], r.e0);
    dbl_field(cols[8], r.e2);
    dbl_field(cols[9], r.delta0);
    dbl_field(cols[10], r.delta2);
    out.rows.push_back(r);
  }
  if (!saw_header) throw std::runtime_error("sentences tsv: no column header");
  return out;
}

// Per-treebank roll-up (one row of the corpus summary table).
struct TreebankSummaryRow {
  std::string treebank;
  long long sentences = 0;  // raw sentences seen in the input
  long long included = 0;
  long long excluded_malformed = 0;
  long long excluded_not_tree = 0;
  long long excluded_star = 0;
  double c_true_avg = 0.0;
  double delta0_avg = 0.0;
  double delta2_avg = 0.0;
  double delta2_median = 0.0;
  double delta2_stddev = 0.0;
};

struct TreebankCounts {
  long long raw = 0;
  long long malformed = 0;
  long long not_tree = 0;
  long long star = 0;
};

inline TreebankSummaryRow summarize_treebank(
    std::string treebank, std::span<const SentenceMetricsRow> rows,
    const TreebankCounts& counts, StddevMode mode) {
  if (rows.empty())
    throw std::invalid_argument("treebank '" + treebank +
                                "' has no filtered sentences");
  TreebankSummaryRow out;
  out.treebank = std::move(treebank);
  out.sentences = counts.raw;
  out.included = static_cast<long long>(rows.size());
  out.excluded_malformed = counts.malformed;
  out.excluded_not_tree = counts.not_tree;
  out.excluded_star = counts.star;
  std::vector<double> c, d0, d2;
  c.reserve(rows.size());
  d0.reserve(rows.size());
  d2.reserve(rows.size());
  for (const auto& r : rows) {
    c.push_back(double(r.c_true));
    d0.push_back(r.delta0);
    d2.push_back(r.delta2);
  }
  out.c_true_avg = mean_of(c);
  out.delta0_avg = mean_of(d0);
  out.delta2_avg = mean_of(d2);
  out.delta2_median = median_of(d2);
  out.delta2_stddev = stddev_of(d2, out.delta2_avg, mode);
  return out;
}

// Rows sorted by decreasing average true crossings (ties by name) so the
// hardest treebanks come first.
inline void sort_summary(std::vector<TreebankSummaryRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const TreebankSummaryRow& x, const TreebankSummaryRow& y) {
              if (x.c_true_avg != y.c_true_avg)
                return x.c_true_avg > y.c_true_avg;
              return x.treebank < y.treebank;
            });
}

inline void write_summary_tsv(std::ostream& out, const OutputHeader& header,
                              std::span<const TreebankSummaryRow> rows) {
  write_header(out, header);
  out << "treebank\tsentences\tincluded\texcluded_malformed\t"
         "excluded_not_tree\texcluded_star\tc_true_avg\tdelta0_avg\t"
         "delta2_avg\tdelta2_median\tdelta2_stddev\n";
  for (const auto& r : rows) {
    out << r.treebank << '\t' << r.sentences << '\t' << r.included << '\t'
        << r.excluded_malformed << '\t' << r.excluded_not_tree << '\t'
        << r.excluded_star << '\t' << format_double(r.c_true_avg) << '\t'
        << format_double(r.delta0_avg) << '\t' << format_double(r.delta2_avg)
        << '\t' << format_double(r.delta2_median) << '\t'
        << format_double(r.delta2_stddev) << '\n';
  }
}

struct LengthGroupRow {
  int n = 0;
  long long sentences = 0;
  double delta0_mean = 0.0;
  double delta2_mean = 0.0;
};

// By-length aggregation of one treebank: group means per sentence length,
// then summary statistics over the group means (each length weighs the
// same, however many sentences it holds; this differs from the pooled
// per-sentence average on purpose and both are reported).
struct ByLengthSummary {
  std::vector<LengthGroupRow> groups;  // ascending n
  double delta0_avg = 0.0;
  double delta2_avg = 0.0;
  double delta2_median = 0.0;
  double delta2_stddev = 0.0;
};

inline ByLengthSummary summarize_by_length(
    std::span<const SentenceMetricsRow> rows, int min_group_size,
    StddevMode mode) {
  if (min_group_size < 1)
    throw std::invalid_argument("min_group_size must be >= 1");
  std::map<int, std::vector<const SentenceMetricsRow*>> by_n;
  for (const auto& r : rows) by_n[r.n].push_back(&r);
  ByLengthSummary out;
  std::vector<double> g0, g2;
  for (const auto& [n, group] : by_n) {
    if (static_cast<long long>(group.size()) < min_group_size) continue;
    std::vector<double> d0, d2;
    d0.reserve(group.size());
    d2.reserve(group.size());
    for (const auto* r : group) {
      d0.push_back(r->delta0);
      d2.push_back(r->delta2);
    }
    LengthGroupRow row;
    row.n = n;
    row.sentences = static_cast<long long>(group.size());
    row.delta0_mean = mean_of(d0);
    row.delta2_mean = mean_of(d2);
    out.groups.push_back(row);
    g0.push_back(row.delta0_mean);
    g2.push_back(row.delta2_mean);
  }
  if (out.groups.empty())
    throw std::invalid_argument("no length group reaches the minimum size");
  out.delta0_avg = mean_of(g0);
  out.delta2_avg = mean_of(g2);
  out.delta2_median = median_of(g2);
  out.delta2_stddev = stddev_of(g2, out.delta2_avg, mode);
  return out;
}

inline void write_length_groups_tsv(std::ostream& out,
                                    const OutputHeader& header,
                                    std::span<const LengthGroupRow> rows) {
  write_header(out, header);
  out << "n\tsentences\tdelta0_mean\tdelta2_mean\n";
  for (const auto& r : rows) {
    out << r.n << '\t' << r.sentences << '\t' << format_double(r.delta0_mean)
        << '\t' << format_double(r.delta2_mean) << '\n';
  }
}

struct ByLengthOverallRow {
  std::string treebank;
  long long lengths = 0;  // number of groups that met the minimum size
  double delta0_avg = 0.0;
  double delta2_avg = 0.0;
  double delta2_median = 0.0;
  double delta2_stddev = 0.0;
};

inline void write_bylength_tsv(std::ostream& out, const OutputHeader& header,
                               std::span<const ByLengthOverallRow> rows) {
  write_header(out, header);
  out << "treebank\tlengths\tdelta0_avg\tdelta2_avg\tdelta2_median\t"
         "delta2_stddev\n";
  for (const auto& r : rows) {
    out << r.treebank << '\t' << r.lengths << '\t'
        << format_double(r.delta0_avg) << '\t' << format_double(r.delta2_avg)
        << '\t' << format_double(r.delta2_median) << '\t'
        << format_double(r.delta2_stddev) << '\n';
  }
}

// One point of the across-treebank curve: statistics at sentence length n
// over the per-treebank group means. Lengths present in fewer than two
// treebanks are dropped (a single treebank cannot show agreement).
struct CurvePoint {
  int n = 0;
  long long treebanks = 0;
  double delta0_mean = 0.0;
  double delta0_stddev = 0.0;
  double delta2_mean = 0.0;
  double delta2_stddev = 0.0;
};

inline std::vector<CurvePoint> curve_across_treebanks(
    std::span<const std::vector<LengthGroupRow>> per_treebank,
    StddevMode mode) {
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_n;
  for (const auto& groups : per_treebank) {
    for (const auto& g : groups) {
      by_n[g.n].first.push_back(g.delta0_mean);
      by_n[g.n].second.push_back(g.delta2_mean);
    }
  }
  std::vector<CurvePoint> out;
  for (const auto& [n, vals] : by_n) {
    const auto& [d0, d2] = vals;
    if (d0.size() < 2) continue;
    CurvePoint p;
    p.n = n;
    p.treebanks = static_cast<long long>(d0.size());
    p.delta0_mean = mean_of(d0);
    p.delta0_stddev = stddev_of(d0, p.delta0_mean, mode);
    p.delta2_mean = mean_of(d2);
    p.delta2_stddev = stddev_of(d2, p.delta2_mean, mode);
    out.push_back(p);
  }
  return out;
}

// The null_ratio column restates the arrangement-blind reference value 1/3
// on every row, the flat line the curves are read against.
inline void write_curves_tsv(std::ostream& out, const OutputHeader& header,
                             std::span<const CurvePoint> points) {
  write_header(out, header);
  out << "n\ttreebanks\tdelta0_mean\tdelta0_stddev\tdelta2_mean\t"
         "delta2_stddev\tnull_ratio\n";
  const std::string third = format_double(1.0 / 3.0);
  for (const auto& p : points) {
    out << p.n << '\t' << p.treebanks << '\t' << format_double(p.delta0_mean)
        << '\t' << format_double(p.delta0_stddev) << '\t'
        << format_double(p.delta2_mean) << '\t'
        << format_double(p.delta2_stddev) << '\t' << third << '\n';
  }
}

}  // namespace depcross

#endif  // DEPCROSS_REPORT_HPP
