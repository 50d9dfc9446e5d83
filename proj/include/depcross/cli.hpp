#ifndef DEPCROSS_CLI_HPP
#define DEPCROSS_CLI_HPP

// Command line front end. Subcommands:
//   analyze   - measure corpora and write per-sentence / summary TSVs
//   prob-map  - dump the crossing probability table for one length
//   simulate  - random-ensemble estimates or synthetic corpus generation
//   report    - cross-treebank aggregation of analyze outputs
// Exit codes: 0 ok, 2 usage error, 3 I/O failure, 4 nothing left after
// filtering. Per-sentence problems are tallied and reported, never fatal.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "depcross/conll.hpp"
#include "depcross/ensembles.hpp"
#include "depcross/pipeline.hpp"
#include "depcross/predictor.hpp"
#include "depcross/report.hpp"
#include "depcross/version.hpp"

namespace depcross::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitEmpty = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when filtering leaves nothing to aggregate.
struct EmptyCorpus : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

inline void require_readable(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) ||
      std::filesystem::is_directory(path, ec))
    throw UsageError("input file not found: " + path);
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path.string());
  return out;
}

inline void finish_output(std::ofstream& out,
                          const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

inline StddevMode stddev_from(const std::string& s) {
  return s == "sample" ? StddevMode::Sample : StddevMode::Population;
}

inline void print_sentence_errors(const std::string& file,
                                  const std::vector<SentenceError>& errors) {
  for (const auto& e : errors) {
    std::cerr << file << ':' << e.line << ": " << e.message << " (sentence "
              << e.ordinal << " discarded)\n";
  }
}

struct AnalyzeArgs {
  std::vector<std::string> inputs;
  std::string format = "conllx";
  std::string config_path;
  std::string out_dir;
  bool group_by_length = false;
  int min_group_size = 1;
  std::string stddev = "population";
  int threads = 1;
};

inline int run_analyze(const AnalyzeArgs& args) {
  namespace fs = std::filesystem;
  IngestConfig cfg;
  if (!args.config_path.empty()) {
    require_readable(args.config_path);
    try {
      cfg = load_ingest_config(args.config_path);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  cfg.format = args.format == "conllu-basic" ? ConllFormat::ConllUBasic
                                             : ConllFormat::ConllX;
  AnalysisOptions opt;
  opt.min_group_size = args.min_group_size;
  opt.stddev = stddev_from(args.stddev);
  const std::string fingerprint = hex64(config_fingerprint(&cfg, opt));

  std::set<std::string> seen;
  for (const auto& input : args.inputs) {
    require_readable(input);
    if (!seen.insert(stem_of(input)).second)
      throw UsageError("duplicate treebank id '" + stem_of(input) +
                       "'; rename one input");
  }

  struct Run {
    std::string stem;
    AnalyzeResult result;
  };
  std::vector<Run> runs;
  runs.reserve(args.inputs.size());
  ProbabilityCache cache;
  long long total_included = 0;
  const int threads =
      args.threads == 0
          ? std::max(1, int(std::thread::hardware_concurrency()))
          : args.threads;
  for (const auto& input : args.inputs) {
    Run run;
    run.stem = stem_of(input);
    run.result = analyze_file(input, run.stem, cfg, cache, threads);
    print_sentence_errors(input, run.result.errors);
    const auto& tally = run.result.tally;
    std::cerr << input << ": " << run.result.raw_count << " sentences, "
              << tally.included << " included, " << tally.malformed
              << " malformed, " << tally.not_tree << " non-tree, "
              << tally.star_tree << " star\n";
    total_included += tally.included;
    runs.push_back(std::move(run));
  }
  if (total_included == 0) throw EmptyCorpus("no filtered sentences");

  fs::path out_dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + args.out_dir);

  std::vector<TreebankSummaryRow> summary;
  struct LengthEntry {
    std::string stem;
    double c_avg;  // summary sort key, reused for the by-length table
    std::vector<LengthGroupRow> groups;
    ByLengthSummary overall;
  };
  std::vector<LengthEntry> lengths;
  for (const auto& run : runs) {
    const auto path = out_dir / (run.stem + ".sentences.tsv");
    auto out = open_output(path);
    OutputHeader header{fingerprint, std::nullopt, run.stem, std::nullopt};
    write_sentences_tsv(out, header, run.result.rows);
    finish_output(out, path);
    if (run.result.tally.included == 0) {
      std::cerr << run.stem << ": no filtered sentences, skipped in summary\n";
      continue;
    }
    TreebankCounts counts{run.result.raw_count, run.result.tally.malformed,
                          run.result.tally.not_tree,
                          run.result.tally.star_tree};
    summary.push_back(
        summarize_treebank(run.stem, run.result.rows, counts, opt.stddev));
    if (args.group_by_length) {
      try {
        LengthEntry entry;
        entry.stem = run.stem;
        entry.c_avg = summary.back().c_true_avg;
        entry.overall =
            summarize_by_length(run.result.rows, opt.min_group_size,
                                opt.stddev);
        entry.groups = entry.overall.groups;
        lengths.push_back(std::move(entry));
      } catch (const std::invalid_argument& e) {
        std::cerr << run.stem << ": " << e.what()
                  << ", skipped in by-length tables\n";
      }
    }
  }
  sort_summary(summary);
  {
    const auto path = out_dir / "summary.tsv";
    auto out = open_output(path);
    OutputHeader header{fingerprint, to_string(opt.stddev), std::nullopt,
                        std::nullopt};
    write_summary_tsv(out, header, summary);
    finish_output(out, path);
  }
  if (args.group_by_length) {
    std::sort(lengths.begin(), lengths.end(),
              [](const LengthEntry& x, const LengthEntry& y) {
                if (x.c_avg != y.c_avg) return x.c_avg > y.c_avg;
                return x.stem < y.stem;
              });
    std::vector<ByLengthOverallRow> overall;
    for (const auto& entry : lengths) {
      const auto path = out_dir / (entry.stem + ".bylength.tsv");
      auto out = open_output(path);
      OutputHeader header{fingerprint, std::nullopt, entry.stem,
                          std::nullopt};
      write_length_groups_tsv(out, header, entry.groups);
      finish_output(out, path);
      ByLengthOverallRow row;
      row.treebank = entry.stem;
      row.lengths = static_cast<long long>(entry.groups.size());
      row.delta0_avg = entry.overall.delta0_avg;
      row.delta2_avg = entry.overall.delta2_avg;
      row.delta2_median = entry.overall.delta2_median;
      row.delta2_stddev = entry.overall.delta2_stddev;
      overall.push_back(std::move(row));
    }
    const auto path = out_dir / "bylength.tsv";
    auto out = open_output(path);
    OutputHeader header{fingerprint, to_string(opt.stddev), std::nullopt,
                        std::nullopt};
    write_bylength_tsv(out, header, overall);
    finish_output(out, path);
  }
  return kExitOk;
}

struct ProbMapArgs {
  int n = 0;
  std::string out_path;
};

inline int run_prob_map(const ProbMapArgs& args) {
  if (args.n < 2) throw UsageError("--n must be at least 2");
  if (args.out_path.empty()) {
    write_probability_map(std::cout, args.n);
    std::cout.flush();
    if (!std::cout) throw IoError("write to stdout failed");
    return kExitOk;
  }
  const std::filesystem::path path(args.out_path);
  auto out = open_output(path);
  write_probability_map(out, args.n);
  finish_output(out, path);
  return kExitOk;
}

struct SimulateArgs {
  std::string mode = "ensemble";
  std::uint64_t seed = 1;
  long long samples = 10000;
  int n = 10;
  int trees = 5;
  long long sentences = 100;
  int swaps = 2;
  int min_n = 0;  // 0 = use n
  int max_n = 0;
  std::string out_path;
};

inline std::string simulate_fingerprint(const SimulateArgs& a) {
  std::string s = "mode=" + a.mode;
  s += "\nmax_n=" + format_int(a.max_n);
  s += "\nmin_n=" + format_int(a.min_n);
  s += "\nn=" + format_int(a.n);
  s += "\nsamples=" + format_int(a.samples);
  s += "\nsentences=" + format_int(a.sentences);
  s += "\nswaps=" + format_int(a.swaps);
  s += "\ntrees=" + format_int(a.trees);
  return hex64(fnv1a64(s));
}

inline void write_ensemble_tsv(std::ostream& out, const SimulateArgs& args) {
  OutputHeader header{simulate_fingerprint(args), std::nullopt, std::nullopt,
                      args.seed};
  write_header(out, header);
  out << "tree\tn\tq\te0\tc_mc_mean\tc_mc_se\te2_mc_mean\te2_mc_se\n";
  RandomSource root(args.seed);
  CrossingProbabilityTable table(args.n);
  for (int t = 1; t <= args.trees; ++t) {
    RandomSource tree_rng = root.stream(std::uint64_t(2 * t));
    RandomSource mc_rng = root.stream(std::uint64_t(2 * t + 1));
    const DependencyTree tree = uniform_random_tree(args.n, tree_rng);
    const long long q = potential_crossings(tree);
    const MonteCarloEstimate c_mc =
        estimate_null_crossings(tree, args.samples, mc_rng);
    const MonteCarloEstimate e2_mc =
        estimate_e2_mean_over_arrangements(tree, args.samples, mc_rng, table);
    out << t << '\t' << args.n << '\t' << q << '\t'
        << format_double(expected_crossings_null(q)) << '\t'
        << format_double(c_mc.mean) << '\t' << format_double(c_mc.std_error)
        << '\t' << format_double(e2_mc.mean) << '\t'
        << format_double(e2_mc.std_error) << '\n';
  }
}

inline int run_simulate(const SimulateArgs& args) {
  if (args.mode != "ensemble" && args.mode != "corpus")
    throw UsageError("--mode must be ensemble or corpus");
  const auto to_sink = [&](auto&& writer) {
    if (args.out_path.empty()) {
      writer(std::cout);
      std::cout.flush();
      if (!std::cout) throw IoError("write to stdout failed");
    } else {
      const std::filesystem::path path(args.out_path);
      auto out = open_output(path);
      writer(out);
      finish_output(out, path);
    }
  };
  if (args.mode == "ensemble") {
    if (args.n < 2) throw UsageError("--n must be at least 2");
    if (args.trees < 1) throw UsageError("--trees must be at least 1");
    if (args.samples < 2) throw UsageError("--samples must be at least 2");
    to_sink([&](std::ostream& out) { write_ensemble_tsv(out, args); });
    return kExitOk;
  }
  SyntheticCorpusOptions opt;
  opt.sentences = args.sentences;
  opt.n_min = args.min_n > 0 ? args.min_n : args.n;
  opt.n_max = args.max_n > 0 ? args.max_n : opt.n_min;
  opt.swaps = args.swaps;
  if (opt.n_min < 2 || opt.n_max < opt.n_min)
    throw UsageError("need 2 <= --min-n <= --max-n");
  if (args.sentences < 1) throw UsageError("--sentences must be at least 1");
  RandomSource rng(args.seed);
  to_sink([&](std::ostream& out) { write_synthetic_corpus(out, opt, rng); });
  return kExitOk;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string out_dir;
  int min_group_size = 1;
  std::string stddev = "population";
};

inline int run_report(const ReportArgs& args) {
  namespace fs = std::filesystem;
  AnalysisOptions opt;
  opt.min_group_size = args.min_group_size;
  opt.stddev = stddev_from(args.stddev);
  const std::string fingerprint = hex64(config_fingerprint(nullptr, opt));

  struct Entry {
    std::string treebank;
    double c_avg = 0.0;
    std::vector<LengthGroupRow> groups;
    ByLengthSummary overall;
  };
  std::vector<Entry> entries;
  std::set<std::string> seen;
  for (const auto& input : args.inputs) {
    require_readable(input);
    std::ifstream in(input, std::ios::binary);
    if (!in) throw IoError("cannot open input file: " + input);
    SentencesFile file;
    try {
      file = read_sentences_tsv(in);
    } catch (const std::runtime_error& e) {
      throw UsageError(input + ": " + e.what());
    }
    const std::string id =
        file.treebank.empty() ? stem_of(input) : file.treebank;
    if (!seen.insert(id).second)
      throw UsageError("duplicate treebank id '" + id + "'");
    if (file.rows.empty()) {
      std::cerr << input << ": no sentences, skipped\n";
      continue;
    }
    Entry entry;
    entry.treebank = id;
    std::vector<double> c;
    c.reserve(file.rows.size());
    for (const auto& r : file.rows) c.push_back(double(r.c_true));
    entry.c_avg = mean_of(c);
    try {
      entry.overall =
          summarize_by_length(file.rows, opt.min_group_size, opt.stddev);
    } catch (const std::invalid_argument& e) {
      std::cerr << input << ": " << e.what() << ", skipped\n";
      continue;
    }
    entry.groups = entry.overall.groups;
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw EmptyCorpus("no filtered sentences");
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.c_avg != y.c_avg) return x.c_avg > y.c_avg;
    return x.treebank < y.treebank;
  });

  fs::path out_dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + args.out_dir);

  std::vector<ByLengthOverallRow> overall;
  std::vector<std::vector<LengthGroupRow>> per_treebank;
  for (const auto& e : entries) {
    ByLengthOverallRow row;
    row.treebank = e.treebank;
    row.lengths = static_cast<long long>(e.groups.size());
    row.delta0_avg = e.overall.delta0_avg;
    row.delta2_avg = e.overall.delta2_avg;
    row.delta2_median = e.overall.delta2_median;
    row.delta2_stddev = e.overall.delta2_stddev;
    overall.push_back(std::move(row));
    per_treebank.push_back(e.groups);
  }
  {
    const auto path = out_dir / "bylength.tsv";
    auto out = open_output(path);
    OutputHeader header{fingerprint, to_string(opt.stddev), std::nullopt,
                        std::nullopt};
    write_bylength_tsv(out, header, overall);
    finish_output(out, path);
  }
  {
    const auto path = out_dir / "curves.tsv";
    auto out = open_output(path);
    OutputHeader header{fingerprint, to_string(opt.stddev), std::nullopt,
                        std::nullopt};
    const auto points = curve_across_treebanks(per_treebank, opt.stddev);
    write_curves_tsv(out, header, points);
    finish_output(out, path);
  }
  return kExitOk;
}

}  // namespace detail

// Runs the tool on the given arguments (without the program name).
// Never exits the process; returns the exit code.
inline int run(std::vector<std::string> args) {
  CLI::App app{"dependency crossing statistics and length-based predictors"};
  app.set_version_flag("--version",
                       std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  detail::AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand(
      "analyze", "measure corpora and write per-sentence and summary TSVs");
  analyze->add_option("inputs", analyze_args.inputs, "CoNLL input files")
      ->required();
  analyze->add_option("--format", analyze_args.format, "input format")
      ->check(CLI::IsMember({"conllx", "conllu-basic"}))
      ->capture_default_str();
  analyze->add_option("--config", analyze_args.config_path,
                      "token classification config file");
  analyze->add_option("--out", analyze_args.out_dir, "output directory")
      ->required();
  analyze->add_flag("--group-by-length", analyze_args.group_by_length,
                    "also write by-length tables");
  analyze
      ->add_option("--min-group-size", analyze_args.min_group_size,
                   "smallest length group kept in by-length tables")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  analyze
      ->add_option("--stats-stddev", analyze_args.stddev,
                   "standard deviation convention")
      ->check(CLI::IsMember({"population", "sample"}))
      ->capture_default_str();
  analyze
      ->add_option("--threads", analyze_args.threads,
                   "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  detail::ProbMapArgs probmap_args;
  auto* probmap = app.add_subcommand(
      "prob-map", "dump the crossing probability table for one length");
  probmap->add_option("--n", probmap_args.n, "sentence length")->required();
  probmap->add_option("--out", probmap_args.out_path,
                      "output file (default stdout)");

  detail::SimulateArgs sim_args;
  auto* simulate = app.add_subcommand(
      "simulate", "random-ensemble estimates or synthetic corpora");
  simulate
      ->add_option("--mode", sim_args.mode, "ensemble or corpus")
      ->check(CLI::IsMember({"ensemble", "corpus"}))
      ->capture_default_str();
  simulate->add_option("--seed", sim_args.seed, "random seed")
      ->capture_default_str();
  simulate
      ->add_option("--samples", sim_args.samples,
                   "Monte Carlo samples per tree")
      ->capture_default_str();
  simulate->add_option("--n", sim_args.n, "sentence length")
      ->capture_default_str();
  simulate->add_option("--trees", sim_args.trees, "trees per ensemble")
      ->capture_default_str();
  simulate
      ->add_option("--sentences", sim_args.sentences,
                   "sentences in a synthetic corpus")
      ->capture_default_str();
  simulate
      ->add_option("--swaps", sim_args.swaps,
                   "adjacent swaps applied after planarization")
      ->capture_default_str();
  simulate->add_option("--min-n", sim_args.min_n,
                       "smallest sentence length (corpus mode)");
  simulate->add_option("--max-n", sim_args.max_n,
                       "largest sentence length (corpus mode)");
  simulate->add_option("--out", sim_args.out_path,
                       "output file (default stdout)");

  detail::ReportArgs report_args;
  auto* report = app.add_subcommand(
      "report", "aggregate sentences TSVs across treebanks");
  report->add_option("inputs", report_args.inputs, "sentences TSV files")
      ->required();
  report->add_option("--out", report_args.out_dir, "output directory")
      ->required();
  report
      ->add_option("--min-group-size", report_args.min_group_size,
                   "smallest length group kept")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  report
      ->add_option("--stats-stddev", report_args.stddev,
                   "standard deviation convention")
      ->check(CLI::IsMember({"population", "sample"}))
      ->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) return detail::run_analyze(analyze_args);
    if (probmap->parsed()) return detail::run_prob_map(probmap_args);
    if (simulate->parsed()) return detail::run_simulate(sim_args);
    if (report->parsed()) return detail::run_report(report_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EmptyCorpus& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

inline int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(std::size_t(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args));
}

}  // namespace depcross::cli

#endif  // DEPCROSS_CLI_HPP
