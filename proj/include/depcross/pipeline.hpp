#ifndef DEPCROSS_PIPELINE_HPP
#define DEPCROSS_PIPELINE_HPP

// End-to-end per-corpus analysis: read sentence blocks, parse, preprocess,
// measure, predict. One thread handles everything by default; with more,
// a bounded queue feeds a worker pool and results are merged back into
// input order, so the output bytes never depend on the thread count.

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <exception>
#include <fstream>
#include <iterator>
#include <istream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "depcross/conll.hpp"
#include "depcross/predictor.hpp"
#include "depcross/preprocess.hpp"
#include "depcross/report.hpp"
#include "depcross/tree_metrics.hpp"

namespace depcross {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

  void push(T item) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock,
                   [&] { return items_.size() < capacity_ || closed_; });
    if (closed_) throw std::logic_error("push after close");
    items_.push_back(std::move(item));
    not_empty_.notify_one();
  }

  // False once the queue is closed and drained.
  bool pop(T& out) {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return false;
    out = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return true;
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable not_full_, not_empty_;
  std::deque<T> items_;
  std::size_t capacity_;
  bool closed_ = false;
};

struct AnalyzeResult {
  std::string treebank;
  long long raw_count = 0;
  ExclusionTally tally;
  std::vector<SentenceMetricsRow> rows;    // input order
  std::vector<SentenceError> errors;       // input order
};

inline SentenceMetricsRow compute_sentence_row(
    long long ordinal, const DependencyTree& tree,
    const CrossingProbabilityTable& table) {
  const StructuralMetrics m = structural_metrics(tree);
  const PredictionResult p = predict(tree, m, table);
  SentenceMetricsRow row;
  row.sentence = ordinal;
  row.n = m.n;
  row.c_true = m.c_true;
  row.q = m.q_size;
  row.d = m.d_total;
  row.k2 = m.k2;
  row.h = m.hub;
  row.e0 = p.e0;
  row.e2 = p.e2;
  row.delta0 = p.delta0;
  row.delta2 = p.delta2;
  return row;
}

namespace detail {

struct BlockOutcome {
  long long ordinal = 0;
  InclusionDecision decision = InclusionDecision::ExcludedMalformed;
  std::optional<SentenceMetricsRow> row;
  std::optional<SentenceError> error;
};

inline BlockOutcome process_block(const RawBlock& block,
                                  const IngestConfig& cfg,
                                  ProbabilityCache& cache) {
  BlockOutcome out;
  out.ordinal = block.ordinal;
  auto parsed = parse_block(block, cfg);
  if (auto* err = std::get_if<SentenceError>(&parsed)) {
    out.decision = InclusionDecision::ExcludedMalformed;
    out.error = std::move(*err);
    return out;
  }
  const auto& sent = std::get<RawSentence>(parsed);
  PreprocessOutcome pre = preprocess_sentence(sent, cfg);
  out.decision = pre.decision;
  if (pre.decision == InclusionDecision::Included) {
    const auto table = cache.table_for(pre.tree->size());
    out.row = compute_sentence_row(block.ordinal, *pre.tree, *table);
  } else if (pre.decision == InclusionDecision::ExcludedMalformed) {
    out.error = SentenceError{block.ordinal, sent.first_line, pre.error};
  }
  return out;
}

inline void merge_outcomes(AnalyzeResult& result,
                           std::vector<BlockOutcome> outcomes) {
  std::sort(outcomes.begin(), outcomes.end(),
            [](const BlockOutcome& x, const BlockOutcome& y) {
              return x.ordinal < y.ordinal;
            });
  for (auto& o : outcomes) {
    result.tally.add(o.decision);
    if (o.row) result.rows.push_back(*o.row);
    if (o.error) result.errors.push_back(std::move(*o.error));
  }
}

}  // namespace detail

// threads <= 1 runs inline; more spawns that many workers. Output is
// byte-identical either way.
inline AnalyzeResult analyze_stream(std::istream& in, std::string treebank,
                                    const IngestConfig& cfg,
                                    ProbabilityCache& cache, int threads = 1) {
  AnalyzeResult result;
  result.treebank = std::move(treebank);
  long line_no = 0;
  long long ordinal = 0;
  std::vector<detail::BlockOutcome> outcomes;
  if (threads <= 1) {
    while (auto block = read_block(in, line_no, ordinal))
      outcomes.push_back(detail::process_block(*block, cfg, cache));
  } else {
    BoundedQueue<RawBlock> queue(std::size_t(threads) * 8);
    std::mutex out_mu;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        std::vector<detail::BlockOutcome> local;
        RawBlock block;
        bool failed = false;
        while (queue.pop(block)) {
          if (failed) continue;  // drain so the producer never blocks
          try {
            local.push_back(detail::process_block(block, cfg, cache));
          } catch (...) {
            failed = true;
            std::lock_guard lock(out_mu);
            if (!failure) failure = std::current_exception();
          }
        }
        std::lock_guard lock(out_mu);
        outcomes.insert(outcomes.end(),
                        std::make_move_iterator(local.begin()),
                        std::make_move_iterator(local.end()));
      });
    }
    while (auto block = read_block(in, line_no, ordinal))
      queue.push(std::move(*block));
    queue.close();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  result.raw_count = ordinal;
  detail::merge_outcomes(result, std::move(outcomes));
  return result;
}

inline AnalyzeResult analyze_file(const std::string& path,
                                  std::string treebank,
                                  const IngestConfig& cfg,
                                  ProbabilityCache& cache, int threads = 1) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path);
  return analyze_stream(in, std::move(treebank), cfg, cache, threads);
}

}  // namespace depcross

#endif  // DEPCROSS_PIPELINE_HPP
