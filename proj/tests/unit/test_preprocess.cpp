#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "depcross/preprocess.hpp"
#include "support/enumeration.hpp"

using namespace depcross;

namespace {

struct Tok {
  std::string form;
  int head;
  std::string cpostag = "X";
};

RawSentence make_sent(const std::vector<Tok>& toks) {
  RawSentence s;
  s.ordinal = 1;
  s.first_line = 1;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    RawToken t;
    t.index = int(i) + 1;
    t.form = toks[i].form;
    t.cpostag = toks[i].cpostag;
    t.postag = toks[i].cpostag;
    t.head = toks[i].head;
    t.deprel = "dep";
    s.tokens.push_back(std::move(t));
  }
  return s;
}

std::vector<TokenClass> classes_of(const RawSentence& s,
                                   const IngestConfig& cfg = IngestConfig{}) {
  std::vector<TokenClass> out;
  for (const auto& t : s.tokens) out.push_back(classify_token(t, cfg));
  return out;
}

}  // namespace

TEST_CASE("pruning re-heads survivors to the nearest surviving ancestor") {
  // 4 is headed by the comma; the comma's own head is 2.
  const RawSentence s = make_sent(
      {{"a", 2}, {"b", 0}, {",", 2, "PUNCT"}, {"c", 3}});
  const auto pruned = prune_non_words(s, classes_of(s));
  REQUIRE(pruned.ok);
  CHECK(pruned.candidate.heads == std::vector<int>{2, 0, 2});
}

TEST_CASE("pruning walks chains of removed tokens") {
  const RawSentence s =
      make_sent({{"a", 0}, {",", 1, "PUNCT"}, {";", 2, "PUNCT"}, {"b", 3}});
  const auto pruned = prune_non_words(s, classes_of(s));
  REQUIRE(pruned.ok);
  CHECK(pruned.candidate.heads == std::vector<int>{0, 1});
}

TEST_CASE("a survivor whose ancestors all vanish attaches to the root") {
  const RawSentence s = make_sent({{"NULL", 0}, {"a", 1}, {"b", 2}});
  const auto pruned = prune_non_words(s, classes_of(s));
  REQUIRE(pruned.ok);
  CHECK(pruned.candidate.heads == std::vector<int>{0, 1});
}

TEST_CASE("a head cycle through removed tokens is malformed") {
  const RawSentence s = make_sent({{",", 2, "PUNCT"}, {";", 1, "PUNCT"}, {"a", 1}});
  const auto pruned = prune_non_words(s, classes_of(s));
  REQUIRE_FALSE(pruned.ok);
  CHECK(pruned.error.find("cycle") != std::string::npos);

  const auto outcome = preprocess_sentence(s, IngestConfig{});
  CHECK(outcome.decision == InclusionDecision::ExcludedMalformed);
  CHECK_FALSE(outcome.tree.has_value());
  CHECK_FALSE(outcome.error.empty());
}

TEST_CASE("pruning everything leaves an empty candidate") {
  const RawSentence s = make_sent({{".", 0, "PUNCT"}, {",", 1, "PUNCT"}});
  const auto pruned = prune_non_words(s, classes_of(s));
  REQUIRE(pruned.ok);
  CHECK(pruned.candidate.heads.empty());
  CHECK(filter_candidate(pruned.candidate) ==
        InclusionDecision::ExcludedNotTree);
}

TEST_CASE("structural filter rejects non-trees") {
  using D = InclusionDecision;
  CHECK(filter_candidate(TreeCandidate{{}}) == D::ExcludedNotTree);
  CHECK(filter_candidate(TreeCandidate{{0, 0}}) == D::ExcludedNotTree);
  CHECK(filter_candidate(TreeCandidate{{2, 1}}) == D::ExcludedNotTree);
  CHECK(filter_candidate(TreeCandidate{{0, 9}}) == D::ExcludedNotTree);
  CHECK(filter_candidate(TreeCandidate{{0, -1}}) == D::ExcludedNotTree);
  CHECK(filter_candidate(TreeCandidate{{0, 2}}) == D::ExcludedNotTree);
  // rooted component plus a 3-cycle
  CHECK(filter_candidate(TreeCandidate{{0, 3, 4, 2}}) == D::ExcludedNotTree);
}

TEST_CASE("structural filter rejects hubs and tiny sentences") {
  using D = InclusionDecision;
  CHECK(filter_candidate(TreeCandidate{{0}}) == D::ExcludedStarTree);
  CHECK(filter_candidate(TreeCandidate{{0, 1}}) == D::ExcludedStarTree);
  CHECK(filter_candidate(TreeCandidate{{0, 1, 2}}) == D::ExcludedStarTree);
  CHECK(filter_candidate(TreeCandidate{{0, 1, 1, 1, 1}}) ==
        D::ExcludedStarTree);
  // hub that is not the root
  CHECK(filter_candidate(TreeCandidate{{2, 0, 2, 2}}) == D::ExcludedStarTree);
  CHECK(filter_candidate(TreeCandidate{{0, 1, 2, 3}}) == D::Included);
}

TEST_CASE("filter matches the degree rule on every small tree") {
  for (int n = 4; n <= 7; ++n) {
    long long included = 0, stars = 0;
    testing::for_each_labeled_tree(n, [&](const DependencyTree& t) {
      const auto degs = t.degrees();
      const bool hub = *std::max_element(degs.begin(), degs.end()) == n - 1;
      const TreeCandidate cand{t.heads()};
      const auto d = filter_candidate(cand);
      CHECK(d == (hub ? InclusionDecision::ExcludedStarTree
                      : InclusionDecision::Included));
      (d == InclusionDecision::Included ? included : stars) += 1;
    });
    CHECK(included + stars == (long long)std::pow(n, n - 2));
    CHECK(stars == n);  // one star per choice of hub
  }
}

TEST_CASE("full preprocessing yields a tree for included sentences") {
  const RawSentence s = make_sent({{"The", 2},
                                   {"dogs", 3},
                                   {"bark", 0},
                                   {"loudly", 3},
                                   {"!", 3, "PUNCT"}});
  const auto outcome = preprocess_sentence(s, IngestConfig{});
  REQUIRE(outcome.decision == InclusionDecision::Included);
  REQUIRE(outcome.tree.has_value());
  CHECK(outcome.tree->size() == 4);
  CHECK(outcome.tree->heads() == std::vector<int>{2, 3, 0, 3});
}

TEST_CASE("null-element classification outranks punctuation") {
  IngestConfig cfg;
  cfg.null_cpostags = {"EMPTY"};
  const RawSentence s = make_sent(
      {{"...", 0, "EMPTY"}, {"a", 1}, {"b", 2}, {"c", 3}, {"d", 4}});
  // token 1 is a null element (tag rule beats the punctuation form rule)
  const auto outcome = preprocess_sentence(s, cfg);
  REQUIRE(outcome.decision == InclusionDecision::Included);
  CHECK(outcome.tree->heads() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("exclusion tally buckets and merges") {
  ExclusionTally t;
  t.add(InclusionDecision::Included);
  t.add(InclusionDecision::Included);
  t.add(InclusionDecision::ExcludedMalformed);
  t.add(InclusionDecision::ExcludedNotTree);
  t.add(InclusionDecision::ExcludedStarTree);
  CHECK(t.included == 2);
  CHECK(t.malformed == 1);
  CHECK(t.not_tree == 1);
  CHECK(t.star_tree == 1);
  CHECK(t.raw() == 5);
  ExclusionTally u;
  u.add(InclusionDecision::ExcludedStarTree);
  u += t;
  CHECK(u.star_tree == 2);
  CHECK(u.raw() == 6);
}

TEST_CASE("decision names are stable") {
  CHECK(std::string(to_string(InclusionDecision::Included)) == "included");
  CHECK(std::string(to_string(InclusionDecision::ExcludedMalformed)) ==
        "excluded-malformed");
  CHECK(std::string(to_string(InclusionDecision::ExcludedNotTree)) ==
        "excluded-not-tree");
  CHECK(std::string(to_string(InclusionDecision::ExcludedStarTree)) ==
        "excluded-star-tree");
}
