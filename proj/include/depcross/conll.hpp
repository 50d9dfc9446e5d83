#ifndef DEPCROSS_CONLL_HPP
#define DEPCROSS_CONLL_HPP

// CoNLL ingestion: tab-separated token records grouped into sentences by
// blank lines, with '#' comment lines skipped. The classic 10-column layout
// is the default; a basic CoNLL-U mode additionally skips multiword range
// lines (id "i-j") and empty-node lines (id "i.j"). Malformed input is
// reported per sentence and never aborts a run.

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "depcross/text.hpp"

namespace depcross {

enum class ConllFormat { ConllX, ConllUBasic };

enum class TokenClass { Word, Punctuation, NullElement };

struct RawToken {
  int index = 0;  // 1-based position within the sentence
  std::string form;
  std::string lemma;
  std::string cpostag;
  std::string postag;
  std::string feats;
  int head = 0;  // 0 = artificial root
  std::string deprel;

  friend bool operator==(const RawToken&, const RawToken&) = default;
};

struct RawSentence {
  long long ordinal = 0;  // 1-based sentence number within the stream
  long first_line = 0;    // line number of the first token line
  std::vector<RawToken> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
};

// A recoverable per-sentence failure; the run continues and the sentence
// counts as discarded.
struct SentenceError {
  long long ordinal = 0;
  long line = 0;  // offending line number (1-based)
  std::string message;
};

// Token classification rules. An empty list disables the corresponding rule.
struct IngestConfig {
  ConllFormat format = ConllFormat::ConllX;
  bool punct_unicode_forms = true;  // forms made of punctuation code points
  std::vector<std::string> punct_cpostags{"PUNCT"};
  std::vector<std::string> punct_postags{"PUNCT"};
  std::vector<std::string> punct_deprels;
  std::vector<std::string> punct_forms;
  std::vector<std::string> null_forms{"NULL"};  // matched case-insensitively
  std::vector<std::string> null_cpostags;
  std::vector<std::string> null_postags;

  // Canonical key=value serialization; the basis of the config hash and of
  // equality between runs. Keys are emitted in a fixed order.
  std::string canonical() const {
    const auto join = [](const std::vector<std::string>& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += v[i];
      }
      return out;
    };
    std::string s;
    s += "format=";
    s += (format == ConllFormat::ConllX ? "conllx" : "conllu-basic");
    s += "\nnull.cpostags=" + join(null_cpostags);
    s += "\nnull.forms=" + join(null_forms);
    s += "\nnull.postags=" + join(null_postags);
    s += "\npunct.cpostags=" + join(punct_cpostags);
    s += "\npunct.deprels=" + join(punct_deprels);
    s += "\npunct.forms=" + join(punct_forms);
    s += "\npunct.postags=" + join(punct_postags);
    s += "\npunct.unicode_forms=";
    s += (punct_unicode_forms ? '1' : '0');
    return s;
  }
};

// Classification order: null-element rules run before punctuation rules, so
// a token matching both is a null element.
inline TokenClass classify_token(const RawToken& tok, const IngestConfig& cfg) {
  for (const auto& f : cfg.null_forms) {
    if (iequals_ascii(tok.form, f)) return TokenClass::NullElement;
  }
  for (const auto& t : cfg.null_cpostags) {
    if (tok.cpostag == t) return TokenClass::NullElement;
  }
  for (const auto& t : cfg.null_postags) {
    if (tok.postag == t) return TokenClass::NullElement;
  }
  if (cfg.punct_unicode_forms && form_is_punctuation(tok.form))
    return TokenClass::Punctuation;
  for (const auto& t : cfg.punct_cpostags) {
    if (tok.cpostag == t) return TokenClass::Punctuation;
  }
  for (const auto& t : cfg.punct_postags) {
    if (tok.postag == t) return TokenClass::Punctuation;
  }
  for (const auto& d : cfg.punct_deprels) {
    if (tok.deprel == d) return TokenClass::Punctuation;
  }
  for (const auto& f : cfg.punct_forms) {
    if (tok.form == f) return TokenClass::Punctuation;
  }
  return TokenClass::Word;
}

// Raised for unusable configuration files (unknown keys, bad values).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> parse_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    const std::string_view item = trim(value.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

inline bool parse_bool(std::string_view value, bool& out) {
  const std::string v = ascii_lower(trim(value));
  if (v == "true" || v == "1" || v == "yes") {
    out = true;
    return true;
  }
  if (v == "false" || v == "0" || v == "no") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace detail

// Key = value lines; '#' starts a comment; blank lines ignored.
// Unknown keys and unparseable values raise ConfigError.
inline IngestConfig parse_ingest_config(std::string_view text) {
  IngestConfig cfg;
  long line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value");
    }
    const std::string key = ascii_lower(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "format") {
      const std::string v = ascii_lower(value);
      if (v == "conllx")
        cfg.format = ConllFormat::ConllX;
      else if (v == "conllu-basic")
        cfg.format = ConllFormat::ConllUBasic;
      else
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unknown format '" + std::string(value) + "'");
    } else if (key == "punct.unicode_forms") {
      if (!detail::parse_bool(value, cfg.punct_unicode_forms))
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": expected boolean");
    } else if (key == "punct.cpostags") {
      cfg.punct_cpostags = detail::parse_list(value);
    } else if (key == "punct.postags") {
      cfg.punct_postags = detail::parse_list(value);
    } else if (key == "punct.deprels") {
      cfg.punct_deprels = detail::parse_list(value);
    } else if (key == "punct.forms") {
      cfg.punct_forms = detail::parse_list(value);
    } else if (key == "null.forms") {
      cfg.null_forms = detail::parse_list(value);
    } else if (key == "null.cpostags") {
      cfg.null_cpostags = detail::parse_list(value);
    } else if (key == "null.postags") {
      cfg.null_postags = detail::parse_list(value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

inline IngestConfig load_ingest_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ingest_config(ss.str());
}

// One sentence's worth of raw lines: everything between blank lines, with
// comment lines already dropped. The unit of work of the parallel pipeline.
struct RawBlock {
  long long ordinal = 0;
  std::vector<std::pair<long, std::string>> lines;  // (line number, text)
};

namespace detail {

inline bool is_blank(std::string_view line) { return trim(line).empty(); }

inline bool is_comment(std::string_view line) {
  return !line.empty() && line[0] == '#';
}

}  // namespace detail

// Reads the next sentence block from the stream. line_no must carry the
// number of lines consumed so far and is updated. Returns nothing at EOF.
inline std::optional<RawBlock> read_block(std::istream& in, long& line_no,
                                          long long& next_ordinal) {
  RawBlock block;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::is_blank(line)) {
      if (!block.lines.empty()) break;
      continue;  // stray blank lines between sentences
    }
    if (detail::is_comment(line)) continue;
    block.lines.emplace_back(line_no, std::move(line));
  }
  if (block.lines.empty()) return std::nullopt;
  block.ordinal = ++next_ordinal;
  return block;
}

// Parses one block into a sentence, validating UTF-8, column count, index
// consecutiveness and head range. "_" means an empty field everywhere except
// FORM, which is kept verbatim.
inline std::variant<RawSentence, SentenceError> parse_block(
    const RawBlock& block, const IngestConfig& cfg) {
  const auto fail = [&](long line, std::string msg) {
    return SentenceError{block.ordinal, line, std::move(msg)};
  };
  RawSentence sent;
  sent.ordinal = block.ordinal;
  sent.first_line = block.lines.front().first;
  sent.tokens.reserve(block.lines.size());
  const auto field = [](std::string_view f) {
    return f == "_" ? std::string() : std::string(f);
  };
  for (const auto& [line_no, text] : block.lines) {
    if (!utf8_valid(text)) return fail(line_no, "invalid UTF-8");
    const auto cols = split_tabs(text);
    if (cols.size() < 8) {
      return fail(line_no, "expected at least 8 tab-separated columns, got " +
                               std::to_string(cols.size()));
    }
    if (cfg.format == ConllFormat::ConllUBasic &&
        (cols[0].find('-') != std::string_view::npos ||
         cols[0].find('.') != std::string_view::npos)) {
      continue;  // multiword ranges and empty nodes carry no tree structure
    }
    RawToken tok;
    if (!parse_int_field(cols[0], tok.index) || tok.index <= 0)
      return fail(line_no, "bad token index '" + std::string(cols[0]) + "'");
    if (tok.index != sent.size() + 1)
      return fail(line_no, "token index " + std::to_string(tok.index) +
                               " out of order (expected " +
                               std::to_string(sent.size() + 1) + ")");
    tok.form = std::string(cols[1]);
    tok.lemma = field(cols[2]);
    tok.cpostag = field(cols[3]);
    tok.postag = field(cols[4]);
    tok.feats = field(cols[5]);
    if (!parse_int_field(cols[6], tok.head))
      return fail(line_no, "bad head '" + std::string(cols[6]) + "'");
    tok.deprel = field(cols[7]);
    sent.tokens.push_back(std::move(tok));
  }
  if (sent.tokens.empty())
    return fail(sent.first_line, "sentence has no token lines");
  const int n = sent.size();
  for (const auto& tok : sent.tokens) {
    if (tok.head > n)
      return fail(sent.first_line + tok.index - 1,
                  "head " + std::to_string(tok.head) + " out of range (n=" +
                      std::to_string(n) + ")");
    if (tok.head == tok.index)
      return fail(sent.first_line + tok.index - 1,
                  "token " + std::to_string(tok.index) + " is its own head");
  }
  return sent;
}

// Pull-style reader over a character stream.
class ConllReader {
 public:
  ConllReader(std::istream& in, IngestConfig cfg)
      : in_(&in), cfg_(std::move(cfg)) {}

  // Returns the next sentence or per-sentence error; nothing at EOF.
  std::optional<std::variant<RawSentence, SentenceError>> next() {
    auto block = read_block(*in_, line_no_, ordinal_);
    if (!block) return std::nullopt;
    return parse_block(*block, cfg_);
  }

  long long sentences_seen() const { return ordinal_; }

 private:
  std::istream* in_;
  IngestConfig cfg_;
  long line_no_ = 0;
  long long ordinal_ = 0;
};

struct ParsedCorpus {
  std::vector<RawSentence> sentences;
  std::vector<SentenceError> errors;
  long long raw_count = 0;  // parsed + discarded
};

inline ParsedCorpus parse_conll(std::istream& in, const IngestConfig& cfg) {
  ParsedCorpus out;
  ConllReader reader(in, cfg);
  while (auto item = reader.next()) {
    if (auto* sent = std::get_if<RawSentence>(&*item))
      out.sentences.push_back(std::move(*sent));
    else
      out.errors.push_back(std::get<SentenceError>(std::move(*item)));
  }
  out.raw_count = reader.sentences_seen();
  return out;
}

// Serializes a sentence back to 10-column records. Empty optional fields
// become "_"; round-trips with parse_block.
inline std::string to_conll(const RawSentence& sent) {
  std::string out;
  const auto field = [](const std::string& f) -> const std::string& {
    static const std::string underscore = "_";
    return f.empty() ? underscore : f;
  };
  for (const auto& tok : sent.tokens) {
    out += format_int(tok.index);
    out += '\t';
    out += tok.form.empty() ? "_" : tok.form;
    out += '\t';
    out += field(tok.lemma);
    out += '\t';
    out += field(tok.cpostag);
    out += '\t';
    out += field(tok.postag);
    out += '\t';
    out += field(tok.feats);
    out += '\t';
    out += format_int(tok.head);
    out += '\t';
    out += field(tok.deprel);
    out += "\t_\t_\n";
  }
  return out;
}

}  // namespace depcross

#endif  // DEPCROSS_CONLL_HPP
