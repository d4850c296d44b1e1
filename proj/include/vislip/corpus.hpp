// vislip/corpus.hpp
//
// Raw-text ingestion, normalization, lexicon filtering, word statistics,
// and parallel viseme/character dataset construction with seeded splits.

#pragma once

#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vislip/common.hpp"
#include "vislip/lexicon.hpp"
#include "vislip/rng.hpp"

namespace vislip {

inline constexpr const char* kNormalizationVersion = "norm-1";

struct TextCorpus {
  std::vector<std::string> sentences;
  std::string source;
  std::string normalization_version = kNormalizationVersion;
};

struct VocabStats {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total_tokens = 0;
};

enum class Split { unassigned, train, valid, test };

inline std::string_view split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::valid: return "valid";
    case Split::test: return "test";
    default: return "unassigned";
  }
}

inline Split parse_split(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "valid") return Split::valid;
  if (name == "test") return Split::test;
  throw ParseError("unknown split label: " + std::string(name));
}

struct ParallelExample {
  VisemeSeq source;
  std::string target;
  Split split = Split::unassigned;
};

struct ParallelCorpus {
  std::vector<ParallelExample> examples;

  std::vector<const ParallelExample*> split_view(Split s) const {
    std::vector<const ParallelExample*> out;
    for (const auto& ex : examples)
      if (ex.split == s) out.push_back(&ex);
    return out;
  }
};

/// Uppercases, strips punctuation other than apostrophes, collapses
/// whitespace. Returns nullopt when the sentence is empty afterwards or
/// contains digits (rejection is a value, not an error).
inline std::optional<std::string> normalize_sentence(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isdigit(c)) return std::nullopt;
    if (std::isalpha(c)) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += static_cast<char>(std::toupper(c));
    } else if (c == '\'') {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += '\'';
    } else if (std::isspace(c)) {
      pending_space = true;
    }
    // other punctuation: dropped
  }
  if (out.empty()) return std::nullopt;
  return out;
}

/// Reads one raw sentence per line, normalizing as it goes. Returns the
/// corpus plus the number of rejected lines.
inline std::pair<TextCorpus, std::size_t> load_text_corpus(
    std::istream& in, std::string source = "") {
  TextCorpus corpus;
  corpus.source = std::move(source);
  std::size_t rejected = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    if (auto norm = normalize_sentence(detail::strip_cr(raw)))
      corpus.sentences.push_back(std::move(*norm));
    else
      ++rejected;
  }
  return {std::move(corpus), rejected};
}

/// Keeps exactly the sentences whose every word is in the lexicon,
/// preserving order. Second result is the number of dropped sentences.
inline std::pair<TextCorpus, std::size_t> filter_by_lexicon(
    const TextCorpus& corpus, const Lexicon& lex) {
  TextCorpus out;
  out.source = corpus.source;
  out.normalization_version = corpus.normalization_version;
  std::size_t dropped = 0;
  for (const std::string& sentence : corpus.sentences) {
    bool covered = true;
    for (const std::string& word : detail::split_ws(sentence)) {
      if (!lex.contains(word)) {
        covered = false;
        break;
      }
    }
    if (covered)
      out.sentences.push_back(sentence);
    else
      ++dropped;
  }
  return {std::move(out), dropped};
}

/// Exact token counts over single-space-separated words.
inline VocabStats build_vocab_stats(const TextCorpus& corpus) {
  VocabStats stats;
  for (const std::string& sentence : corpus.sentences) {
    for (const std::string& word : detail::split_ws(sentence)) {
      ++stats.counts[word];
      ++stats.total_tokens;
    }
  }
  return stats;
}

/// One (viseme sequence, sentence) example per input sentence, in order.
/// The corpus must already be lexicon-filtered; an OOV word here is a
/// caller contract violation.
inline ParallelCorpus build_parallel_corpus(const TextCorpus& corpus,
                                            const Lexicon& lex,
                                            const VisemeMapping& mapping,
                                            bool boundaries = false) {
  ParallelCorpus pc;
  pc.examples.reserve(corpus.sentences.size());
  for (const std::string& sentence : corpus.sentences) {
    ParallelExample ex;
    try {
      ex.source = sentence_to_visemes(lex, mapping, sentence, boundaries);
    } catch (const OovError& e) {
      throw InputError(
          "build_parallel_corpus requires a lexicon-filtered corpus; "
          "found OOV word: " +
          e.word());
    }
    ex.target = sentence;
    pc.examples.push_back(std::move(ex));
  }
  return pc;
}

struct SplitRatios {
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;
};

/// Seeded shuffle followed by contiguous assignment with largest-remainder
/// rounding. The same (corpus, ratios, seed) always produces the same
/// assignment.
inline ParallelCorpus split_corpus(const ParallelCorpus& pc,
                                   const SplitRatios& ratios,
                                   std::uint64_t seed) {
  const double sum = ratios.train + ratios.valid + ratios.test;
  if (ratios.train < 0 || ratios.valid < 0 || ratios.test < 0 ||
      sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9)
    throw ConfigError("split ratios must be non-negative and sum to 1");
  for (const auto& ex : pc.examples)
    if (ex.split != Split::unassigned)
      throw InputError("split_corpus: corpus is already split");

  const std::size_t n = pc.examples.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  // Largest-remainder apportionment of n over the three ratios.
  const double shares[3] = {ratios.train, ratios.valid, ratios.test};
  std::size_t counts[3];
  double remainders[3];
  std::size_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    const double exact = shares[k] * static_cast<double>(n);
    counts[k] = static_cast<std::size_t>(exact);
    remainders[k] = exact - static_cast<double>(counts[k]);
    assigned += counts[k];
  }
  while (assigned < n) {
    int best = 0;
    for (int k = 1; k < 3; ++k)
      if (remainders[k] > remainders[best]) best = k;
    ++counts[best];
    remainders[best] = -1.0;
    ++assigned;
  }

  ParallelCorpus out = pc;
  std::size_t pos = 0;
  const Split labels[3] = {Split::train, Split::valid, Split::test};
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < counts[k]; ++i, ++pos)
      out.examples[order[pos]].split = labels[k];
  return out;
}

/// TSV schema: "viseme tokens<TAB>character string<TAB>split_label".
inline void write_parallel_corpus(const ParallelCorpus& pc,
                                  std::ostream& out) {
  for (const auto& ex : pc.examples) {
    if (ex.split == Split::unassigned)
      throw InputError("write_parallel_corpus: example has no split label");
    out << detail::join(ex.source) << '\t' << ex.target << '\t'
        << split_name(ex.split) << '\n';
  }
}

inline ParallelCorpus read_parallel_corpus(std::istream& in) {
  ParallelCorpus pc;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::strip_cr(raw);
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw ParseError("expected 3 tab-separated fields", line_no);
    ParallelExample ex;
    ex.source = detail::split_ws(line.substr(0, t1));
    ex.target = line.substr(t1 + 1, t2 - t1 - 1);
    try {
      ex.split = parse_split(line.substr(t2 + 1));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (ex.source.empty())
      throw ParseError("empty viseme sequence", line_no);
    pc.examples.push_back(std::move(ex));
  }
  return pc;
}

}  // namespace vislip
