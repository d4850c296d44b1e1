// vislip/analysis.hpp
//
// Homoviseme grouping and the greedy word-level lower-bound WER: decode
// every viseme sequence to its most frequent matching word and count the
// frequency mass that any context-free decoder must lose.

#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vislip/common.hpp"
#include "vislip/corpus.hpp"
#include "vislip/lexicon.hpp"

namespace vislip {

struct HomovisemeClass {
  VisemeSeq key;
  /// (word, corpus frequency), sorted by frequency desc, then word asc.
  std::vector<std::pair<std::string, std::uint64_t>> members;
  /// Max-frequency member; ties broken by lexicographic order.
  std::string representative;

  std::uint64_t mass() const {
    std::uint64_t m = 0;
    for (const auto& [word, freq] : members) m += freq;
    return m;
  }
  std::uint64_t representative_frequency() const {
    for (const auto& [word, freq] : members)
      if (word == representative) return freq;
    return 0;
  }
  /// Frequency mass a context-free decoder loses on this class.
  std::uint64_t lost_mass() const { return mass() - representative_frequency(); }
};

struct LowerBoundReport {
  double wer_lb = 0.0;
  std::uint64_t total_tokens = 0;
  std::uint64_t covered_tokens = 0;
  std::vector<HomovisemeClass> classes;
  std::string mapping_name;
};

/// Partitions the counted vocabulary into classes of identical viseme
/// sequences. Classes are sorted by key for deterministic output.
inline std::vector<HomovisemeClass> group_homovisemes(
    const VocabStats& stats, const Lexicon& lex, const VisemeMapping& mapping) {
  std::map<VisemeSeq, HomovisemeClass> by_key;
  for (const auto& [word, freq] : stats.counts) {
    if (!lex.contains(word))
      throw InputError("group_homovisemes: counted word not in lexicon: " +
                       word);
    VisemeSeq key = word_to_visemes(lex, mapping, word);
    auto& cls = by_key[key];
    cls.key = std::move(key);
    cls.members.emplace_back(word, freq);
  }

  std::vector<HomovisemeClass> classes;
  classes.reserve(by_key.size());
  for (auto& [key, cls] : by_key) {
    std::sort(cls.members.begin(), cls.members.end(),
              [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
              });
    cls.representative = cls.members.front().first;
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Greedy minimum word-level error when every viseme sequence decodes to
/// its most repeated word.
inline LowerBoundReport greedy_lower_bound(
    const std::vector<HomovisemeClass>& classes, std::uint64_t total_tokens,
    std::string mapping_name = "") {
  if (total_tokens == 0)
    throw InputError("greedy_lower_bound: total_tokens is zero");
  std::uint64_t sum = 0;
  std::uint64_t covered = 0;
  for (const auto& cls : classes) {
    if (cls.members.empty())
      throw InputError("greedy_lower_bound: empty homoviseme class");
    sum += cls.mass();
    covered += cls.representative_frequency();
  }
  if (sum != total_tokens)
    throw InputError("greedy_lower_bound: class frequencies sum to " +
                     std::to_string(sum) + ", expected total_tokens " +
                     std::to_string(total_tokens));

  LowerBoundReport report;
  report.total_tokens = total_tokens;
  report.covered_tokens = covered;
  report.wer_lb = 1.0 - static_cast<double>(covered) /
                            static_cast<double>(total_tokens);
  report.classes = classes;
  report.mapping_name = std::move(mapping_name);
  return report;
}

struct AmbiguityEntry {
  VisemeSeq key;
  std::string representative;
  std::uint64_t class_mass = 0;
  std::uint64_t lost_mass = 0;
  std::size_t class_size = 0;
};

struct AmbiguityReport {
  /// class size -> number of classes of that size; counts sum to n_classes.
  std::map<std::size_t, std::size_t> size_histogram;
  /// Classes with nonzero lost mass, sorted by lost mass desc (key asc on
  /// ties), truncated to top_k.
  std::vector<AmbiguityEntry> top_classes;
};

inline AmbiguityReport ambiguity_report(
    const std::vector<HomovisemeClass>& classes, std::size_t top_k = 20) {
  AmbiguityReport report;
  std::vector<AmbiguityEntry> entries;
  for (const auto& cls : classes) {
    ++report.size_histogram[cls.members.size()];
    const std::uint64_t lost = cls.lost_mass();
    if (lost > 0)
      entries.push_back({cls.key, cls.representative, cls.mass(), lost,
                         cls.members.size()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const AmbiguityEntry& a, const AmbiguityEntry& b) {
              if (a.lost_mass != b.lost_mass) return a.lost_mass > b.lost_mass;
              return a.key < b.key;
            });
  if (entries.size() > top_k) entries.resize(top_k);
  report.top_classes = std::move(entries);
  return report;
}

/// Structured key/value report file. Schema (one "key = value" per line):
///   format, mapping_name, total_tokens, covered_tokens, wer_lb,
///   n_classes, n_words, histogram.<size>, and per class
///   class.<i>.{key,representative,members} with classes sorted by key.
inline void write_lower_bound_report(const LowerBoundReport& report,
                                     std::ostream& out) {
  std::size_t n_words = 0;
  for (const auto& cls : report.classes) n_words += cls.members.size();
  out << "format = vislip-analysis-1\n";
  out << "mapping_name = " << report.mapping_name << '\n';
  out << "total_tokens = " << report.total_tokens << '\n';
  out << "covered_tokens = " << report.covered_tokens << '\n';
  out << "wer_lb = " << format_rate(report.wer_lb) << '\n';
  out << "n_classes = " << report.classes.size() << '\n';
  out << "n_words = " << n_words << '\n';
  const AmbiguityReport ambiguity = ambiguity_report(report.classes);
  for (const auto& [size, count] : ambiguity.size_histogram)
    out << "histogram." << size << " = " << count << '\n';
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    const auto& cls = report.classes[i];
    out << "class." << i << ".key = " << detail::join(cls.key) << '\n';
    out << "class." << i << ".representative = " << cls.representative << '\n';
    out << "class." << i << ".members =";
    for (const auto& [word, freq] : cls.members)
      out << ' ' << word << ':' << freq;
    out << '\n';
  }
}

/// Human-readable summary table.
inline void print_analysis_summary(const LowerBoundReport& report,
                                   const AmbiguityReport& ambiguity,
                                   std::ostream& out) {
  std::size_t n_words = 0;
  for (const auto& cls : report.classes) n_words += cls.members.size();
  out << "mapping:         " << report.mapping_name << '\n';
  out << "vocabulary:      " << n_words << " words in "
      << report.classes.size() << " homoviseme classes\n";
  out << "total tokens:    " << report.total_tokens << '\n';
  out << "covered tokens:  " << report.covered_tokens << '\n';
  out << "lower-bound WER: " << format_rate(report.wer_lb) << '\n';
  out << "class sizes:    ";
  for (const auto& [size, count] : ambiguity.size_histogram)
    out << ' ' << size << "->" << count;
  out << '\n';
  if (!ambiguity.top_classes.empty()) {
    out << "most ambiguous classes (by lost frequency mass):\n";
    for (const auto& entry : ambiguity.top_classes)
      out << "  " << std::setw(6) << entry.lost_mass << "  rep "
          << entry.representative << "  [" << detail::join(entry.key)
          << "]\n";
  }
}

}  // namespace vislip
