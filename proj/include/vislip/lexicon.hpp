// vislip/lexicon.hpp
//
// Pronunciation dictionary (CMU plain-text format), phoneme inventory,
// and the configurable phoneme-to-viseme mapping. Lexicon and
// VisemeMapping are immutable after load and safe for concurrent reads;
// all conversions are pure functions.

#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vislip/common.hpp"

namespace vislip {

using Phoneme = std::string;
using Viseme = std::string;
using PhonemeSeq = std::vector<Phoneme>;
using VisemeSeq = std::vector<Viseme>;

/// Reserved mapping target meaning "deleted from the viseme stream".
inline constexpr const char* kNullViseme = "NULL";
/// Token inserted between words when boundary emission is enabled.
inline constexpr const char* kWordBoundary = "WB";

struct Lexicon {
  /// word (uppercase) -> first listed pronunciation, stress stripped.
  std::map<std::string, PhonemeSeq> entries;
  /// Union of phoneme symbols over all entries.
  std::set<Phoneme> inventory;

  bool contains(const std::string& word) const {
    return entries.find(word) != entries.end();
  }
  std::size_t size() const { return entries.size(); }
};

struct VisemeMapping {
  std::string name = "unnamed";
  std::string version = "0";
  std::map<Phoneme, Viseme> table;

  /// Sorted non-NULL viseme alphabet (the codomain minus the deletion mark).
  std::vector<Viseme> viseme_alphabet() const {
    std::set<Viseme> seen;
    for (const auto& [ph, vis] : table)
      if (vis != kNullViseme) seen.insert(vis);
    return {seen.begin(), seen.end()};
  }
};

namespace detail {

inline bool is_lexicon_word(std::string_view word) {
  if (word.empty()) return false;
  for (char c : word)
    if (!(c >= 'A' && c <= 'Z') && c != '\'') return false;
  return true;
}

/// "READ(2)" -> {"READ", 2}; "READ" -> {"READ", 1}. Empty base on failure.
inline std::pair<std::string, int> split_variant(std::string_view field) {
  auto open = field.find('(');
  if (open == std::string_view::npos) return {std::string(field), 1};
  if (field.empty() || field.back() != ')' || open + 2 > field.size())
    return {"", 0};
  std::string_view digits = field.substr(open + 1, field.size() - open - 2);
  if (digits.empty()) return {"", 0};
  int n = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return {"", 0};
    n = n * 10 + (c - '0');
  }
  return {std::string(field.substr(0, open)), n};
}

inline Phoneme strip_stress(std::string_view token) {
  std::size_t end = token.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(token[end - 1])))
    --end;
  return Phoneme(token.substr(0, end));
}

inline bool is_phoneme_symbol(std::string_view sym) {
  if (sym.empty()) return false;
  for (char c : sym)
    if (!(c >= 'A' && c <= 'Z')) return false;
  return true;
}

}  // namespace detail

/// Parses a CMU-format pronunciation dictionary. ";;;" comment lines and
/// blank lines are ignored; "WORD(n)" alternate pronunciations are
/// discarded, keeping the first transcript per word; stress digits are
/// stripped from the phonemes.
inline Lexicon parse_pronunciation_dict(std::istream& in) {
  Lexicon lex;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::strip_cr(raw);
    if (line.empty() || line.rfind(";;;", 0) == 0) continue;

    const std::vector<std::string> fields = detail::split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() < 2)
      throw ParseError("dictionary entry has no phonemes: " + fields[0],
                       line_no);

    const auto [word, variant] = detail::split_variant(fields[0]);
    if (variant == 0 || !detail::is_lexicon_word(word))
      throw ParseError("unparseable word field: " + fields[0], line_no);
    if (variant > 1) continue;  // first-transcript rule

    if (lex.entries.count(word))
      throw ParseError("duplicate entry for word: " + word, line_no);

    PhonemeSeq phones;
    phones.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      Phoneme ph = detail::strip_stress(fields[i]);
      if (!detail::is_phoneme_symbol(ph))
        throw ParseError("bad phoneme token: " + fields[i], line_no);
      phones.push_back(ph);
    }
    for (const Phoneme& ph : phones) lex.inventory.insert(ph);
    lex.entries.emplace(word, std::move(phones));
  }
  return lex;
}

/// Returns the stored pronunciation for an uppercase word.
inline const PhonemeSeq& lookup_phonemes(const Lexicon& lex,
                                         const std::string& word) {
  auto it = lex.entries.find(word);
  if (it == lex.entries.end()) throw OovError(word);
  return it->second;
}

/// Loads a "PHONEME<TAB>VISEME" table and checks it covers the whole
/// inventory. "#" lines are comments; "# name:" and "# version:" set the
/// mapping identity.
inline VisemeMapping load_viseme_mapping(std::istream& in,
                                         const std::set<Phoneme>& inventory) {
  VisemeMapping mapping;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::strip_cr(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto directive = [&](std::string_view key) -> std::string {
        // "# name: foo" -> "foo"
        std::string prefix = "# " + std::string(key) + ":";
        if (line.rfind(prefix, 0) != 0) return "";
        std::string value = line.substr(prefix.size());
        std::size_t start = value.find_first_not_of(' ');
        return start == std::string::npos ? "" : value.substr(start);
      };
      if (auto v = directive("name"); !v.empty()) mapping.name = v;
      if (auto v = directive("version"); !v.empty()) mapping.version = v;
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError("expected PHONEME<TAB>VISEME: " + line, line_no);
    const std::string phoneme = line.substr(0, tab);
    const std::string viseme = line.substr(tab + 1);
    if (phoneme.empty() || viseme.empty())
      throw ParseError("empty phoneme or viseme field", line_no);
    if (mapping.table.count(phoneme))
      throw ParseError("duplicate phoneme line: " + phoneme, line_no);
    mapping.table.emplace(phoneme, viseme);
  }

  std::vector<Phoneme> uncovered;
  for (const Phoneme& ph : inventory)
    if (!mapping.table.count(ph)) uncovered.push_back(ph);
  if (!uncovered.empty())
    throw MappingError("mapping does not cover phonemes: " +
                       detail::join(uncovered));
  if (mapping.viseme_alphabet().size() < 2)
    throw MappingError("mapping defines fewer than two non-NULL visemes");
  return mapping;
}

/// Element-wise phoneme-to-viseme conversion; NULL targets are dropped.
inline VisemeSeq phonemes_to_visemes(const VisemeMapping& mapping,
                                     const PhonemeSeq& phonemes) {
  VisemeSeq out;
  out.reserve(phonemes.size());
  for (const Phoneme& ph : phonemes) {
    auto it = mapping.table.find(ph);
    if (it == mapping.table.end())
      throw MappingError("phoneme not covered by mapping '" + mapping.name +
                         "': " + ph);
    if (it->second != kNullViseme) out.push_back(it->second);
  }
  return out;
}

inline VisemeSeq word_to_visemes(const Lexicon& lex,
                                 const VisemeMapping& mapping,
                                 const std::string& word) {
  return phonemes_to_visemes(mapping, lookup_phonemes(lex, word));
}

/// Converts a normalized sentence to its viseme token sequence. With
/// boundaries enabled a WB token separates the per-word sequences.
inline VisemeSeq sentence_to_visemes(const Lexicon& lex,
                                     const VisemeMapping& mapping,
                                     const std::string& sentence,
                                     bool boundaries = false) {
  VisemeSeq out;
  bool first = true;
  for (const std::string& word : detail::split_ws(sentence)) {
    VisemeSeq vis = word_to_visemes(lex, mapping, word);
    if (!first && boundaries) out.push_back(kWordBoundary);
    out.insert(out.end(), vis.begin(), vis.end());
    first = false;
  }
  return out;
}

}  // namespace vislip
