// vislip/seq2seq/vocab.hpp
//
// Token inventories for the viseme-to-character model. Source side: the
// mapping's viseme alphabet plus the optional word-boundary token.
// Target side: A-Z, apostrophe, space, and the SOS/EOS/PAD specials.

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "vislip/common.hpp"
#include "vislip/lexicon.hpp"

namespace vislip {

inline constexpr const char* kSosToken = "<sos>";
inline constexpr const char* kEosToken = "<eos>";
inline constexpr const char* kPadToken = "<pad>";

struct TokenVocab {
  std::vector<std::string> source_tokens;
  std::vector<std::string> target_tokens;  // specials first: PAD, SOS, EOS
  std::unordered_map<std::string, int> source_index;
  std::unordered_map<std::string, int> target_index;

  int pad_id = 0;
  int sos_id = 1;
  int eos_id = 2;

  int source_size() const { return static_cast<int>(source_tokens.size()); }
  int target_size() const { return static_cast<int>(target_tokens.size()); }

  bool is_special(int target_id) const {
    return target_id == pad_id || target_id == sos_id || target_id == eos_id;
  }

  std::vector<int> encode_source(const VisemeSeq& visemes) const {
    std::vector<int> ids;
    ids.reserve(visemes.size());
    for (const Viseme& v : visemes) {
      auto it = source_index.find(v);
      if (it == source_index.end())
        throw InputError("unknown source token: " + v);
      ids.push_back(it->second);
    }
    return ids;
  }

  /// Characters only; SOS/EOS wrapping is wrap_target's job.
  std::vector<int> encode_target(const std::string& text) const {
    std::vector<int> ids;
    ids.reserve(text.size());
    for (char c : text) {
      auto it = target_index.find(std::string(1, c));
      if (it == target_index.end())
        throw InputError(std::string("unknown target character: '") + c + "'");
      ids.push_back(it->second);
    }
    return ids;
  }

  /// [SOS, chars..., EOS], padded with PAD up to pad_to when requested.
  std::vector<int> wrap_target(const std::vector<int>& char_ids,
                               std::size_t pad_to = 0) const {
    std::vector<int> out;
    out.reserve(char_ids.size() + 2);
    out.push_back(sos_id);
    out.insert(out.end(), char_ids.begin(), char_ids.end());
    out.push_back(eos_id);
    while (out.size() < pad_to) out.push_back(pad_id);
    return out;
  }

  /// Drops SOS/EOS/PAD and concatenates the characters.
  std::string decode_target(const std::vector<int>& ids) const {
    std::string out;
    for (int id : ids) {
      if (id < 0 || id >= target_size())
        throw InputError("target id out of range: " + std::to_string(id));
      if (is_special(id)) continue;
      out += target_tokens[id];
    }
    return out;
  }
};

/// Builds the vocabulary for a mapping. Source order is the sorted viseme
/// alphabet (indices are stable for a given mapping regardless of corpus),
/// with WB appended when boundary tokens are enabled.
inline TokenVocab make_token_vocab(const VisemeMapping& mapping,
                                   bool boundaries = false) {
  TokenVocab vocab;
  vocab.source_tokens = mapping.viseme_alphabet();
  if (boundaries) vocab.source_tokens.push_back(kWordBoundary);

  vocab.target_tokens = {kPadToken, kSosToken, kEosToken};
  for (char c = 'A'; c <= 'Z'; ++c)
    vocab.target_tokens.emplace_back(1, c);
  vocab.target_tokens.emplace_back(1, '\'');
  vocab.target_tokens.emplace_back(1, ' ');

  for (int i = 0; i < vocab.source_size(); ++i)
    vocab.source_index[vocab.source_tokens[i]] = i;
  for (int i = 0; i < vocab.target_size(); ++i)
    vocab.target_index[vocab.target_tokens[i]] = i;
  return vocab;
}

}  // namespace vislip
