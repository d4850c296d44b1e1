// vislip/metrics.hpp
//
// Levenshtein edit distance with a substitution/deletion/insertion
// decomposition, plus WER/CER aggregation. Corpus rates are
// token-weighted (sum of distances over sum of reference lengths) and
// deliberately not clamped at 1.0: insertion-heavy hypotheses can exceed
// it.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vislip/common.hpp"

namespace vislip {

struct ErrorBreakdown {
  std::uint64_t distance = 0;
  std::uint64_t substitutions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t reference_length = 0;

  double rate() const {
    if (reference_length == 0)
      throw InputError("error rate undefined for empty reference");
    return static_cast<double>(distance) /
           static_cast<double>(reference_length);
  }
};

/// Minimal unit-cost edit distance from reference `a` to hypothesis `b`.
/// Deletions are reference tokens missing from the hypothesis, insertions
/// are extra hypothesis tokens. Backtrace ties prefer substitution over
/// deletion over insertion.
template <typename Seq>
ErrorBreakdown edit_distance(const Seq& a, const Seq& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::uint32_t> dp((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return dp[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag = at(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1);
      const std::uint32_t del = at(i - 1, j) + 1;
      const std::uint32_t ins = at(i, j - 1) + 1;
      at(i, j) = std::min(diag, std::min(del, ins));
    }
  }

  ErrorBreakdown out;
  out.distance = at(n, m);
  out.reference_length = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        at(i, j) == at(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)) {
      if (!(a[i - 1] == b[j - 1])) ++out.substitutions;
      --i, --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++out.deletions;
      --i;
    } else {
      ++out.insertions;
      --j;
    }
  }
  return out;
}

struct SentenceRates {
  ErrorBreakdown wer;  // over space-split word tokens
  ErrorBreakdown cer;  // over characters, spaces included
};

inline SentenceRates sentence_error_rates(const std::string& ref,
                                          const std::string& hyp) {
  if (ref.empty())
    throw InputError("sentence_error_rates: empty reference");
  SentenceRates rates;
  rates.wer = edit_distance(detail::split_ws(ref), detail::split_ws(hyp));
  rates.cer = edit_distance(ref, hyp);
  return rates;
}

struct SentenceEval {
  std::string ref;
  std::string hyp;
  ErrorBreakdown wer;
  ErrorBreakdown cer;
};

struct EvalReport {
  double wer = 0.0;
  double cer = 0.0;
  std::size_t n_examples = 0;
  std::string model_id;
  std::vector<SentenceEval> per_sentence;
};

/// Token-weighted corpus aggregation: corpus rate equals the sum of edit
/// distances divided by the sum of reference lengths.
inline EvalReport corpus_error_rates(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    std::string model_id = "") {
  if (pairs.empty())
    throw InputError("corpus_error_rates: empty evaluation list");
  EvalReport report;
  report.model_id = std::move(model_id);
  std::uint64_t wer_dist = 0, wer_len = 0, cer_dist = 0, cer_len = 0;
  for (const auto& [ref, hyp] : pairs) {
    SentenceRates rates = sentence_error_rates(ref, hyp);
    wer_dist += rates.wer.distance;
    wer_len += rates.wer.reference_length;
    cer_dist += rates.cer.distance;
    cer_len += rates.cer.reference_length;
    report.per_sentence.push_back({ref, hyp, rates.wer, rates.cer});
  }
  report.n_examples = pairs.size();
  report.wer = static_cast<double>(wer_dist) / static_cast<double>(wer_len);
  report.cer = static_cast<double>(cer_dist) / static_cast<double>(cer_len);
  return report;
}

/// Key/value schema: format, model, n_examples, wer, cer, and
/// per_sentence.<i>.{ref,hyp,wer,cer} with each breakdown written as
/// "distance/sub/del/ins/ref_len".
inline void write_eval_report(const EvalReport& report, std::ostream& out) {
  auto breakdown = [](const ErrorBreakdown& e) {
    return std::to_string(e.distance) + '/' + std::to_string(e.substitutions) +
           '/' + std::to_string(e.deletions) + '/' +
           std::to_string(e.insertions) + '/' +
           std::to_string(e.reference_length);
  };
  out << "format = vislip-eval-1\n";
  out << "model = " << report.model_id << '\n';
  out << "n_examples = " << report.n_examples << '\n';
  out << "wer = " << format_rate(report.wer) << '\n';
  out << "cer = " << format_rate(report.cer) << '\n';
  for (std::size_t i = 0; i < report.per_sentence.size(); ++i) {
    const auto& s = report.per_sentence[i];
    out << "per_sentence." << i << ".ref = " << s.ref << '\n';
    out << "per_sentence." << i << ".hyp = " << s.hyp << '\n';
    out << "per_sentence." << i << ".wer = " << breakdown(s.wer) << '\n';
    out << "per_sentence." << i << ".cer = " << breakdown(s.cer) << '\n';
  }
}

}  // namespace vislip
