#pragma once
// Core data model shared by every pipeline stage: problems, generator
// identities, reasoning traces, outcome verdicts and quality scores.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pairkit {

// The five reasoning-quality dimensions a trace is rated on.
enum class Dimension : int {
  factuality = 0,
  strategy_coherence = 1,
  step_coherence = 2,
  computational_precision = 3,
  signal_to_noise = 4,
};

inline constexpr int kDimensionCount = 5;

inline constexpr std::array<Dimension, kDimensionCount> kAllDimensions = {
    Dimension::factuality,
    Dimension::strategy_coherence,
    Dimension::step_coherence,
    Dimension::computational_precision,
    Dimension::signal_to_noise,
};

inline const char* dimension_id(Dimension d) {
  switch (d) {
    case Dimension::factuality: return "factuality";
    case Dimension::strategy_coherence: return "strategy_coherence";
    case Dimension::step_coherence: return "step_coherence";
    case Dimension::computational_precision: return "computational_precision";
    case Dimension::signal_to_noise: return "signal_to_noise";
  }
  return "unknown";
}

inline std::optional<Dimension> dimension_from_id(std::string_view id) {
  for (Dimension d : kAllDimensions)
    if (id == dimension_id(d)) return d;
  return std::nullopt;
}

struct Problem {
  std::string problem_id;
  std::string statement;
  std::string gold_answer;
  std::string source;  // optional tag, empty when absent
};

// Identity of a model used to generate traces. `key()` (family-scale) is the
// unit generator-level pairing operates on; the endpoint model name is a
// serving detail and is not persisted in trace files.
struct GeneratorId {
  std::string family;
  std::string scale_label;
  std::string endpoint_model_name;

  std::string key() const { return family + "-" + scale_label; }

  friend bool operator==(const GeneratorId& a, const GeneratorId& b) {
    return a.family == b.family && a.scale_label == b.scale_label;
  }
};

enum class VerdictLabel { correct, incorrect, unverifiable };
enum class ExtractionMethod { boxed_exact, boxed_numeric, none };

inline const char* to_string(VerdictLabel v) {
  switch (v) {
    case VerdictLabel::correct: return "correct";
    case VerdictLabel::incorrect: return "incorrect";
    case VerdictLabel::unverifiable: return "unverifiable";
  }
  return "unverifiable";
}

inline std::optional<VerdictLabel> verdict_label_from_string(std::string_view s) {
  if (s == "correct") return VerdictLabel::correct;
  if (s == "incorrect") return VerdictLabel::incorrect;
  if (s == "unverifiable") return VerdictLabel::unverifiable;
  return std::nullopt;
}

inline const char* to_string(ExtractionMethod m) {
  switch (m) {
    case ExtractionMethod::boxed_exact: return "boxed_exact";
    case ExtractionMethod::boxed_numeric: return "boxed_numeric";
    case ExtractionMethod::none: return "none";
  }
  return "none";
}

inline std::optional<ExtractionMethod> extraction_method_from_string(std::string_view s) {
  if (s == "boxed_exact") return ExtractionMethod::boxed_exact;
  if (s == "boxed_numeric") return ExtractionMethod::boxed_numeric;
  if (s == "none") return ExtractionMethod::none;
  return std::nullopt;
}

// Outcome-correctness label for one trace. `unverifiable` means no answer
// could be extracted; it never counts as correct or incorrect downstream.
struct Verdict {
  VerdictLabel label = VerdictLabel::unverifiable;
  std::optional<std::string> extracted;
  ExtractionMethod method = ExtractionMethod::none;
};

// One judge sample's rating of a single dimension.
struct DimensionRating {
  int score = 0;  // integer in [1,5]
  std::string justification;
  std::vector<std::string> deductions_found;
};

// One complete judge sample: all five dimensions rated exactly once.
struct JudgeRating {
  std::array<DimensionRating, kDimensionCount> ratings;

  int score(Dimension d) const { return ratings[static_cast<int>(d)].score; }
  DimensionRating& at(Dimension d) { return ratings[static_cast<int>(d)]; }
  const DimensionRating& at(Dimension d) const { return ratings[static_cast<int>(d)]; }
};

// Per-dimension mean over n_ratings judge samples. Means are exact integer
// sums divided by n_ratings, so mean * n_ratings is always integral.
struct QualityScore {
  std::array<double, kDimensionCount> mean{};
  int n_ratings = 0;
  std::vector<JudgeRating> individual;  // kept in memory, not persisted

  double of(Dimension d) const { return mean[static_cast<int>(d)]; }
};

struct Trace {
  std::string trace_id;
  std::string problem_id;
  GeneratorId generator;
  std::string text;  // full chain of thought
  std::optional<std::string> extracted_answer;
  std::optional<Verdict> verdict;
  std::optional<QualityScore> quality;
};

}  // namespace pairkit
