#pragma once
// Outcome verification: extract the final boxed answer from a trace, decide
// correctness against the gold answer with rule-based string/rational
// equivalence, and aggregate pass@1 / avg@k accuracies.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairkit/corpus.hpp"
#include "pairkit/types.hpp"

namespace pairkit {

// Content of the LAST `\boxed{...}` occurrence, with balanced-brace matching
// (nesting allowed, every brace counts; no escape handling). If the braces
// after the last `\boxed{` never balance, extraction fails — fail closed.
std::optional<std::string> extract_final_answer(std::string_view trace_text);

// Canonical answer form: trimmed, surrounding $ stripped, \left/\right
// removed, \dfrac -> \frac, whitespace runs collapsed to one space, trailing
// periods dropped. Applied to a fixed point, hence idempotent.
std::string normalize_answer(std::string_view raw);

// True when the normalized strings are equal, or both parse as exact
// rationals (integer, decimal, p/q, or \frac{p}{q}) with equal value.
// No symbolic algebra: "x+1" vs "1+x" is false.
bool answers_equivalent(std::string_view a, std::string_view b);

// Total function: correct / incorrect when an answer extracts, unverifiable
// when it does not. method records which comparison route decided.
Verdict verify_trace(const Trace& trace, std::string_view gold_answer);

// Fills verdict (and extracted_answer) on every trace in place.
void verify_traces(TraceSet& traces, const ProblemSet& problems);

struct ProblemVerdicts {
  std::string problem_id;
  std::vector<Verdict> verdicts;
};

// Mean over problems of the fraction of each problem's first k verdicts that
// are correct. k=1 is pass@1. Problems with fewer than k verdicts are errors.
double aggregate_accuracy(const std::vector<ProblemVerdicts>& per_problem, std::size_t k);

}  // namespace pairkit
