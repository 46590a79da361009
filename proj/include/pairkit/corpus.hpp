#pragma once
// Problem/trace corpora: JSONL ingestion, mixed-outcome filtering and seeded
// problem sampling. Sets keep insertion order and record their own provenance
// (source file plus every transformation applied).

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pairkit/types.hpp"

namespace pairkit {

class ProblemSet {
 public:
  // Rejects duplicate or empty problem_id and empty gold_answer/statement.
  void add(Problem p);

  const std::vector<Problem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool contains(std::string_view problem_id) const;
  const Problem* find(std::string_view problem_id) const;

  const std::vector<std::string>& provenance() const { return provenance_; }
  void note(std::string entry) { provenance_.push_back(std::move(entry)); }

 private:
  std::vector<Problem> items_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> provenance_;
};

class TraceSet {
 public:
  // Rejects duplicate or empty trace_id and empty text. Referential checks
  // against a ProblemSet are done by the loaders/builders.
  void add(Trace t);

  const std::vector<Trace>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  Trace& at(std::size_t i) { return items_[i]; }
  const Trace* find(std::string_view trace_id) const;

  // Indices of traces for one problem, in insertion order.
  std::vector<std::size_t> indices_for_problem(std::string_view problem_id) const;
  // Distinct problem_ids in first-seen order.
  std::vector<std::string> problem_ids() const;

  const std::vector<std::string>& provenance() const { return provenance_; }
  void note(std::string entry) { provenance_.push_back(std::move(entry)); }

 private:
  std::vector<Trace> items_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_problem_;
  std::vector<std::string> provenance_;
};

// JSONL fields: problem_id, statement, gold_answer, optional source.
// Malformed records and duplicate ids raise DataError naming the line/id.
ProblemSet load_problems(const std::filesystem::path& path);

// JSONL fields: trace_id, problem_id, generator_family, generator_scale,
// text, optional extracted_answer / verdict / quality. Every problem_id must
// exist in `problems`.
TraceSet load_traces(const std::filesystem::path& path, const ProblemSet& problems);

void save_problems(const ProblemSet& problems, const std::filesystem::path& path);
void save_traces(const TraceSet& traces, const std::filesystem::path& path);

// Keeps exactly the problems with at least one correct-verdict trace AND at
// least one incorrect-verdict trace; unverifiable counts as neither. Every
// trace of a considered problem must carry a verdict.
ProblemSet filter_mixed_outcome(const ProblemSet& problems, const TraceSet& traces);

// Uniform sample without replacement, deterministic in `seed` (mt19937_64
// with rejection-sampled index draws). Output preserves corpus order.
ProblemSet sample_problems(const ProblemSet& problems, std::size_t n, std::uint64_t seed);

// Copy of the traces whose generator key() equals `generator_key`.
TraceSet subset_by_generator(const TraceSet& traces, std::string_view generator_key);

}  // namespace pairkit
