#include "pairkit/corpus.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "pairkit/detrand.hpp"
#include "pairkit/errors.hpp"
#include "pairkit/jsonl.hpp"

namespace pairkit {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void record_error(const std::filesystem::path& path, std::size_t line,
                               const std::string& what) {
  throw DataError(path.filename().string() + ":" + std::to_string(line) + ": " + what);
}

std::string require_string(const json& j, const char* field, const std::filesystem::path& path,
                           std::size_t line) {
  auto it = j.find(field);
  if (it == j.end()) record_error(path, line, std::string("missing field '") + field + "'");
  if (!it->is_string()) record_error(path, line, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::string optional_string(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return {};
  return it->get<std::string>();
}

}  // namespace

void ProblemSet::add(Problem p) {
  if (p.problem_id.empty()) throw DataError("problem with empty problem_id");
  if (p.gold_answer.empty()) throw DataError("problem \"" + p.problem_id + "\" has empty gold_answer");
  if (p.statement.empty()) throw DataError("problem \"" + p.problem_id + "\" has empty statement");
  auto [it, inserted] = index_.emplace(p.problem_id, items_.size());
  if (!inserted) throw DataError("duplicate problem_id \"" + p.problem_id + "\"");
  items_.push_back(std::move(p));
}

bool ProblemSet::contains(std::string_view problem_id) const {
  return index_.count(std::string(problem_id)) > 0;
}

const Problem* ProblemSet::find(std::string_view problem_id) const {
  auto it = index_.find(std::string(problem_id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

void TraceSet::add(Trace t) {
  if (t.trace_id.empty()) throw DataError("trace with empty trace_id");
  if (t.text.empty()) throw DataError("trace \"" + t.trace_id + "\" has empty text");
  auto [it, inserted] = index_.emplace(t.trace_id, items_.size());
  if (!inserted) throw DataError("duplicate trace_id \"" + t.trace_id + "\"");
  by_problem_[t.problem_id].push_back(items_.size());
  items_.push_back(std::move(t));
}

const Trace* TraceSet::find(std::string_view trace_id) const {
  auto it = index_.find(std::string(trace_id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

std::vector<std::size_t> TraceSet::indices_for_problem(std::string_view problem_id) const {
  auto it = by_problem_.find(std::string(problem_id));
  return it == by_problem_.end() ? std::vector<std::size_t>{} : it->second;
}

std::vector<std::string> TraceSet::problem_ids() const {
  std::vector<std::string> out;
  std::unordered_map<std::string, bool> seen;
  for (const auto& t : items_) {
    if (!seen.emplace(t.problem_id, true).second) continue;
    out.push_back(t.problem_id);
  }
  return out;
}

ProblemSet load_problems(const std::filesystem::path& path) {
  ProblemSet set;
  jsonl::for_each_line(path, [&](std::size_t line, const std::string& text) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      record_error(path, line, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) record_error(path, line, "record is not a JSON object");
    Problem p;
    p.problem_id = require_string(j, "problem_id", path, line);
    p.statement = require_string(j, "statement", path, line);
    p.gold_answer = require_string(j, "gold_answer", path, line);
    p.source = optional_string(j, "source");
    try {
      set.add(std::move(p));
    } catch (const DataError& e) {
      record_error(path, line, e.what());
    }
  });
  set.note("load_problems:" + path.string());
  return set;
}

namespace {

Verdict verdict_from_json(const json& j, const std::filesystem::path& path, std::size_t line) {
  Verdict v;
  auto label = verdict_label_from_string(require_string(j, "label", path, line));
  if (!label) record_error(path, line, "unknown verdict label");
  v.label = *label;
  if (j.contains("extracted") && !j["extracted"].is_null())
    v.extracted = j["extracted"].get<std::string>();
  auto method = extraction_method_from_string(
      j.contains("method") ? j["method"].get<std::string>() : "none");
  if (!method) record_error(path, line, "unknown verdict method");
  v.method = *method;
  return v;
}

QualityScore quality_from_json(const json& j, const std::filesystem::path& path, std::size_t line) {
  QualityScore q;
  for (Dimension d : kAllDimensions) {
    const char* id = dimension_id(d);
    if (!j.contains(id)) record_error(path, line, std::string("quality missing dimension '") + id + "'");
    q.mean[static_cast<int>(d)] = j[id].get<double>();
  }
  if (!j.contains("n_ratings")) record_error(path, line, "quality missing n_ratings");
  q.n_ratings = j["n_ratings"].get<int>();
  return q;
}

ordered_json verdict_to_json(const Verdict& v) {
  ordered_json j;
  j["label"] = to_string(v.label);
  if (v.extracted) j["extracted"] = *v.extracted;
  j["method"] = to_string(v.method);
  return j;
}

ordered_json quality_to_json(const QualityScore& q) {
  ordered_json j;
  for (Dimension d : kAllDimensions) j[dimension_id(d)] = q.mean[static_cast<int>(d)];
  j["n_ratings"] = q.n_ratings;
  return j;
}

}  // namespace

TraceSet load_traces(const std::filesystem::path& path, const ProblemSet& problems) {
  TraceSet set;
  jsonl::for_each_line(path, [&](std::size_t line, const std::string& text) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      record_error(path, line, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) record_error(path, line, "record is not a JSON object");
    Trace t;
    t.trace_id = require_string(j, "trace_id", path, line);
    t.problem_id = require_string(j, "problem_id", path, line);
    t.generator.family = require_string(j, "generator_family", path, line);
    t.generator.scale_label = require_string(j, "generator_scale", path, line);
    t.text = require_string(j, "text", path, line);
    if (!problems.contains(t.problem_id))
      record_error(path, line, "trace \"" + t.trace_id + "\" references unknown problem \"" +
                                   t.problem_id + "\"");
    if (j.contains("extracted_answer") && !j["extracted_answer"].is_null())
      t.extracted_answer = j["extracted_answer"].get<std::string>();
    if (j.contains("verdict") && !j["verdict"].is_null())
      t.verdict = verdict_from_json(j["verdict"], path, line);
    if (j.contains("quality") && !j["quality"].is_null())
      t.quality = quality_from_json(j["quality"], path, line);
    try {
      set.add(std::move(t));
    } catch (const DataError& e) {
      record_error(path, line, e.what());
    }
  });
  set.note("load_traces:" + path.string());
  return set;
}

void save_problems(const ProblemSet& problems, const std::filesystem::path& path) {
  std::string out;
  for (const auto& p : problems.items()) {
    ordered_json j;
    j["problem_id"] = p.problem_id;
    j["statement"] = p.statement;
    j["gold_answer"] = p.gold_answer;
    if (!p.source.empty()) j["source"] = p.source;
    out += j.dump();
    out += '\n';
  }
  jsonl::atomic_write(path, out);
}

void save_traces(const TraceSet& traces, const std::filesystem::path& path) {
  std::string out;
  for (const auto& t : traces.items()) {
    ordered_json j;
    j["trace_id"] = t.trace_id;
    j["problem_id"] = t.problem_id;
    j["generator_family"] = t.generator.family;
    j["generator_scale"] = t.generator.scale_label;
    j["text"] = t.text;
    if (t.extracted_answer) j["extracted_answer"] = *t.extracted_answer;
    if (t.verdict) j["verdict"] = verdict_to_json(*t.verdict);
    if (t.quality) j["quality"] = quality_to_json(*t.quality);
    out += j.dump();
    out += '\n';
  }
  jsonl::atomic_write(path, out);
}

ProblemSet filter_mixed_outcome(const ProblemSet& problems, const TraceSet& traces) {
  ProblemSet out;
  for (const auto& p : problems.items()) {
    int correct = 0, incorrect = 0;
    for (std::size_t idx : traces.indices_for_problem(p.problem_id)) {
      const Trace& t = traces.items()[idx];
      if (!t.verdict)
        throw DataError("trace \"" + t.trace_id + "\" has no verdict; run verification first");
      if (t.verdict->label == VerdictLabel::correct) ++correct;
      else if (t.verdict->label == VerdictLabel::incorrect) ++incorrect;
    }
    if (correct >= 1 && incorrect >= 1) out.add(p);
  }
  for (const auto& entry : problems.provenance()) out.note(entry);
  std::ostringstream note;
  note << "filter_mixed_outcome: kept " << out.size() << "/" << problems.size();
  out.note(note.str());
  return out;
}

ProblemSet sample_problems(const ProblemSet& problems, std::size_t n, std::uint64_t seed) {
  if (n > problems.size())
    throw DataError("sample size " + std::to_string(n) + " exceeds corpus size " +
                    std::to_string(problems.size()));
  std::vector<std::size_t> idx(problems.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  detrand::Rng rng(seed);
  // Partial Fisher-Yates: the first n slots are a uniform sample.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + rng.uniform_index(idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(chosen.begin(), chosen.end());  // corpus order, not draw order
  ProblemSet out;
  for (std::size_t i : chosen) out.add(problems.items()[i]);
  for (const auto& entry : problems.provenance()) out.note(entry);
  std::ostringstream note;
  note << "sample_problems: n=" << n << " seed=" << seed;
  out.note(note.str());
  return out;
}

TraceSet subset_by_generator(const TraceSet& traces, std::string_view generator_key) {
  TraceSet out;
  for (const auto& t : traces.items())
    if (t.generator.key() == generator_key) out.add(t);
  for (const auto& entry : traces.provenance()) out.note(entry);
  out.note("subset_by_generator:" + std::string(generator_key));
  return out;
}

}  // namespace pairkit
