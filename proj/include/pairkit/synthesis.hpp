#pragma once
// Reasoning-trace synthesis: one multi-sample completion per problem with a
// fixed generation configuration, deterministic trace ids, resumable through
// the client cache.

#include "pairkit/corpus.hpp"
#include "pairkit/llm_client.hpp"
#include "pairkit/types.hpp"

namespace pairkit {

struct SynthesisSpec {
  GeneratorId generator;
  int traces_per_problem = 8;
  double temperature = 0.7;
  double top_p = 1.0;
  int max_tokens = 0;
};

// The boxed-answer instruction prepended (once, byte-exact) to the statement.
// Exports reuse this so the trained policy sees the generation prompt.
std::string build_generation_prompt(const Problem& problem);

// trace_id for sample `index` of `problem` under `generator`; a pure function
// of its inputs, so cache-warm reruns reproduce ids exactly.
std::string synthesis_trace_id(const Problem& problem, const GeneratorId& generator, int index);

// Exactly traces_per_problem traces per problem, tagged with spec.generator,
// in (problem, sample) order. Per-problem failures are collected and reported
// together after all problems have been attempted; completed problems stay in
// the cache, so a rerun resumes instead of regenerating.
TraceSet synthesize_traces(const ProblemSet& problems, const SynthesisSpec& spec,
                           LlmClient& client, int max_workers = 8);

}  // namespace pairkit
