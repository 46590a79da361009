#include "pairkit/verification.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>

#include "pairkit/errors.hpp"

namespace pairkit {

std::optional<std::string> extract_final_answer(std::string_view trace_text) {
  constexpr std::string_view kBoxed = "\\boxed{";
  const auto pos = trace_text.rfind(kBoxed);
  if (pos == std::string_view::npos) return std::nullopt;
  const std::size_t start = pos + kBoxed.size();
  int depth = 1;
  for (std::size_t i = start; i < trace_text.size(); ++i) {
    const char c = trace_text[i];
    if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return std::string(trace_text.substr(start, i - start));
    }
  }
  return std::nullopt;  // unbalanced after the last \boxed{
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

// Removes every occurrence of `token` that is not followed by a letter, so
// \left( disappears but \leftarrow survives.
std::string remove_latex_token(const std::string& s, std::string_view token) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, token.size(), token) == 0 &&
        (i + token.size() >= s.size() || !is_letter(s[i + token.size()]))) {
      i += token.size();
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string replace_latex_token(const std::string& s, std::string_view from, std::string_view to) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, from.size(), from) == 0 &&
        (i + from.size() >= s.size() || !is_letter(s[i + from.size()]))) {
      out += to;
      i += from.size();
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string normalize_once(const std::string& input) {
  std::string s = trim(input);
  if (s.size() >= 2 && s.front() == '$' && s.back() == '$') s = s.substr(1, s.size() - 2);
  s = remove_latex_token(s, "\\left");
  s = remove_latex_token(s, "\\right");
  s = replace_latex_token(s, "\\dfrac", "\\frac");
  std::string collapsed;
  collapsed.reserve(s.size());
  bool in_space = false;
  for (char c : s) {
    if (is_space(c)) {
      in_space = true;
    } else {
      if (in_space && !collapsed.empty()) collapsed += ' ';
      in_space = false;
      collapsed += c;
    }
  }
  while (!collapsed.empty() && collapsed.back() == '.') collapsed.pop_back();
  return trim(collapsed);
}

}  // namespace

std::string normalize_answer(std::string_view raw) {
  std::string s(raw);
  // Iterate to a fixed point; e.g. "$x$." needs dollar stripping after the
  // trailing period is gone. Each pass never grows the string.
  for (;;) {
    std::string next = normalize_once(s);
    if (next == s) return s;
    s = std::move(next);
  }
}

namespace {

// Exact rational, den > 0 always.
struct Rational {
  long long num = 0;
  long long den = 1;
};

// Parses [+-]?digits with at most 18 digits (fits in long long).
std::optional<long long> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size() || s.size() - i > 18) return std::nullopt;
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

// [+-]?digits[.digits]
std::optional<Rational> parse_decimal(std::string_view s) {
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    auto v = parse_integer(s);
    if (!v) return std::nullopt;
    return Rational{*v, 1};
  }
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = s.substr(dot + 1);
  if (frac.empty() || frac.size() > 15) return std::nullopt;
  for (char c : frac)
    if (c < '0' || c > '9') return std::nullopt;
  if (whole.empty() || whole == "+" || whole == "-") return std::nullopt;
  auto w = parse_integer(whole);
  auto f = parse_integer(frac);
  if (!w || !f) return std::nullopt;
  long long den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const bool neg = whole[0] == '-';
  long long num = *w * den + (neg ? -*f : *f);
  return Rational{num, den};
}

// \frac{p}{q} with an optional leading sign outside the macro.
std::optional<Rational> parse_frac(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  constexpr std::string_view kFrac = "\\frac{";
  if (s.substr(0, kFrac.size()) != kFrac) return std::nullopt;
  s.remove_prefix(kFrac.size());
  const auto mid = s.find("}{");
  if (mid == std::string_view::npos) return std::nullopt;
  if (s.empty() || s.back() != '}') return std::nullopt;
  auto num = parse_integer(s.substr(0, mid));
  auto den = parse_integer(s.substr(mid + 2, s.size() - mid - 3));
  if (!num || !den || *den == 0) return std::nullopt;
  Rational r{*num, *den};
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  if (neg) r.num = -r.num;
  return r;
}

// digits/digits
std::optional<Rational> parse_slash(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto num = parse_integer(s.substr(0, slash));
  auto den = parse_integer(s.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  Rational r{*num, *den};
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  return r;
}

std::optional<Rational> parse_rational(std::string_view s) {
  if (auto r = parse_frac(s)) return r;
  if (auto r = parse_slash(s)) return r;
  if (auto r = parse_decimal(s)) return r;
  return std::nullopt;
}

bool rationals_equal(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

}  // namespace

bool answers_equivalent(std::string_view a, std::string_view b) {
  const std::string na = normalize_answer(a);
  const std::string nb = normalize_answer(b);
  if (na == nb) return true;
  const auto ra = parse_rational(na);
  const auto rb = parse_rational(nb);
  return ra && rb && rationals_equal(*ra, *rb);
}

Verdict verify_trace(const Trace& trace, std::string_view gold_answer) {
  Verdict v;
  auto extracted = extract_final_answer(trace.text);
  if (!extracted) {
    v.label = VerdictLabel::unverifiable;
    v.method = ExtractionMethod::none;
    return v;
  }
  v.extracted = *extracted;
  const std::string ne = normalize_answer(*extracted);
  const std::string ng = normalize_answer(gold_answer);
  if (ne == ng) {
    v.label = VerdictLabel::correct;
    v.method = ExtractionMethod::boxed_exact;
    return v;
  }
  const auto re = parse_rational(ne);
  const auto rg = parse_rational(ng);
  if (re && rg) {
    v.label = rationals_equal(*re, *rg) ? VerdictLabel::correct : VerdictLabel::incorrect;
    v.method = ExtractionMethod::boxed_numeric;
    return v;
  }
  v.label = VerdictLabel::incorrect;
  v.method = ExtractionMethod::boxed_exact;
  return v;
}

void verify_traces(TraceSet& traces, const ProblemSet& problems) {
  for (std::size_t i = 0; i < traces.size(); ++i) {
    Trace& t = traces.at(i);
    const Problem* p = problems.find(t.problem_id);
    if (!p)
      throw DataError("trace \"" + t.trace_id + "\" references unknown problem \"" +
                      t.problem_id + "\"");
    Verdict v = verify_trace(t, p->gold_answer);
    t.extracted_answer = v.extracted;
    t.verdict = std::move(v);
  }
  traces.note("verify_traces");
}

double aggregate_accuracy(const std::vector<ProblemVerdicts>& per_problem, std::size_t k) {
  if (k == 0) throw DataError("aggregate_accuracy: k must be >= 1");
  if (per_problem.empty()) throw DataError("aggregate_accuracy: no problems");
  double sum = 0.0;
  for (const auto& pv : per_problem) {
    if (pv.verdicts.size() < k)
      throw DataError("problem \"" + pv.problem_id + "\" has " +
                      std::to_string(pv.verdicts.size()) + " verdicts, need " + std::to_string(k));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (pv.verdicts[i].label == VerdictLabel::correct) ++correct;
    sum += static_cast<double>(correct) / static_cast<double>(k);
  }
  return sum / static_cast<double>(per_problem.size());
}

}  // namespace pairkit
