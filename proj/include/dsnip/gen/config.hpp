#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/snippet.hpp"

namespace dsnip {

struct GeneratorConfig {
  int tripleBudget = 20;                    // k
  int nodeBudget = 20;                      // TA+C subdivision-node budget
  std::int64_t deadlineMillis = 3'600'000;  // one hour
  int ceSamples = 1000;
  double ceElitePct = 0.1;
  double ceSmoothing = 0.7;
  int ceMaxIters = 30;
  int gstMaxTerminals = 10;
  MatchMode match = MatchMode::Token;
  bool sharedPredicateNodes = false;
  // Optional GST edge-weight hook: weight of a triple (both half-edges get
  // half of it). Must be positive. Null means uniform weight 1.
  std::function<double(const Dataset&, std::uint32_t)> tripleWeight;

  void validate() const {
    if (tripleBudget < 1) throw std::invalid_argument("tripleBudget must be >= 1");
    if (nodeBudget < 1) throw std::invalid_argument("nodeBudget must be >= 1");
    if (!(ceElitePct > 0.0 && ceElitePct < 1.0))
      throw std::invalid_argument("ceElitePct must be in (0,1)");
    if (!(ceSmoothing > 0.0 && ceSmoothing <= 1.0))
      throw std::invalid_argument("ceSmoothing must be in (0,1]");
    if (ceSamples < 1) throw std::invalid_argument("ceSamples must be >= 1");
    if (ceMaxIters < 1) throw std::invalid_argument("ceMaxIters must be >= 1");
    if (gstMaxTerminals < 1)
      throw std::invalid_argument("gstMaxTerminals must be >= 1");
    if (deadlineMillis < 0)
      throw std::invalid_argument("deadlineMillis must be >= 0");
  }
};

enum class GenStatus {
  Completed,
  TimedOutAnytime,  // IlluSnip / CES: best snippet so far returned
  TimedOutFailure,  // TA+C / GST: timeout is failure, snippet empty
  NoSolution,       // TA+C / GST: no snippet exists for this input
};

inline const char* to_string(GenStatus s) {
  switch (s) {
    case GenStatus::Completed: return "completed";
    case GenStatus::TimedOutAnytime: return "timeout_anytime";
    case GenStatus::TimedOutFailure: return "timeout_failure";
    case GenStatus::NoSolution: return "no_solution";
  }
  return "unknown";
}

struct GeneratorResult {
  Snippet snippet;
  GenStatus status = GenStatus::Completed;
  std::int64_t runtimeMillis = 0;
  std::int64_t iterations = 0;
  double objective = 0.0;  // generator-specific: F, star coverage, tree
                           // weight, or best CE sample score
};

/// Cooperative deadline. poll() is cheap enough to call per basic step: it
/// consults the clock every kStride calls.
class Deadline {
public:
  explicit Deadline(std::int64_t millis)
      : start_(std::chrono::steady_clock::now()),
        end_(start_ + std::chrono::milliseconds(millis)) {}

  bool expired() const { return std::chrono::steady_clock::now() >= end_; }

  bool poll() const {
    if (calls_++ % kStride != 0) return false;
    return expired();
  }

  std::int64_t elapsed_millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  static constexpr std::uint64_t kStride = 1024;
  std::chrono::steady_clock::time_point start_, end_;
  mutable std::uint64_t calls_ = 0;
};

}  // namespace dsnip
