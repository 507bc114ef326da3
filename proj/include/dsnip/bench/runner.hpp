#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dsnip/bench/manifest.hpp"
#include "dsnip/gen/ces.hpp"
#include "dsnip/gen/config.hpp"
#include "dsnip/gen/gst.hpp"
#include "dsnip/gen/illusnip.hpp"
#include "dsnip/gen/tac.hpp"
#include "dsnip/metrics/explain.hpp"
#include "dsnip/metrics/metrics.hpp"
#include "dsnip/rdf/ntriples.hpp"

namespace dsnip {

struct DatasetStats {
  std::size_t tripleCount = 0;
  std::size_t classCount = 0;
  std::size_t propertyCount = 0;
  std::size_t keywordCount = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

inline DatasetStats dataset_stats(const Dataset& d, const Query& q) {
  return {d.size(), d.class_ids().size(), d.property_ids().size(), q.size()};
}

enum class RunStatus {
  Completed,
  TimedOutAnytime,
  TimedOutFailure,
  NoSolution,
  Failed,  // infrastructure failure (unreadable dataset, generator error)
};

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::TimedOutAnytime: return "timeout_anytime";
    case RunStatus::TimedOutFailure: return "timeout_failure";
    case RunStatus::NoSolution: return "no_solution";
    case RunStatus::Failed: return "failed";
  }
  return "unknown";
}

inline RunStatus to_run_status(GenStatus s) {
  switch (s) {
    case GenStatus::Completed: return RunStatus::Completed;
    case GenStatus::TimedOutAnytime: return RunStatus::TimedOutAnytime;
    case GenStatus::TimedOutFailure: return RunStatus::TimedOutFailure;
    case GenStatus::NoSolution: return RunStatus::NoSolution;
  }
  return RunStatus::Failed;
}

struct RunRecord {
  std::string pairId;
  std::string group;
  std::string generator;
  RunStatus status = RunStatus::Failed;
  MetricReport metrics;
  std::int64_t runtimeMillis = 0;
  std::size_t snippetTripleCount = 0;
  std::size_t isolatedNodeCount = 0;
  DatasetStats stats;
  bool excluded = false;
  std::string error;
  std::string explainJson;  // set when RunOptions.explain
};

struct RunOptions {
  GeneratorConfig cfg;
  std::vector<std::string> generators;
  int parallelism = 1;
  std::uint64_t seed = 42;
  bool explain = false;
  std::filesystem::path dumpDir;  // empty = no snippet dumps
  bool zeroRuntimes = false;      // report deterministic zero runtimes
};

inline GeneratorResult run_generator(const std::string& tag, const Dataset& d,
                                     const Query& q,
                                     const GeneratorConfig& cfg,
                                     std::uint64_t seed) {
  if (tag == "illusnip") return generate_illusnip(d, cfg);
  if (tag == "tac") return generate_tac(d, q, cfg);
  if (tag == "gst") return generate_gst(d, q, cfg);
  if (tag == "ces") return generate_ces(d, q, cfg, seed);
  throw std::invalid_argument("unknown generator: " + tag);
}

namespace bench_detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline void dump_snippet(const Dataset& d, const Snippet& s,
                         const std::filesystem::path& dir,
                         const std::string& pair_id, const std::string& tag) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream nt(dir / (pair_id + "." + tag + ".nt"));
    for (std::uint32_t i : s.triples) nt << to_ntriples(d.materialize(i)) << '\n';
  }
  nlohmann::ordered_json side;
  side["isolated"] = nlohmann::ordered_json::array();
  for (TermId r : s.isolated) side["isolated"].push_back(to_ntriples(d.term(r)));
  std::ofstream js(dir / (pair_id + "." + tag + ".isolated.json"));
  js << side.dump(2) << '\n';
}

inline void run_pair(const PairManifest& manifest, const RunOptions& opts,
                     std::size_t pair_idx, std::vector<RunRecord>& out) {
  const PairEntry& entry = manifest.entries[pair_idx];
  const Query query(entry.keywords);

  auto make_base = [&](const std::string& tag) {
    RunRecord r;
    r.pairId = entry.pairId;
    r.group = entry.group;
    r.generator = tag;
    r.stats.keywordCount = query.size();
    return r;
  };

  Dataset dataset;
  bool parsed = false;
  std::string parse_error;
  try {
    dataset = parse_ntriples_file(manifest.resolve(entry).string(),
                                  ParseOptions{/*strict=*/false});
    parsed = true;
  } catch (const std::exception& e) {
    parse_error = e.what();
  }

  MetricOptions mopts{opts.cfg.match, opts.cfg.sharedPredicateNodes};
  for (const std::string& tag : opts.generators) {
    RunRecord rec = make_base(tag);
    if (!parsed) {
      rec.status = RunStatus::Failed;
      rec.error = parse_error;
      out.push_back(std::move(rec));
      continue;
    }
    rec.stats = dataset_stats(dataset, query);
    try {
      GeneratorResult gr = run_generator(
          tag, dataset, query, opts.cfg,
          opts.seed ^ fnv1a(entry.pairId));
      rec.status = to_run_status(gr.status);
      std::int64_t runtime = gr.runtimeMillis;
      if (gr.status == GenStatus::TimedOutAnytime ||
          gr.status == GenStatus::TimedOutFailure)
        runtime = opts.cfg.deadlineMillis;  // timeout counts as the full limit
      if (opts.zeroRuntimes) runtime = 0;
      rec.runtimeMillis = runtime;
      rec.metrics = evaluate(dataset, gr.snippet, query, runtime, mopts);
      rec.snippetTripleCount = gr.snippet.triples.size();
      rec.isolatedNodeCount = gr.snippet.isolated.size();
      if (opts.explain)
        rec.explainJson = explain(dataset, gr.snippet, query, mopts).dump();
      if (!opts.dumpDir.empty())
        dump_snippet(dataset, gr.snippet, opts.dumpDir, entry.pairId, tag);
    } catch (const std::exception& e) {
      rec.status = RunStatus::Failed;
      rec.error = e.what();
    }
    out.push_back(std::move(rec));
  }

  // Pair-level exclusion: aggregation keeps only pairs where
  // every requested method produced a non-empty snippet before timeout.
  bool excluded = false;
  for (const RunRecord& r : out) {
    if (r.status == RunStatus::TimedOutFailure ||
        r.status == RunStatus::NoSolution || r.status == RunStatus::Failed ||
        (r.snippetTripleCount == 0 && r.isolatedNodeCount == 0))
      excluded = true;
  }
  if (excluded)
    for (RunRecord& r : out) r.excluded = true;
}

}  // namespace bench_detail

/// One RunRecord per (pair, generator), in manifest x generator order.
/// Per-entry failures are recorded, never thrown. Pairs run in parallel on
/// `parallelism` workers; records land in deterministic slots.
inline std::vector<RunRecord> run_experiment(const PairManifest& manifest,
                                             const RunOptions& opts) {
  opts.cfg.validate();
  for (const std::string& tag : opts.generators)
    if (tag != "illusnip" && tag != "tac" && tag != "gst" && tag != "ces")
      throw std::invalid_argument("unknown generator: " + tag);

  const std::size_t n = manifest.entries.size();
  std::vector<std::vector<RunRecord>> slots(n);

  const int workers = std::max(1, opts.parallelism);
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      bench_detail::run_pair(manifest, opts, i, slots[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        bench_detail::run_pair(manifest, opts, i, slots[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::vector<RunRecord> records;
  for (std::vector<RunRecord>& slot : slots)
    for (RunRecord& r : slot) records.push_back(std::move(r));
  return records;
}

}  // namespace dsnip
