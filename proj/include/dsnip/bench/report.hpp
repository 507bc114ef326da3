#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsnip/bench/runner.hpp"
#include "dsnip/errors.hpp"

namespace dsnip {

struct AggregateRow {
  std::string generator;
  std::string group;  // "all" for the overall aggregation
  std::size_t pairs = 0;
  double meanKyw = 0.0, meanCnx = 0.0, meanSkm = 0.0, meanDat = 0.0;
  std::int64_t runtimeMedianMillis = 0;
  std::int64_t runtimeP90Millis = 0;
};

namespace report_detail {

inline std::int64_t nearest_rank(std::vector<std::int64_t>& sorted, double pct) {
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(pct * static_cast<double>(sorted.size())));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

}  // namespace report_detail

/// Mean metric scores (and runtime percentiles) per generator over included
/// pairs, optionally broken down by manifest group. Generators and groups
/// keep first-seen order.
inline std::vector<AggregateRow> aggregate(
    const std::vector<RunRecord>& records, bool by_group = false) {
  struct Bucket {
    std::size_t n = 0;
    double kyw = 0, cnx = 0, skm = 0, dat = 0;
    std::vector<std::int64_t> runtimes;
  };
  std::vector<std::pair<std::pair<std::string, std::string>, Bucket>> buckets;
  auto bucket_of = [&](const std::string& gen,
                       const std::string& grp) -> Bucket& {
    for (auto& [key, b] : buckets)
      if (key.first == gen && key.second == grp) return b;
    buckets.push_back({{gen, grp}, {}});
    return buckets.back().second;
  };

  std::size_t included = 0;
  for (const RunRecord& r : records) {
    if (r.excluded) continue;
    ++included;
    Bucket& b = bucket_of(r.generator, by_group ? r.group : "all");
    b.n++;
    b.kyw += r.metrics.coKyw;
    b.cnx += r.metrics.coCnx;
    b.skm += r.metrics.coSkm;
    b.dat += r.metrics.coDat;
    b.runtimes.push_back(r.runtimeMillis);
  }
  if (included == 0)
    throw AggregationError("aggregate: every pair was excluded or failed");

  std::vector<AggregateRow> rows;
  for (auto& [key, b] : buckets) {
    AggregateRow row;
    row.generator = key.first;
    row.group = key.second;
    row.pairs = b.n;
    const double n = static_cast<double>(b.n);
    row.meanKyw = b.kyw / n;
    row.meanCnx = b.cnx / n;
    row.meanSkm = b.skm / n;
    row.meanDat = b.dat / n;
    std::sort(b.runtimes.begin(), b.runtimes.end());
    row.runtimeMedianMillis = report_detail::nearest_rank(b.runtimes, 0.5);
    row.runtimeP90Millis = report_detail::nearest_rank(b.runtimes, 0.9);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Writes summary.{csv,json}, runs.{csv,json}, radar.json, and runtime.csv
/// into outDir (UTF-8, LF, stable column order). Formats: "csv", "json".
inline std::vector<std::filesystem::path> emit_report(
    const std::vector<RunRecord>& records,
    const std::filesystem::path& out_dir,
    const std::vector<std::string>& formats) {
  namespace rd = report_detail;
  const bool csv = std::find(formats.begin(), formats.end(), "csv") !=
                   formats.end();
  const bool json = std::find(formats.begin(), formats.end(), "json") !=
                    formats.end();
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  const std::vector<AggregateRow> overall = aggregate(records, false);
  const std::vector<AggregateRow> grouped = aggregate(records, true);

  auto open = [&](const std::string& name) {
    std::filesystem::path p = out_dir / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    written.push_back(p);
    return f;
  };

  if (csv) {
    auto f = open("summary.csv");
    f << "generator,group,pairs,coKyw,coCnx,coSkm,coDat,"
         "runtime_ms_median,runtime_ms_p90\n";
    for (const AggregateRow& r : overall)
      f << rd::csv_escape(r.generator) << ',' << rd::csv_escape(r.group) << ','
        << r.pairs << ',' << rd::fmt6(r.meanKyw) << ',' << rd::fmt6(r.meanCnx)
        << ',' << rd::fmt6(r.meanSkm) << ',' << rd::fmt6(r.meanDat) << ','
        << r.runtimeMedianMillis << ',' << r.runtimeP90Millis << '\n';
  }
  if (json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const AggregateRow& r : overall)
      doc.push_back({{"generator", r.generator},
                     {"group", r.group},
                     {"pairs", r.pairs},
                     {"coKyw", r.meanKyw},
                     {"coCnx", r.meanCnx},
                     {"coSkm", r.meanSkm},
                     {"coDat", r.meanDat},
                     {"runtime_ms_median", r.runtimeMedianMillis},
                     {"runtime_ms_p90", r.runtimeP90Millis}});
    auto f = open("summary.json");
    f << doc.dump(2) << '\n';
  }

  auto record_fields = [](const RunRecord& r) {
    return std::vector<std::pair<std::string, std::string>>{
        {"pairId", r.pairId},
        {"group", r.group},
        {"generator", r.generator},
        {"status", to_string(r.status)},
        {"excluded", r.excluded ? "true" : "false"},
        {"coKyw", rd::fmt6(r.metrics.coKyw)},
        {"coCnx", rd::fmt6(r.metrics.coCnx)},
        {"coSkm", rd::fmt6(r.metrics.coSkm)},
        {"coDat", rd::fmt6(r.metrics.coDat)},
        {"snippet_triples", std::to_string(r.snippetTripleCount)},
        {"isolated_nodes", std::to_string(r.isolatedNodeCount)},
        {"runtime_ms", std::to_string(r.runtimeMillis)},
        {"dataset_triples", std::to_string(r.stats.tripleCount)},
        {"dataset_classes", std::to_string(r.stats.classCount)},
        {"dataset_properties", std::to_string(r.stats.propertyCount)},
        {"query_keywords", std::to_string(r.stats.keywordCount)},
        {"error", r.error}};
  };

  if (csv) {
    auto f = open("runs.csv");
    bool first = true;
    for (const RunRecord& r : records) {
      auto fields = record_fields(r);
      if (first) {
        for (std::size_t i = 0; i < fields.size(); ++i)
          f << (i ? "," : "") << fields[i].first;
        f << '\n';
        first = false;
      }
      for (std::size_t i = 0; i < fields.size(); ++i)
        f << (i ? "," : "") << rd::csv_escape(fields[i].second);
      f << '\n';
    }
    if (first) {  // header even when there are no records
      auto fields = record_fields(RunRecord{});
      for (std::size_t i = 0; i < fields.size(); ++i)
        f << (i ? "," : "") << fields[i].first;
      f << '\n';
    }
  }
  if (json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const RunRecord& r : records) {
      nlohmann::ordered_json row;
      row["pairId"] = r.pairId;
      row["group"] = r.group;
      row["generator"] = r.generator;
      row["status"] = to_string(r.status);
      row["excluded"] = r.excluded;
      row["coKyw"] = r.metrics.coKyw;
      row["coCnx"] = r.metrics.coCnx;
      row["coSkm"] = r.metrics.coSkm;
      row["coDat"] = r.metrics.coDat;
      row["classSideVacuous"] = r.metrics.classSideVacuous;
      row["snippet_triples"] = r.snippetTripleCount;
      row["isolated_nodes"] = r.isolatedNodeCount;
      row["runtime_ms"] = r.runtimeMillis;
      row["dataset_triples"] = r.stats.tripleCount;
      row["dataset_classes"] = r.stats.classCount;
      row["dataset_properties"] = r.stats.propertyCount;
      row["query_keywords"] = r.stats.keywordCount;
      if (!r.error.empty()) row["error"] = r.error;
      if (!r.explainJson.empty())
        row["explain"] = nlohmann::ordered_json::parse(r.explainJson);
      doc.push_back(std::move(row));
    }
    auto f = open("runs.json");
    f << doc.dump(2) << '\n';
  }

  {  // radar.json: per-group score vectors per generator
    nlohmann::ordered_json doc;
    for (const AggregateRow& r : grouped) {
      doc[r.group][r.generator] = {{"coKyw", r.meanKyw},
                                   {"coCnx", r.meanCnx},
                                   {"coSkm", r.meanSkm},
                                   {"coDat", r.meanDat},
                                   {"pairs", r.pairs}};
    }
    auto f = open("radar.json");
    f << doc.dump(2) << '\n';
  }

  {  // runtime.csv: ascending per-pair runtimes per generator (included only)
    auto f = open("runtime.csv");
    f << "generator,runtime_ms\n";
    std::vector<std::string> gens;
    for (const RunRecord& r : records)
      if (std::find(gens.begin(), gens.end(), r.generator) == gens.end())
        gens.push_back(r.generator);
    for (const std::string& g : gens) {
      std::vector<std::int64_t> times;
      for (const RunRecord& r : records)
        if (r.generator == g && !r.excluded) times.push_back(r.runtimeMillis);
      std::sort(times.begin(), times.end());
      for (std::int64_t t : times)
        f << rd::csv_escape(g) << ',' << t << '\n';
    }
  }

  return written;
}

}  // namespace dsnip
