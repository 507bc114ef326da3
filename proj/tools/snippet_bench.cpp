// snippet-bench: batch snippet-generation experiments over query-dataset
// pairs (`run`) and standalone metric evaluation of a given snippet (`eval`).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsnip/bench/manifest.hpp"
#include "dsnip/bench/report.hpp"
#include "dsnip/bench/runner.hpp"
#include "dsnip/metrics/explain.hpp"
#include "dsnip/metrics/metrics.hpp"
#include "dsnip/rdf/ntriples.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

dsnip::MatchMode parse_match(const std::string& s) {
  if (s == "token") return dsnip::MatchMode::Token;
  if (s == "substring") return dsnip::MatchMode::Substring;
  throw CLI::ValidationError("--match must be 'token' or 'substring'");
}

int cmd_run(const std::string& manifest_path, const std::string& generators,
            int k, int node_budget, std::int64_t timeout_secs,
            std::uint64_t seed, const std::string& match,
            const std::string& out_dir, const std::string& formats,
            bool shared_pred, bool explain, int parallelism,
            const std::string& dump_dir, bool zero_runtimes) {
  dsnip::RunOptions opts;
  opts.cfg.tripleBudget = k;
  opts.cfg.nodeBudget = node_budget;
  opts.cfg.deadlineMillis = timeout_secs * 1000;
  opts.cfg.match = parse_match(match);
  opts.cfg.sharedPredicateNodes = shared_pred;
  opts.generators = split_csv(generators);
  opts.parallelism = parallelism;
  opts.seed = seed;
  opts.explain = explain;
  opts.zeroRuntimes = zero_runtimes;
  if (!dump_dir.empty()) opts.dumpDir = dump_dir;

  if (opts.generators.empty()) {
    std::cerr << "error: --generators must name at least one generator\n";
    return 1;
  }
  for (const std::string& g : opts.generators) {
    if (g != "illusnip" && g != "tac" && g != "gst" && g != "ces") {
      std::cerr << "error: unknown generator '" << g << "'\n";
      return 1;
    }
  }

  dsnip::PairManifest manifest;
  try {
    manifest = dsnip::load_manifest(manifest_path);
  } catch (const dsnip::ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << '\n';
    return 2;
  }

  std::vector<dsnip::RunRecord> records;
  try {
    records = dsnip::run_experiment(manifest, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    auto files = dsnip::emit_report(records, out_dir, split_csv(formats));
    for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
    for (const auto& row : dsnip::aggregate(records)) {
      std::cout << row.generator << ": pairs=" << row.pairs
                << " coKyw=" << dsnip::report_detail::fmt6(row.meanKyw)
                << " coCnx=" << dsnip::report_detail::fmt6(row.meanCnx)
                << " coSkm=" << dsnip::report_detail::fmt6(row.meanSkm)
                << " coDat=" << dsnip::report_detail::fmt6(row.meanDat)
                << '\n';
    }
  } catch (const dsnip::AggregationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cmd_eval(const std::string& dataset_path, const std::string& snippet_path,
             const std::string& isolated_path, const std::string& keywords,
             const std::string& match, bool shared_pred, bool explain) {
  try {
    dsnip::Dataset dataset = dsnip::parse_ntriples_file(dataset_path);

    std::ifstream sf(snippet_path, std::ios::binary);
    if (!sf) {
      std::cerr << "error: cannot open snippet file: " << snippet_path << '\n';
      return 1;
    }
    dsnip::ParseReport srep;
    dsnip::Dataset snippet_triples =
        dsnip::parse_ntriples(sf, dsnip::ParseOptions{true}, &srep);

    std::vector<std::uint32_t> indices;
    for (std::size_t i = 0; i < snippet_triples.size(); ++i) {
      dsnip::Triple t = snippet_triples.materialize(i);
      auto s = dataset.find_term(t.s);
      auto p = dataset.find_term(t.p);
      auto o = dataset.find_term(t.o);
      auto idx = (s && p && o) ? dataset.find_triple(*s, *p, *o)
                               : std::nullopt;
      if (!idx) {
        std::cerr << "error: snippet triple not found in dataset: "
                  << dsnip::to_ntriples(t) << '\n';
        return 1;
      }
      indices.push_back(*idx);
    }

    std::vector<dsnip::TermId> isolated;
    if (!isolated_path.empty()) {
      std::ifstream jf(isolated_path);
      if (!jf) {
        std::cerr << "error: cannot open isolated-node file: " << isolated_path
                  << '\n';
        return 1;
      }
      nlohmann::json doc;
      jf >> doc;
      for (const auto& item : doc.value("isolated", nlohmann::json::array())) {
        dsnip::Term t = dsnip::parse_term(item.get<std::string>());
        auto id = dataset.find_term(t);
        if (!id) {
          std::cerr << "error: isolated node not found in dataset: "
                    << item.get<std::string>() << '\n';
          return 1;
        }
        isolated.push_back(*id);
      }
    }

    dsnip::Query query(split_csv(keywords));
    dsnip::Snippet snip =
        dsnip::Snippet::of(dataset, std::move(indices), std::move(isolated),
                           "eval");
    dsnip::MetricOptions mopts{parse_match(match), shared_pred};
    dsnip::MetricReport rep = dsnip::evaluate(dataset, snip, query, 0, mopts);

    nlohmann::ordered_json out;
    out["coKyw"] = rep.coKyw;
    out["coCnx"] = rep.coCnx;
    out["coSkm"] = rep.coSkm;
    out["coDat"] = rep.coDat;
    out["snippetTripleCount"] = rep.snippetTripleCount;
    out["isolatedNodeCount"] = rep.isolatedNodeCount;
    out["generatorTag"] = rep.generatorTag;
    out["runtimeMillis"] = rep.runtimeMillis;
    out["classSideVacuous"] = rep.classSideVacuous;
    if (explain) out["explain"] = dsnip::explain(dataset, snip, query, mopts);
    std::cout << out.dump(2) << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Snippet generation benchmark for RDF dataset search"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand(
      "run", "Run generators over a manifest of query-dataset pairs");
  std::string manifest_path;
  std::string generators = "illusnip,tac,gst,ces";
  int k = 20, node_budget = 20, parallelism = 1;
  std::int64_t timeout_secs = 60;
  std::uint64_t seed = 42;
  std::string match = "token", out_dir = "results", formats = "csv,json";
  std::string dump_dir;
  bool shared_pred = false, explain_run = false, zero_runtimes = false;
  run->add_option("--manifest", manifest_path, "pairs manifest JSON")
      ->required();
  run->add_option("--generators", generators,
                  "comma list of illusnip,tac,gst,ces");
  run->add_option("--k", k, "triple budget (default 20)");
  run->add_option("--node-budget", node_budget,
                  "TA+C subdivision-node budget (default 20)");
  run->add_option("--timeout-secs", timeout_secs,
                  "per-generator deadline in seconds (default 60)");
  run->add_option("--seed", seed, "base RNG seed (default 42)");
  run->add_option("--match", match, "keyword match: token|substring");
  run->add_option("--out", out_dir, "output directory (default results/)");
  run->add_option("--format", formats, "comma list of csv,json");
  run->add_option("--parallelism", parallelism, "worker threads (default 1)");
  run->add_option("--dump-snippet", dump_dir,
                  "write each snippet as N-Triples + isolated-node sidecar");
  run->add_flag("--shared-predicate-nodes", shared_pred,
                "share one subdivision node per predicate IRI");
  run->add_flag("--explain", explain_run,
                "embed per-metric breakdowns in runs.json");
  run->add_flag("--zero-runtimes", zero_runtimes,
                "report runtimes as 0 for byte-reproducible outputs");

  // eval
  auto* eval = app.add_subcommand(
      "eval", "Score one snippet against its dataset and query");
  std::string dataset_path, snippet_path, isolated_path, keywords;
  std::string ematch = "token";
  bool eshared = false, explain_eval = false;
  eval->add_option("--dataset", dataset_path, "dataset N-Triples file")
      ->required();
  eval->add_option("--snippet", snippet_path, "snippet N-Triples file")
      ->required();
  eval->add_option("--isolated", isolated_path,
                   "isolated-node JSON sidecar ({\"isolated\":[...]})");
  eval->add_option("--keywords", keywords, "comma-separated keywords")
      ->required();
  eval->add_option("--match", ematch, "keyword match: token|substring");
  eval->add_flag("--shared-predicate-nodes", eshared,
                 "share one subdivision node per predicate IRI");
  eval->add_flag("--explain", explain_eval, "include per-metric breakdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (run->parsed())
    return cmd_run(manifest_path, generators, k, node_budget, timeout_secs,
                   seed, match, out_dir, formats, shared_pred, explain_run,
                   parallelism, dump_dir, zero_runtimes);
  return cmd_eval(dataset_path, snippet_path, isolated_path, keywords, ematch,
                  eshared, explain_eval);
}
