#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "dsnip/errors.hpp"
#include "dsnip/rdf/text.hpp"

namespace dsnip {

struct PairEntry {
  std::string pairId;
  std::string datasetPath;
  std::vector<std::string> keywords;  // lowercased, deduplicated
  std::string group;
};

struct PairManifest {
  std::vector<PairEntry> entries;
  std::filesystem::path baseDir;  // relative dataset paths resolve here

  std::filesystem::path resolve(const PairEntry& e) const {
    std::filesystem::path p(e.datasetPath);
    return p.is_absolute() ? p : baseDir / p;
  }
};

/// Loads and validates `{"pairs":[{"pairId","datasetPath","keywords","group"}]}`.
inline PairManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError(path.string(), "cannot open manifest file");

  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(path.string(), std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array())
    throw ManifestError(path.string(), "expected top-level \"pairs\" array");

  PairManifest manifest;
  manifest.baseDir = path.has_parent_path() ? path.parent_path()
                                            : std::filesystem::path(".");
  std::unordered_set<std::string> seen_ids;

  for (const auto& item : doc["pairs"]) {
    if (!item.is_object())
      throw ManifestError(path.string(), "pair entry must be an object");
    PairEntry e;
    if (!item.contains("pairId") || !item["pairId"].is_string() ||
        item["pairId"].get<std::string>().empty())
      throw ManifestError(item.dump(), "missing or empty pairId");
    e.pairId = item["pairId"].get<std::string>();
    if (!seen_ids.insert(e.pairId).second)
      throw ManifestError(e.pairId, "duplicate pairId");

    if (!item.contains("datasetPath") || !item["datasetPath"].is_string() ||
        item["datasetPath"].get<std::string>().empty())
      throw ManifestError(e.pairId, "missing or empty datasetPath");
    e.datasetPath = item["datasetPath"].get<std::string>();

    if (!item.contains("keywords") || !item["keywords"].is_array())
      throw ManifestError(e.pairId, "missing keywords array");
    for (const auto& kw : item["keywords"]) {
      if (!kw.is_string() || kw.get<std::string>().empty())
        throw ManifestError(e.pairId, "keywords must be non-empty strings");
      std::string low = to_lower_ascii(kw.get<std::string>());
      bool dup = false;
      for (const std::string& k : e.keywords)
        if (k == low) { dup = true; break; }
      if (!dup) e.keywords.push_back(std::move(low));
    }
    if (e.keywords.empty())
      throw ManifestError(e.pairId, "keyword list must be non-empty");

    if (item.contains("group") && item["group"].is_string())
      e.group = item["group"].get<std::string>();
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

}  // namespace dsnip
