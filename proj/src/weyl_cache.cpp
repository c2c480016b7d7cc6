#include "ksr/weyl_cache.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <set>

#include "json.hpp"
#include "ksr/errors.hpp"

namespace ksr::rootdata {

namespace {

std::string sanitize(const std::string& key) {
  std::string out;
  for (char c : key) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

}  // namespace

std::optional<std::filesystem::path> WeylCache::directory_from_environment(bool enabled) {
  if (!enabled) return std::nullopt;
  if (const char* dir = std::getenv(kEnvVar); dir && *dir) return std::filesystem::path(dir);
  return std::nullopt;
}

std::filesystem::path WeylCache::file_for(const Subsystem& sub) const {
  return dir_.value_or(".") / ("weyl-" + sanitize(sub.signature()) + ".json");
}

bool validate_elements(const Subsystem& sub, const std::vector<WeylElement>& elems) {
  if (elems.empty() || elems.front().length() != 0) return false;
  const auto nsimple = static_cast<int>(sub.simple_roots().size());
  std::set<Weight> chambers;
  for (const auto& w : elems) {
    for (int i : w.word)
      if (i < 0 || i >= nsimple) return false;
    Weight image = sub.apply(w, sub.two_rho());
    if (!chambers.insert(image).second) return false;
    long inversions = 0;
    for (const auto& beta : sub.positive_roots())
      if (sub.ambient().pairing(image, beta) < 0) ++inversions;
    if (inversions != w.length()) return false;
  }
  for (const auto& image : chambers)
    for (std::size_t i = 0; i < sub.simple_roots().size(); ++i)
      if (!chambers.count(sub.reflect(image, i))) return false;
  return true;
}

std::optional<std::vector<WeylElement>> WeylCache::load(const Subsystem& sub) const {
  if (!dir_) return std::nullopt;
  const auto path = file_for(sub);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    auto doc = nlohmann::json::parse(in);
    if (doc.at("schema").get<int>() != kSchemaVersion) throw std::runtime_error("schema");
    if (doc.at("key").get<std::string>() != sub.signature()) throw std::runtime_error("key");
    std::vector<WeylElement> elems;
    for (const auto& word : doc.at("words")) elems.push_back(WeylElement{word.get<std::vector<int>>()});
    if (!validate_elements(sub, elems)) throw std::runtime_error("validation");
    return elems;
  } catch (const std::exception&) {
    std::lock_guard lock(stats_mutex_);
    ++stats_.rejected_files;
    return std::nullopt;
  }
}

void WeylCache::store(const Subsystem& sub, const std::vector<WeylElement>& elems) const {
  if (!dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  if (ec) return;
  nlohmann::json doc;
  doc["schema"] = kSchemaVersion;
  doc["key"] = sub.signature();
  doc["type"] = to_string(sub.ambient().type());
  doc["rank"] = sub.ambient().rank();
  doc["words"] = nlohmann::json::array();
  for (const auto& w : elems) doc["words"].push_back(w.word);
  const auto path = file_for(sub);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(this));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << doc.dump();
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

std::vector<WeylElement> WeylCache::elements(const Subsystem& sub) {
  const std::string key = sub.signature();
  {
    std::shared_lock lock(mutex_);
    if (auto it = memory_.find(key); it != memory_.end()) {
      std::lock_guard s(stats_mutex_);
      ++stats_.memory_hits;
      return it->second;
    }
  }
  std::vector<WeylElement> elems;
  if (auto loaded = load(sub)) {
    elems = std::move(*loaded);
    std::lock_guard s(stats_mutex_);
    ++stats_.disk_hits;
  } else {
    elems = sub.elements();
    if (elems.size() > kMaxOrder)
      throw OutOfScopeError("rootdata", "Weyl group of order " + std::to_string(elems.size()) + " is too large to list");
    store(sub, elems);
    std::lock_guard s(stats_mutex_);
    ++stats_.rebuilt;
  }
  std::unique_lock lock(mutex_);
  return memory_.emplace(key, std::move(elems)).first->second;
}

WeylCache::Stats WeylCache::stats() const {
  std::lock_guard s(stats_mutex_);
  return stats_;
}

}  // namespace ksr::rootdata
