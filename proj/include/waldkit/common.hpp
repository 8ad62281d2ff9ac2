#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace waldkit {

using Key = std::vector<int>;
using json = nlohmann::ordered_json;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ k.size();
    for (int v : k) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

template <class V>
using KeyMap = std::unordered_map<Key, V, KeyHash>;

// Assigns dense ids to keys in insertion order.
class KeyIndex {
 public:
  int insert(const Key& k) {
    auto [it, fresh] = map_.emplace(k, static_cast<int>(keys_.size()));
    if (fresh) keys_.push_back(k);
    return it->second;
  }
  int find(const Key& k) const {
    auto it = map_.find(k);
    return it == map_.end() ? -1 : it->second;
  }
  const Key& key(int i) const { return keys_[i]; }
  const std::vector<Key>& keys() const { return keys_; }
  int size() const { return static_cast<int>(keys_.size()); }

 private:
  KeyMap<int> map_;
  std::vector<Key> keys_;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void charge(std::size_t used, std::size_t budget, const char* what) {
  if (used > budget) throw BudgetExceeded(std::string(what) + ": budget " + std::to_string(budget) + " exceeded");
}

struct Clause {
  std::string name;
  bool pass = true;
  std::string witness;
  bool evidence = false;
};

// A list of named checks. Evidence clauses never affect ok().
struct Report {
  std::vector<Clause> clauses;

  Clause& add(std::string name, bool pass, std::string witness = {}, bool evidence = false) {
    clauses.push_back({std::move(name), pass, std::move(witness), evidence});
    return clauses.back();
  }
  void merge(const Report& other, const std::string& prefix) {
    for (const auto& c : other.clauses) clauses.push_back({prefix + c.name, c.pass, c.witness, c.evidence});
  }
  bool ok() const {
    for (const auto& c : clauses)
      if (!c.evidence && !c.pass) return false;
    return true;
  }
  const Clause* first_failure() const {
    for (const auto& c : clauses)
      if (!c.evidence && !c.pass) return &c;
    return nullptr;
  }
  const Clause* find(const std::string& name) const {
    for (const auto& c : clauses)
      if (c.name == name) return &c;
    return nullptr;
  }
  json to_json() const {
    json out = json::object();
    for (const auto& c : clauses) {
      json e = {{"pass", c.pass}};
      if (!c.witness.empty()) e["witness"] = c.witness;
      if (c.evidence) e["evidence"] = true;
      out[c.name] = e;
    }
    return out;
  }
};

std::string join_ints(const std::vector<int>& v, const char* sep = ",");

// Monotone maps [n] -> [m] as value sequences, in lexicographic order.
std::vector<Key> monotone_maps(int n, int m);

// Number of worker threads; WALDKIT_THREADS overrides, default 1.
int thread_count();

// Runs body(i) for i in [0, n) on thread_count() workers.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace waldkit
