#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgt/solver.hpp"
#include "dgt/strategy.hpp"

namespace dgt {

struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Semantics semantics_from_string(const std::string& s) {
  if (s == "exactly-k") return Semantics::ExactlyK;
  if (s == "at-least-k") return Semantics::AtLeastK;
  throw CacheError("unknown semantics '" + s + "'");
}

/// Cheapest guaranteed question count among the applicable strategies.
inline int best_strategy_bound(const Instance& inst) {
  int best = -1;
  for (const auto& s : all_strategies()) {
    if (!s->applicable(inst).ok) continue;
    int b = s->claimed_bound(inst);
    if (best < 0 || b < best) best = b;
  }
  if (best < 0) throw std::logic_error("no applicable strategy");  // refine is universal
  return best;
}

/// The invariant every stored value must satisfy.
inline bool sandwich_holds(const SolveRecord& rec) {
  Instance inst(rec.n, rec.k, Rational(rec.alpha_num, rec.alpha_den), rec.m, rec.semantics);
  return info_lower(rec.n, rec.k) <= rec.g && rec.g <= best_strategy_bound(inst);
}

inline std::string record_to_json_line(const SolveRecord& rec) {
  nlohmann::json j;
  j["n"] = rec.n;
  j["k"] = rec.k;
  j["alpha_num"] = rec.alpha_num;
  j["alpha_den"] = rec.alpha_den;
  j["m"] = rec.m;
  j["semantics"] = to_string(rec.semantics);
  j["g"] = rec.g;
  j["solver_version"] = rec.solver_version;
  return j.dump();
}

inline SolveRecord record_from_json_line(const std::string& line, long long lineno) {
  auto fail = [&](const std::string& what) -> CacheError {
    return CacheError("cache line " + std::to_string(lineno) + " rejected: " + what);
  };
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw fail("not a JSON object");
  SolveRecord rec;
  try {
    rec.n = j.at("n").get<int>();
    rec.k = j.at("k").get<int>();
    rec.alpha_num = j.at("alpha_num").get<long long>();
    rec.alpha_den = j.at("alpha_den").get<long long>();
    rec.m = j.at("m").get<int>();
    rec.semantics = semantics_from_string(j.at("semantics").get<std::string>());
    rec.g = j.at("g").get<int>();
    rec.solver_version = j.at("solver_version").get<std::string>();
  } catch (const CacheError& e) {
    throw fail(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  }
  try {
    if (!sandwich_holds(rec)) throw fail("value outside the proven bounds");
  } catch (const std::invalid_argument& e) {
    throw fail(std::string("invalid instance: ") + e.what());
  }
  return rec;
}

/// Loads and re-verifies every record; any corrupt line aborts the load.
inline std::vector<SolveRecord> load_cache(const std::string& path) {
  std::vector<SolveRecord> out;
  std::ifstream in(path);
  if (!in) return out;  // absent cache = empty cache
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    out.push_back(record_from_json_line(line, lineno));
  }
  return out;
}

inline void append_cache(const std::string& path, const SolveRecord& rec) {
  if (!sandwich_holds(rec)) throw CacheError("refusing to store a value outside the proven bounds");
  std::ofstream out(path, std::ios::app);
  if (!out) throw CacheError("cannot open cache file '" + path + "' for appending");
  out << record_to_json_line(rec) << '\n';
}

inline std::optional<SolveRecord> cache_lookup(const std::vector<SolveRecord>& cache,
                                               const Instance& inst) {
  for (const SolveRecord& r : cache)
    if (r.n == inst.n && r.k == inst.k && r.alpha_num == inst.alpha.num() &&
        r.alpha_den == inst.alpha.den() && r.m == inst.m && r.semantics == inst.semantics &&
        r.solver_version == kSolverVersion)
      return r;
  return std::nullopt;
}

}  // namespace dgt
