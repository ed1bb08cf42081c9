// gtlab: command-line laboratory for threshold group testing experiments.
//
// Subcommands: run, verify, bounds, solve, heaps, scan.  All randomness is
// seeded and platform-independent, so identical invocations print identical
// bytes.  Exit codes: 0 = all checks passed, 1 = a verified violation,
// 2 = usage error or infeasible request.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgt/adversary.hpp"
#include "dgt/bounds.hpp"
#include "dgt/cache.hpp"
#include "dgt/heaps.hpp"
#include "dgt/scan.hpp"
#include "dgt/solver.hpp"
#include "dgt/strategy.hpp"

namespace {

using namespace dgt;

// ---------------------------------------------------------------------------
// Rendering: one row model, three renderings with identical records/order.
// ---------------------------------------------------------------------------
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const Table& t, const std::string& format) {
  if (format == "jsonl") {
    for (const auto& row : t.rows) {
      nlohmann::json j = nlohmann::json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) j[t.header[i]] = row[i];
      std::cout << j.dump() << "\n";
    }
    return;
  }
  if (format == "csv") {
    auto line = [](const std::vector<std::string>& cells) {
      std::string out;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += csv_quote(cells[i]);
      }
      return out;
    };
    std::cout << line(t.header) << "\n";
    for (const auto& row : t.rows) std::cout << line(row) << "\n";
    return;
  }
  std::vector<std::size_t> width(t.header.size());
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += "  ";
      out += cells[i];
      if (i + 1 < cells.size()) out += std::string(width[i] - cells[i].size(), ' ');
    }
    return out;
  };
  std::cout << line(t.header) << "\n";
  for (const auto& row : t.rows) std::cout << line(row) << "\n";
}

std::string yn(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Shared flag bundles
// ---------------------------------------------------------------------------
struct InstanceFlags {
  int n = 0, k = 0, m = 1;
  std::string alpha_text;
  std::string semantics = "exactly-k";

  Instance make() const {
    Rational alpha = Rational::parse(alpha_text);
    return Instance(n, k, alpha, m, semantics_from_string(semantics));
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "ground set size")->required();
    cmd->add_option("--k", k, "defective count")->required();
    cmd->add_option("--alpha", alpha_text, "threshold as NUM/DEN (decimals rejected)")->required();
    cmd->add_option("--m", m, "defectives to find (default 1)");
  }
};

struct RangeFlags {
  int n = -1, n_lo = -1, n_hi = -1;
  int k = -1, k_lo = -1, k_hi = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "single n");
    cmd->add_option("--n-lo", n_lo, "range start for n");
    cmd->add_option("--n-hi", n_hi, "range end for n (inclusive)");
    cmd->add_option("--k", k, "single k");
    cmd->add_option("--k-lo", k_lo, "range start for k");
    cmd->add_option("--k-hi", k_hi, "range end for k (inclusive)");
  }

  std::pair<int, int> n_range() const {
    if (n > 0) return {n, n};
    if (n_lo > 0 && n_hi >= n_lo) return {n_lo, n_hi};
    throw CLI::ValidationError("--n or --n-lo/--n-hi required");
  }
  std::pair<int, int> k_range() const {
    if (k > 0) return {k, k};
    if (k_lo > 0 && k_hi >= k_lo) return {k_lo, k_hi};
    throw CLI::ValidationError("--k or --k-lo/--k-hi required");
  }
};

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------
int cmd_run(const InstanceFlags& flags, const std::string& strategy_id,
            const std::string& adversary_id, std::optional<long long> threshold,
            const std::string& format) {
  Instance inst = flags.make();
  auto strat = make_strategy(strategy_id);
  Applicability ap = strat->applicable(inst);
  if (!ap.ok) {
    std::cerr << "strategy not applicable: " << ap.reason << "\n";
    return 2;
  }

  Table t;
  t.header = {"query", "size", "set", "answer"};
  Transcript transcript(inst);
  auto record = [&](const ElementSet& q, const std::string& ans) {
    transcript.record(q, ans == "yes" ? Answer::Yes : Answer::No);
    t.add({std::to_string(transcript.size()), std::to_string(q.size()), q.str(), ans});
  };

  ElementSet found(inst.n);
  bool certified = true;
  std::string summary;

  if (adversary_id == "lazy") {
    LazyAdversary adv(inst);
    while (true) {
      StrategyDecision dec = strat->decide(transcript);
      if (dec.is_output()) {
        found = dec.set;
        break;
      }
      record(dec.set, to_string(adv.answer(dec.set)));
    }
    for (const ElementSet& c : adv.candidates())
      if (!found.subset_of(c)) certified = false;
    summary = "output " + found.str() + " certified=" + yn(certified);
  } else if (adversary_id == "weight") {
    WeightAdversary adv(inst, threshold);
    while (true) {
      StrategyDecision dec = strat->decide(transcript);
      if (dec.is_output()) {
        found = dec.set;
        summary = "output " + found.str() + " (no phase-1 end signal)";
        break;
      }
      auto ans = adv.answer(dec.set);
      if (!ans) {
        summary = "phase 1 over after " + std::to_string(adv.asked_count()) +
                  " questions; live pool " + std::to_string(adv.live_set().size());
        break;
      }
      record(dec.set, to_string(*ans));
    }
  } else if (adversary_id.rfind("hidden:", 0) == 0) {
    std::uint64_t seed = std::stoull(adversary_id.substr(7));
    Rng rng(seed);
    int sz = inst.semantics == Semantics::ExactlyK
                 ? inst.k
                 : inst.k + static_cast<int>(rng.below(
                                static_cast<std::uint64_t>(inst.n - inst.k + 1)));
    ElementSet hidden = random_subset(rng, inst.n, sz);
    while (true) {
      StrategyDecision dec = strat->decide(transcript);
      if (dec.is_output()) {
        found = dec.set;
        break;
      }
      record(dec.set, to_string(oracle_answer(dec.set, hidden, inst.alpha)));
    }
    certified = found.size() == inst.m && found.subset_of(hidden);
    summary = "hidden " + hidden.str() + " output " + found.str() + " correct=" + yn(certified);
  } else {
    std::cerr << "unknown adversary '" << adversary_id << "' (lazy | weight | hidden:<seed>)\n";
    return 2;
  }

  render(t, format);
  std::cout << "queries " << transcript.size() << "; " << summary << "\n";
  return certified ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------
int cmd_verify(const RangeFlags& range, const std::string& alpha_text, int m,
               const std::string& strategy_id, std::uint64_t hidden_seed, int samples, int jobs,
               const std::string& format) {
  Rational alpha = Rational::parse(alpha_text);
  auto strat = make_strategy(strategy_id);
  auto [n_lo, n_hi] = range.n_range();
  auto [k_lo, k_hi] = range.k_range();
  VerifyMode mode = samples > 0 ? VerifyMode::hidden(hidden_seed, samples) : VerifyMode::exhaustive();

  Table t;
  t.header = {"n", "k", "alpha", "m", "strategy", "sims", "worst", "claimed", "correct", "bound", "sizes", "status"};
  bool violation = false;
  for (int n = n_lo; n <= n_hi; ++n)
    for (int k = std::max(1, k_lo); k <= std::min(k_hi, n); ++k) {
      if (m > k) continue;
      std::vector<std::string> row = {std::to_string(n), std::to_string(k), alpha.str(),
                                      std::to_string(m), strategy_id};
      Instance inst(n, k, alpha, m);
      Applicability ap = strat->applicable(inst);
      if (!ap.ok) {
        row.insert(row.end(), {"-", "-", "-", "-", "-", "-", "skipped: " + ap.reason});
        t.add(row);
        continue;
      }
      try {
        VerifyReport rep = verify_strategy(*strat, inst, mode, jobs);
        bool ok = rep.correctness_ok && rep.bound_ok && rep.query_sizes_ok;
        if (!ok) violation = true;
        row.insert(row.end(),
                   {std::to_string(rep.simulations), std::to_string(rep.worst_queries),
                    std::to_string(strat->claimed_bound(inst)), yn(rep.correctness_ok),
                    yn(rep.bound_ok), yn(rep.query_sizes_ok), ok ? "ok" : rep.failure});
      } catch (const EnumerationCapExceeded& e) {
        row.insert(row.end(), {"-", "-", "-", "-", "-", "-", std::string("skipped: ") + e.what()});
      }
      t.add(row);
    }
  render(t, format);
  return violation ? 1 : 0;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------
int cmd_bounds(const InstanceFlags& flags, const std::string& format) {
  Instance inst = flags.make();
  Table t;
  t.header = {"bound", "kind", "applicable", "value", "condition", "note"};
  auto reports = theorem_bounds(inst);
  for (const auto& r : reports)
    t.add({r.name, to_string(r.kind), yn(r.applicable),
           r.value ? std::to_string(*r.value) : "-", r.condition, r.note});
  render(t, format);
  return bounds_consistent(reports) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------
int cmd_solve(const InstanceFlags& flags, std::optional<int> budget, bool no_symmetry,
              const std::string& cache_path, bool first_moves, const std::string& format) {
  Instance inst = flags.make();
  SolveOptions opt;
  opt.symmetry = !no_symmetry;
  opt.budget = budget;

  Table t;
  t.header = {"n", "k", "alpha", "m", "semantics", "g", "status", "cached", "solver_version"};

  std::optional<SolveRecord> rec;
  bool cached = false;
  if (!cache_path.empty()) {
    auto hit = cache_lookup(load_cache(cache_path), inst);
    if (hit) {
      rec = *hit;
      cached = true;
    }
  }
  std::string status = "exact";
  if (!rec) {
    ExactSolver solver(inst, opt);
    SolveOutcome out = solver.run();
    if (!out.exact()) {
      t.add({std::to_string(inst.n), std::to_string(inst.k), inst.alpha.str(),
             std::to_string(inst.m), to_string(inst.semantics), "-",
             "g > " + std::to_string(out.value), "no", kSolverVersion});
      render(t, format);
      return 0;
    }
    rec = SolveRecord{inst.n, inst.k, inst.alpha.num(), inst.alpha.den(),
                      inst.m, inst.semantics, out.value, kSolverVersion};
    if (!cache_path.empty()) append_cache(cache_path, *rec);
  }
  t.add({std::to_string(rec->n), std::to_string(rec->k), inst.alpha.str(), std::to_string(rec->m),
         to_string(rec->semantics), std::to_string(rec->g), status, yn(cached),
         rec->solver_version});
  render(t, format);

  if (first_moves) {
    ExactSolver solver(inst, opt);
    for (const ElementSet& q : solver.optimal_first_moves())
      std::cout << "opening size " << q.size() << ": " << q.str() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// heaps
// ---------------------------------------------------------------------------
HeapConfig random_heap_config(int k, int l, int beta, int a, std::uint64_t seed) {
  HeapConfig cfg{k, l, beta, a, {}};
  const int n = static_cast<int>(cfg.ground_size());
  Rng rng(seed);
  std::vector<int> used(static_cast<std::size_t>(n), 0);
  int nsets = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * k * l + 4)));
  for (int s = 0; s < nsets; ++s) {
    ElementSet f(n);
    int want = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(beta * a)));
    for (int tries = 0; tries < 6 * want && f.size() < want; ++tries) {
      int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (used[static_cast<std::size_t>(e)] < l && !f.test(e)) {
        f.insert(e);
        ++used[static_cast<std::size_t>(e)];
      }
    }
    if (!f.empty()) cfg.family.push_back(f);
  }
  return cfg;
}

int cmd_heaps(int k, int l, int beta, int a, std::uint64_t seed, const std::string& format) {
  HeapConfig cfg = random_heap_config(k, l, beta, a, seed);
  HeapResult res = select_heaps(cfg);
  auto viol = heap_violations(cfg.family, res.heaps, static_cast<long long>(beta) * a);

  Table t;
  t.header = {"heap", "size", "set"};
  for (std::size_t i = 0; i < res.heaps.size(); ++i)
    t.add({std::to_string(i), std::to_string(res.heaps[i].size()), res.heaps[i].str()});
  render(t, format);
  std::cout << "family " << cfg.family.size() << " sets; iterations " << res.iterations
            << " (max " << k * l - 1 << "); postconditions " << (viol.empty() ? "ok" : "VIOLATED")
            << "\n";
  for (const auto& v : viol) std::cout << "violation: " << v << "\n";
  return viol.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------
int cmd_scan(const std::string& conjecture, const RangeFlags& range, const std::string& alpha_text,
             int m, const std::string& format) {
  ScanGrid grid{0, 0, 1, 0, Rational::parse(alpha_text), m};
  auto [n_lo, n_hi] = range.n_range();
  grid.n_lo = n_lo;
  grid.n_hi = n_hi;
  if (range.k > 0 || range.k_lo > 0) {
    auto [k_lo, k_hi] = range.k_range();
    grid.k_lo = k_lo;
    grid.k_hi = k_hi;
  } else {
    grid.k_lo = 1;
    grid.k_hi = 1;
  }

  auto findings = scan_conjecture(conjecture_from_string(conjecture), grid);
  Table t;
  t.header = {"conjecture", "instance", "status", "detail"};
  bool violated = false;
  for (const auto& f : findings) {
    t.add({f.conjecture, f.instance, f.status, f.detail});
    violated = violated || f.violated;
  }
  render(t, format);
  return violated ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"threshold group testing laboratory"};
  app.require_subcommand(1);

  std::string format = "table";
  int jobs = 1;
  std::string cache_path;
  app.add_option("--format", format, "table | csv | jsonl")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}));
  app.add_option("--jobs", jobs, "worker threads for simulation fan-out");
  app.add_option("--cache", cache_path, "JSONL solve-record cache file");

  InstanceFlags run_inst;
  std::string run_strategy, run_adversary = "lazy";
  long long run_threshold = -1;
  auto* run = app.add_subcommand("run", "play one strategy against one adversary");
  run_inst.attach(run);
  run->add_option("--strategy", run_strategy, "strategy id")->required();
  run->add_option("--adversary", run_adversary, "lazy | weight | hidden:<seed>");
  run->add_option("--threshold", run_threshold, "weight adversary phase-end threshold override");

  RangeFlags verify_range;
  std::string verify_alpha, verify_strategy_id;
  int verify_m = 1, verify_samples = 0;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "simulate a strategy over an instance grid");
  verify_range.attach(verify);
  verify->add_option("--alpha", verify_alpha, "threshold as NUM/DEN")->required();
  verify->add_option("--m", verify_m, "defectives to find");
  verify->add_option("--strategy", verify_strategy_id, "strategy id")->required();
  verify->add_option("--samples", verify_samples, "sampled hidden sets instead of exhaustive");
  verify->add_option("--seed", verify_seed, "seed for sampled hidden sets");

  InstanceFlags bounds_inst;
  auto* bounds = app.add_subcommand("bounds", "closed-form bounds for one instance");
  bounds_inst.attach(bounds);

  InstanceFlags solve_inst;
  int solve_budget = -1;
  bool no_symmetry = false, first_moves = false;
  auto* solve = app.add_subcommand("solve", "exact minimax value of one instance");
  solve_inst.attach(solve);
  solve->add_option("--budget", solve_budget, "stop after proving g > budget");
  solve->add_flag("--no-symmetry", no_symmetry, "disable symmetry reduction");
  solve->add_flag("--first-moves", first_moves, "also list optimal opening questions");

  int heaps_k = 0, heaps_l = 0, heaps_beta = 0, heaps_a = 0;
  std::uint64_t heaps_seed = 1;
  auto* heaps = app.add_subcommand("heaps", "heap selection on a seeded random set system");
  heaps->add_option("--k", heaps_k, "number of heaps")->required();
  heaps->add_option("--l", heaps_l, "max sets per element")->required();
  heaps->add_option("--beta", heaps_beta, "heap size factor")->required();
  heaps->add_option("--a", heaps_a, "base size a")->required();
  heaps->add_option("--seed", heaps_seed, "family generator seed");

  RangeFlags scan_range;
  std::string scan_conj, scan_alpha;
  int scan_m = 1;
  auto* scan = app.add_subcommand("scan", "sweep a conjecture over a grid");
  scan->add_option("--conjecture", scan_conj,
                   "sej1 | integer-step | monotone-n | monotone-k | exact-vs-atleast")
      ->required();
  scan_range.attach(scan);
  scan->add_option("--alpha", scan_alpha, "threshold as NUM/DEN")->required();
  scan->add_option("--m", scan_m, "defectives to find");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run)
      return cmd_run(run_inst, run_strategy, run_adversary,
                     run_threshold >= 0 ? std::optional<long long>(run_threshold) : std::nullopt,
                     format);
    if (*verify)
      return cmd_verify(verify_range, verify_alpha, verify_m, verify_strategy_id, verify_seed,
                        verify_samples, jobs, format);
    if (*bounds) return cmd_bounds(bounds_inst, format);
    if (*solve)
      return cmd_solve(solve_inst, solve_budget >= 0 ? std::optional<int>(solve_budget) : std::nullopt,
                       no_symmetry, cache_path, first_moves, format);
    if (*heaps) return cmd_heaps(heaps_k, heaps_l, heaps_beta, heaps_a, heaps_seed, format);
    if (*scan) return cmd_scan(scan_conj, scan_range, scan_alpha, scan_m, format);
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return 2;
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
