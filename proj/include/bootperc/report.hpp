#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/graph_io.hpp"
#include "json.hpp"

namespace bootperc {

inline constexpr const char* kReportSchema = "bootperc-report/1";
inline constexpr const char* kTableSchema = "bootperc-table/1";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

enum class Verdict { pass, fail, refused, diagnostic };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::refused: return "refused";
    case Verdict::diagnostic: return "diagnostic";
  }
  return "unknown";
}

inline Verdict parse_verdict(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "refused") return Verdict::refused;
  if (s == "diagnostic") return Verdict::diagnostic;
  throw FormatError(0, "unknown verdict '" + s + "'");
}

// Enough to replay a failing check standalone.
struct Witness {
  std::string graph;  // graph-file text
  std::vector<Vertex> seed;
  std::size_t r = 0;
};

inline Witness make_witness(const Graph& g, std::size_t r, const VertexSet& seed) {
  return {to_graph_text(g), seed.to_vector(), r};
}

struct CheckRecord {
  std::string name;
  std::string anchor;  // result the check exercises, or "plumbing"
  std::string expected;
  std::string actual;
  Verdict verdict = Verdict::fail;
  double runtime_ms = 0.0;
  std::optional<Witness> witness;
  std::vector<std::string> notes;
};

struct ExperimentReport {
  std::string suite;
  std::map<std::string, std::uint64_t> seeds;
  std::size_t jobs = 1;
  std::vector<CheckRecord> checks;

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.verdict == v; }));
  }
  bool any_fail() const { return count(Verdict::fail) > 0; }

  // Stable order for diffing: by check name.
  void normalise() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  }
};

inline Json to_json(const CheckRecord& c, bool timing) {
  Json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["expected"] = c.expected;
  j["actual"] = c.actual;
  j["verdict"] = to_string(c.verdict);
  if (timing) j["runtime_ms"] = c.runtime_ms;
  if (!c.notes.empty()) j["notes"] = c.notes;
  if (c.witness) {
    j["witness"] = Json{{"r", c.witness->r}, {"seed", c.witness->seed}, {"graph", c.witness->graph}};
  }
  return j;
}

// Runtimes are omitted unless `timing`, so reports are bit-identical across
// runs with the same seeds.
inline Json to_json(const ExperimentReport& r, bool timing = false) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  j["suite"] = r.suite;
  Json seeds = Json::object();
  for (const auto& [k, v] : r.seeds) seeds[k] = v;
  j["seeds"] = seeds;
  j["jobs"] = r.jobs;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c, timing));
  j["checks"] = checks;
  j["summary"] = Json{{"pass", r.count(Verdict::pass)},
                      {"fail", r.count(Verdict::fail)},
                      {"refused", r.count(Verdict::refused)},
                      {"diagnostic", r.count(Verdict::diagnostic)}};
  return j;
}

inline ExperimentReport report_from_json(const Json& j) {
  if (!j.is_object() || j.value("schema", "") != kReportSchema)
    throw FormatError(0, std::string("expected schema ") + kReportSchema);
  ExperimentReport r;
  r.suite = j.at("suite").get<std::string>();
  for (const auto& [k, v] : j.at("seeds").items()) r.seeds[k] = v.get<std::uint64_t>();
  r.jobs = j.at("jobs").get<std::size_t>();
  for (const auto& c : j.at("checks")) {
    CheckRecord rec;
    rec.name = c.at("name").get<std::string>();
    rec.anchor = c.at("anchor").get<std::string>();
    rec.expected = c.at("expected").get<std::string>();
    rec.actual = c.at("actual").get<std::string>();
    rec.verdict = parse_verdict(c.at("verdict").get<std::string>());
    rec.runtime_ms = c.value("runtime_ms", 0.0);
    if (c.contains("notes")) rec.notes = c.at("notes").get<std::vector<std::string>>();
    if (c.contains("witness")) {
      const auto& w = c.at("witness");
      rec.witness = Witness{w.at("graph").get<std::string>(), w.at("seed").get<std::vector<Vertex>>(),
                            w.at("r").get<std::size_t>()};
    }
    r.checks.push_back(std::move(rec));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Worker pool

// Runs every task once on up to `jobs` threads. The first exception (lowest
// task index) is rethrown after all threads join.
inline void run_tasks(const std::vector<std::function<void()>>& tasks, std::size_t jobs) {
  jobs = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Times `body`, which fills the record; exceptions become fail verdicts.
inline CheckRecord timed_check(std::string name, std::string anchor, const std::function<void(CheckRecord&)>& body) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.anchor = std::move(anchor);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(rec);
  } catch (const HypothesisFailure& e) {
    rec.verdict = Verdict::diagnostic;
    rec.actual = e.what();
  } catch (const std::exception& e) {
    rec.verdict = Verdict::fail;
    rec.actual = std::string("exception: ") + e.what();
  }
  rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// ---------------------------------------------------------------------------
// Extremal-threshold table

struct TableRow {
  std::string quantity;  // "D_0(n,r)" or "delta_0(n,r,l)"
  std::string regime;
  std::string value;
  std::string lower_check;  // suite + verdict backing the construction side
  std::string upper_check;  // suite + verdict backing the pipeline side
};

namespace detail {

inline std::string suite_status(const std::vector<ExperimentReport>& results, const std::string& suite) {
  for (const auto& r : results) {
    if (r.suite != suite) continue;
    if (r.any_fail()) return suite + ": fail";
    if (r.count(Verdict::pass) == 0) return suite + ": no passing checks";
    return suite + ": pass (" + std::to_string(r.count(Verdict::pass)) + "/" + std::to_string(r.checks.size()) + ")";
  }
  return "unchecked";
}

}  // namespace detail

// The known values of the extremal thresholds, each annotated with the
// suites (if present in `results`) that machine-checked one side of it.
// Empty input gives an empty table.
inline std::vector<TableRow> report_table(const std::vector<ExperimentReport>& results) {
  std::vector<TableRow> rows;
  if (results.empty()) return rows;
  auto st = [&](const std::string& s) { return detail::suite_status(results, s); };
  rows.push_back({"D_0(n,r)", "r in {1,2}", "n-1", "unchecked", "unchecked"});
  rows.push_back({"D_0(n,r)", "r in {3,4}, 3 | n when r = 4", "n+r-2", st("big-l-exact"), st("big-l-pipeline")});
  rows.push_back({"D_0(n,r)", "r >= 5, n even", "n+2r-7", st("ore-tightness-structure"), st("ore-pipeline")});
  rows.push_back({"D_0(n,r,l)", "l >= r, 2r >= l+2f(l-r)-1", "<= n+4r-2l-2f(l-r)-1", "unchecked", st("ore-pipeline")});
  rows.push_back({"D_0(n,r,l)", "l-r+2f(l-r)-2 >= r >= l-r+2", "<= n+2r-l-2", st("big-l-exact"), st("big-l-pipeline")});
  rows.push_back({"delta_0(n,r,l)", "r <= l <= 2r-3, 3r >= 2l+2f(l-r)+4", "floor(n/2)+2r-l-f(l-r)",
                  st("ore-tightness-structure"), st("ore-pipeline")});
  rows.push_back({"delta_0(n,r,l)", "2(l-r)+f(l-r)+3 >= r >= l-r+2f(l-r)-1",
                  "floor(n/2)+2r-l-f(l-r)-1-d, d in {0,1}", "unchecked", st("ore-pipeline")});
  rows.push_back({"delta_0(n,r,l)", "l-r+2f(l-r)-2 >= r >= l-r+3", "<= (n+2r-l-2)/2", "unchecked", st("big-l-pipeline")});
  rows.push_back({"min degree forcing every l-set to percolate", "2r-2 >= l >= r, n >= 2l", "n-ceil((l-r+1)n/l)+l-r+1",
                  st("two-clique-tightness"), st("two-clique-tightness")});
  return rows;
}

inline Json to_json(const std::vector<TableRow>& rows) {
  Json j;
  j["schema"] = kTableSchema;
  j["tool_version"] = kToolVersion;
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back(Json{{"quantity", r.quantity},
                       {"regime", r.regime},
                       {"value", r.value},
                       {"lower_check", r.lower_check},
                       {"upper_check", r.upper_check}});
  j["rows"] = arr;
  return j;
}

inline std::string render_table(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows)
    os << r.quantity << " | " << r.regime << " | " << r.value << " | lower: " << r.lower_check
       << " | upper: " << r.upper_check << '\n';
  return os.str();
}

}  // namespace bootperc
