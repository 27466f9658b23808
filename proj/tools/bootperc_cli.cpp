// Command-line front end. Exit codes: 0 found/pass, 1 absent/fail,
// 2 refused, 3 diagnostic, 64 usage error, 65 data error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bootperc/bootperc.hpp"

namespace {

using namespace bootperc;

constexpr int kFound = 0;
constexpr int kAbsent = 1;
constexpr int kRefused = 2;
constexpr int kDiagnostic = 3;
constexpr int kUsage = 64;
constexpr int kData = 65;

struct Globals {
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t work_cap = kDefaultWorkCap;
};

std::vector<Vertex> parse_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw InvalidArgument("bad vertex '" + tok + "'");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::map<std::string, std::size_t> parse_params(const std::string& text) {
  std::map<std::string, std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw InvalidArgument("parameter '" + tok + "' is not key=value");
    out[tok.substr(0, eq)] = static_cast<std::size_t>(std::stoull(tok.substr(eq + 1)));
  }
  return out;
}

Json set_json(const std::optional<VertexSet>& s) { return s ? Json(s->to_vector()) : Json(nullptr); }

Json transcript_json(const Transcript& t) {
  Json arr = Json::array();
  for (const auto& e : t.entries()) arr.push_back(Json{{"level", to_string(e.level)}, {"step", e.step}, {"detail", e.detail}});
  return arr;
}

int status_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::found: return kFound;
    case SolveStatus::absent:
    case SolveStatus::exceeds_budget: return kAbsent;
    case SolveStatus::refused: return kRefused;
  }
  return kData;
}

int status_code(PipelineStatus s) {
  switch (s) {
    case PipelineStatus::found: return kFound;
    case PipelineStatus::refused: return kRefused;
    case PipelineStatus::diagnostic: return kDiagnostic;
  }
  return kData;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write '" + out + "'");
  f << j.dump(2) << '\n';
}

int cmd_simulate(const std::string& path, std::size_t r, const std::string& seed_set, const std::string& trace) {
  const Graph g = read_graph(path);
  const VertexSet a0 = VertexSet::from(g.order(), parse_list(seed_set));
  const PercolationTrace t = infection_trace(g, r, a0);
  if (trace == "json") {
    Json j;
    j["schema"] = "bootperc-trace/1";
    j["tool_version"] = kToolVersion;
    j["r"] = r;
    Json rounds = Json::array();
    for (const auto& s : t.rounds) rounds.push_back(s.to_vector());
    j["rounds"] = rounds;
    Json wit = Json::object();
    for (Vertex v = 0; v < g.order(); ++v)
      if (t.witnesses[v]) wit[std::to_string(v)] = t.witnesses[v]->to_vector();
    j["witnesses"] = wit;
    j["infected"] = t.infected().count();
    j["percolates"] = t.percolated();
    std::cout << j.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < t.rounds.size(); ++i) std::cout << "round " << i << ": " << t.rounds[i].to_string() << '\n';
    std::cout << "infected " << t.infected().count() << " of " << g.order() << '\n'
              << (t.percolated() ? "percolates" : "does not percolate") << '\n';
  }
  return t.percolated() ? kFound : kAbsent;
}

int cmd_solve(const Globals& gl, const std::string& path, std::size_t r, std::optional<std::size_t> l,
              const std::string& mode, bool symmetry) {
  const Graph g = read_graph(path);
  SolverOptions so;
  so.work_cap = gl.work_cap;
  so.jobs = gl.jobs;
  so.symmetry = symmetry;
  SolveResult s;
  if (mode == "min") {
    s = min_percolating_set_size(g, r, l, so);
  } else {
    if (!l) throw CLI::ValidationError("--l", "required for mode " + mode);
    s = mode == "exists" ? exists_percolating_set(g, r, *l, so) : all_sets_percolate(g, r, *l, so);
  }
  Json j;
  j["mode"] = mode;
  j["r"] = r;
  j["status"] = to_string(s.status);
  j["size"] = s.size ? Json(*s.size) : Json(nullptr);
  j["witness"] = set_json(s.witness);
  j["closures"] = s.closures;
  if (!s.message.empty()) j["message"] = s.message;
  std::cout << j.dump(2) << '\n';
  return status_code(s.status);
}

int cmd_construct(const Globals& gl, const std::string& family, const std::string& params, const std::string& out,
                  const std::string& audit_out, bool force) {
  ConstructionSpec spec;
  spec.family = parse_family(family);
  spec.params = parse_params(params);
  spec.rng_seed = gl.seed;
  spec.force = force;
  const Construction c = build_construction(spec);
  if (out.empty() || out == "-") {
    write_graph(c.graph, std::cout);
  } else {
    write_graph(c.graph, out);
  }
  Json j;
  j["schema"] = "bootperc-audit/1";
  j["tool_version"] = kToolVersion;
  j["family"] = c.family;
  Json p = Json::object();
  for (const auto& [k, v] : spec.params) p[k] = v;
  j["params"] = p;
  j["rng_seed"] = gl.seed;
  if (c.sides) j["left"] = c.sides->left.to_vector();
  if (c.seed) j["seed"] = c.seed->to_vector();
  Json entries = Json::array();
  for (const auto& e : c.audit.entries())
    entries.push_back(Json{{"name", e.name}, {"expected", e.expected}, {"actual", e.actual}, {"ok", e.ok}});
  j["audit"] = entries;
  if (!audit_out.empty()) {
    emit(j, audit_out);
  } else if (!out.empty() && out != "-") {
    std::cout << j.dump(2) << '\n';
  }
  return kFound;
}

int cmd_decompose(const Globals& gl, const std::string& path, std::size_t r, std::size_t l, long long slack) {
  const Graph g = read_graph(path);
  DecomposeOptions opt;
  opt.rng_seed = gl.seed;
  const DecomposeResult d = decompose(g, r, l, slack, opt);
  Json j;
  j["r"] = r;
  j["l"] = l;
  j["slack"] = slack;
  j["percolating"] = set_json(d.percolating);
  if (d.decomposition) {
    const auto& dd = *d.decomposition;
    j["decomposition"] = Json{{"A", dd.a.to_vector()},
                              {"C", dd.c.to_vector()},
                              {"i", dd.i},
                              {"i_c", dd.i_c},
                              {"iterations", dd.iterations},
                              {"checks_passed", dd.checks_passed}};
  } else {
    j["decomposition"] = nullptr;
  }
  j["transcript"] = transcript_json(d.transcript);
  std::cout << j.dump(2) << '\n';
  if (d.percolating) return kFound;
  return d.decomposition && d.decomposition->checks_passed ? kFound : kDiagnostic;
}

int cmd_find_seed(const Globals& gl, const std::string& path, std::size_t r, std::optional<std::size_t> l,
                  std::optional<std::size_t> k, const std::string& mode, bool force) {
  const Graph g = read_graph(path);
  PipelineOptions opt;
  opt.force = force;
  opt.work_cap = gl.work_cap;
  opt.rng_seed = gl.seed;
  PipelineResult p;
  if (mode == "stacked") {
    if (!k) throw CLI::ValidationError("--k", "required for mode stacked");
    p = find_percolating_set_stacked(g, r, *k, opt);
  } else {
    if (!l) throw CLI::ValidationError("--l", "required for mode " + mode);
    p = mode == "ore" ? find_percolating_set_ore(g, r, *l, opt) : find_percolating_set_big_l(g, r, *l, opt);
  }
  Json j;
  j["mode"] = mode;
  j["status"] = to_string(p.status);
  j["seed"] = set_json(p.seed);
  j["fired_case"] = p.fired_case;
  j["transcript"] = transcript_json(p.transcript);
  std::cout << j.dump(2) << '\n';
  return status_code(p.status);
}

int cmd_verify(const Globals& gl, const std::string& suite, const std::string& out, bool timing) {
  SuiteConfig cfg;
  cfg.rng_seed = gl.seed;
  cfg.jobs = gl.jobs;
  cfg.work_cap = gl.work_cap;
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    names.push_back(suite);
  }
  Json docs = Json::array();
  bool failed = false;
  for (const auto& name : names) {
    const ExperimentReport rep = run_suite(name, cfg);
    failed = failed || rep.any_fail();
    docs.push_back(to_json(rep, timing));
  }
  emit(docs.size() == 1 ? docs.front() : docs, out);
  return failed ? kAbsent : kFound;
}

int cmd_report(const std::vector<std::string>& inputs, bool json) {
  std::vector<ExperimentReport> results;
  for (const auto& path : inputs) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read '" + path + "'");
    Json j;
    try {
      j = Json::parse(f);
    } catch (const Json::parse_error& e) {
      throw FormatError(0, path + ": " + e.what());
    }
    if (j.is_array()) {
      for (const auto& item : j) results.push_back(report_from_json(item));
    } else {
      results.push_back(report_from_json(j));
    }
  }
  const auto rows = report_table(results);
  if (json) {
    std::cout << to_json(rows).dump(2) << '\n';
  } else {
    std::cout << render_table(rows);
  }
  return kFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bootperc: r-neighbour bootstrap percolation toolkit"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--jobs", gl.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", gl.seed, "RNG seed");
  app.add_option("--work-cap", gl.work_cap, "closure-evaluation budget for exhaustive search");

  std::string graph, seed_set, trace, mode = "min", family, params, out, audit_out, suite = "all";
  std::size_t r = 0;
  std::optional<std::size_t> l, k;
  long long slack = 0;
  bool symmetry = false, force = false, timing = false, json = false;
  std::vector<std::string> inputs;

  auto* sim = app.add_subcommand("simulate", "run the bootstrap process from a seed set");
  sim->add_option("--graph", graph)->required();
  sim->add_option("--r", r)->required();
  sim->add_option("--seed-set", seed_set)->required();
  sim->add_option("--trace", trace)->check(CLI::IsMember({"json"}));

  auto* solve = app.add_subcommand("solve", "exact minimum / existence / all-sets search");
  solve->add_option("--graph", graph)->required();
  solve->add_option("--r", r)->required();
  solve->add_option("--l", l);
  solve->add_option("--mode", mode)->check(CLI::IsMember({"min", "exists", "all"}));
  solve->add_flag("--symmetry", symmetry, "reduce by twin-class symmetry");

  auto* cons = app.add_subcommand("construct", "build a named construction");
  cons->add_option("--family", family)->required();
  cons->add_option("--params", params);
  cons->add_option("--out", out);
  cons->add_option("--audit", audit_out);
  cons->add_flag("--force", force, "skip parameter validation");

  auto* dec = app.add_subcommand("decompose", "closed-set decomposition");
  dec->add_option("--graph", graph)->required();
  dec->add_option("--r", r)->required();
  dec->add_option("--l", l)->required();
  dec->add_option("--slack", slack)->required();

  auto* find = app.add_subcommand("find-seed", "constructive percolating-set pipelines");
  find->add_option("--graph", graph)->required();
  find->add_option("--r", r)->required();
  find->add_option("--l", l);
  find->add_option("--k", k);
  find->add_option("--mode", mode)->required()->check(CLI::IsMember({"ore", "big-l", "stacked"}));
  find->add_flag("--force", force, "proceed when the degree condition fails");

  auto* ver = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  ver->add_option("--suite", suite)->check(CLI::IsMember(allowed));
  ver->add_option("--out", out);
  ver->add_flag("--timing", timing, "record runtimes (reports are then not bit-reproducible)");

  auto* rep = app.add_subcommand("report", "threshold table from suite reports");
  rep->add_option("inputs", inputs, "report files");
  rep->add_flag("--json", json, "machine-readable table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*sim) return cmd_simulate(graph, r, seed_set, trace);
    if (*solve) return cmd_solve(gl, graph, r, l, mode, symmetry);
    if (*cons) return cmd_construct(gl, family, params, out, audit_out, force);
    if (*dec) return cmd_decompose(gl, graph, r, *l, slack);
    if (*find) return cmd_find_seed(gl, graph, r, l, k, mode, force);
    if (*ver) return cmd_verify(gl, suite, out, timing);
    if (*rep) return cmd_report(inputs, json);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
