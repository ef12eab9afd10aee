#include "revline/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <mutex>
#include <sstream>

#include "corpus_texts.hpp"
#include "revline/parse.hpp"
#include "revline/verify.hpp"

namespace revline {

std::string to_string(Problem::Kind k) {
  switch (k) {
    case Problem::Kind::Prove: return "prove";
    case Problem::Kind::ModelSearch: return "model-search";
    case Problem::Kind::CheckScript: return "check-script";
  }
  return "?";
}

std::string to_string(Problem::Expected e) {
  switch (e) {
    case Problem::Expected::Refutation: return "refutation";
    case Problem::Expected::Saturated: return "saturated";
    case Problem::Expected::Found: return "found";
    case Problem::Expected::Exhausted: return "exhausted";
    case Problem::Expected::ScriptOk: return "ok";
    case Problem::Expected::None: return "none";
  }
  return "?";
}

const Problem& Registry::problem(const std::string& name) const {
  auto it = problems.find(name);
  if (it == problems.end()) throw Error("unknown problem '" + name + "'");
  return it->second;
}

const NDScript& Registry::script(const std::string& name) const {
  auto it = scripts.find(name);
  if (it == scripts.end()) throw Error("unknown script '" + name + "'");
  return it->second;
}

Formula Registry::axiom(const std::string& name) const {
  auto it = axioms.find(name);
  if (it == axioms.end()) throw Error("unknown axiom '" + name + "'");
  return it->second;
}

std::vector<std::string> Registry::scripts_in_dependency_order() const {
  std::vector<std::string> order;
  std::set<std::string> done, visiting;
  std::function<void(const std::string&)> visit = [&](const std::string& name) {
    if (done.count(name)) return;
    if (!visiting.insert(name).second)
      throw Error("script dependency cycle through '" + name + "'");
    auto it = scripts.find(name);
    if (it != scripts.end())
      for (const std::string& dep : it->second.uses) visit(dep);
    visiting.erase(name);
    done.insert(name);
    if (scripts.count(name)) order.push_back(name);
  };
  for (const auto& [name, s] : scripts) visit(name);
  return order;
}

void Registry::validate() const {
  sig.validate();
  scripts_in_dependency_order();  // throws on cycles
  for (const auto& [name, p] : problems) {
    if (p.kind == Problem::Kind::Prove && !p.goal)
      throw Error("prove problem '" + name + "' has no goal");
    for (const auto& [an, af] : p.axioms)
      if (!is_closed(af))
        throw Error("axiom '" + an + "' of '" + name + "' is not closed");
    if (p.goal && !is_closed(*p.goal))
      throw Error("goal of '" + name + "' is not closed");
  }
  for (const auto& [name, s] : scripts) {
    if (!problems.count(s.problem))
      throw Error("script '" + name + "' references unknown problem '" +
                  s.problem + "'");
    for (const std::string& dep : s.uses)
      if (!scripts.count(dep))
        throw Error("script '" + name + "' uses unknown lemma '" + dep + "'");
  }
}

// ---------------------------------------------------------------------------
// Built-in corpus

Registry load_corpus() {
  Registry reg;
  reg.sig = Signature::corpus();

  auto parse = [&](const char* text) {
    return parse_formula(text, reg.sig, reg.defs);
  };

  reg.defs.push_back(
      DefinedPredicate{"Con", {"l", "m"}, parse(corpus_texts::kConBody)});

  using namespace corpus_texts;
  reg.axioms.emplace("I.5", parse(kI5));
  reg.axioms.emplace("I.6", parse(kI6));
  reg.axioms.emplace("I.7", parse(kI7));
  reg.axioms.emplace("I.8", parse(kI8));
  reg.axioms.emplace("SYM", parse(kSym));
  reg.axioms.emplace("w1", parse(kW1));
  reg.axioms.emplace("w2", parse(kW2));
  reg.axioms.emplace("w3", parse(kW3));
  reg.axioms.emplace("w4", parse(kW4));

  auto named = [&](std::initializer_list<const char*> names) {
    std::vector<std::pair<std::string, Formula>> out;
    for (const char* n : names) out.emplace_back(n, reg.axiom(n));
    return out;
  };

  auto prove_problem = [&](const std::string& name,
                           std::initializer_list<const char*> axiom_names,
                           Formula goal, const std::string& logic) {
    Problem p;
    p.name = name;
    p.kind = Problem::Kind::Prove;
    p.logic = logic;
    p.axioms = named(axiom_names);
    p.goal = std::move(goal);
    p.expected = Problem::Expected::Refutation;
    reg.problems.emplace(name, std::move(p));
  };

  prove_problem("G0", {"I.5", "I.6"}, parse(kG0Goal), "constructive");
  prove_problem("G1", {"I.6"}, reg.axiom("w1"), "constructive");
  prove_problem("G2", {"I.6"}, reg.axiom("w4"), "constructive");
  prove_problem("G3", {"I.5", "I.6", "SYM"}, reg.axiom("w2"), "constructive");
  prove_problem("G4", {"I.5", "I.6", "SYM"}, reg.axiom("w3"), "constructive");
  prove_problem("G5", {"I.5", "I.6", "SYM"}, reg.axiom("I.7"), "constructive");
  prove_problem("G6", {"I.5", "I.6", "I.8", "w2"}, reg.axiom("SYM"),
                "constructive");
  prove_problem("G7", {"I.5", "I.6", "I.7", "I.8"}, reg.axiom("SYM"),
                "classical");

  // the rewrite of the convergence axiom as the w family, as one biconditional
  {
    std::string text = std::string("(") + kI7 + ") <-> (" + kW1 + ") & (" +
                       kW2 + ") & (" + kW3 + ") & (" + kW4 + ")";
    Problem p;
    p.name = "G8";
    p.kind = Problem::Kind::Prove;
    p.logic = "classical";
    p.goal = parse_formula(text, reg.sig, reg.defs);
    p.expected = Problem::Expected::Refutation;
    reg.problems.emplace("G8", std::move(p));
  }

  auto model_problem = [&](const std::string& name,
                           std::initializer_list<const char*> sat,
                           std::initializer_list<const char*> fal, int lo,
                           int hi) {
    Problem p;
    p.name = name;
    p.kind = Problem::Kind::ModelSearch;
    p.logic = "classical";
    for (const char* n : sat) p.satisfy.push_back(n);
    for (const char* n : fal) p.falsify.push_back(n);
    p.axioms = named(sat);
    for (const char* n : fal) p.axioms.emplace_back(n, reg.axiom(n));
    p.min_size = lo;
    p.max_size = hi;
    p.expected = Problem::Expected::Found;
    reg.problems.emplace(name, std::move(p));
  };

  model_problem("M1", {"I.5", "I.6", "I.7", "I.8", "SYM"}, {}, 1, 4);
  model_problem("M2", {"I.5"}, {"I.6"}, 1, 2);
  model_problem("M3", {"I.5", "I.6", "I.8"}, {"SYM"}, 1, 3);

  for (NDScript& s : bundled_scripts(reg.sig, reg.defs))
    reg.scripts.emplace(s.name, std::move(s));

  reg.validate();
  return reg;
}

// ---------------------------------------------------------------------------
// Problem files

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Problem::Expected expected_from(const std::string& s) {
  if (s == "refutation") return Problem::Expected::Refutation;
  if (s == "saturated") return Problem::Expected::Saturated;
  if (s == "found") return Problem::Expected::Found;
  if (s == "exhausted") return Problem::Expected::Exhausted;
  if (s == "ok") return Problem::Expected::ScriptOk;
  if (s == "none") return Problem::Expected::None;
  throw Error("problem: unknown expectation '" + s + "'");
}

}  // namespace

Problem parse_problem_text(const std::string& text, const Signature& sig,
                           const std::vector<DefinedPredicate>& defs,
                           const std::map<std::string, Formula>& fallback_axioms) {
  Problem p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  auto resolve = [&](const std::string& name) -> Formula {
    for (const auto& [an, af] : p.axioms)
      if (an == name) return af;
    auto it = fallback_axioms.find(name);
    if (it == fallback_axioms.end())
      throw Error("problem: '" + name + "' is not a declared axiom");
    return it->second;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    try {
      auto starts = [&](const char* kw) {
        size_t n = std::string(kw).size();
        return line.rfind(kw, 0) == 0 &&
               (line.size() == n || line[n] == ' ' || line[n] == '\t');
      };
      if (starts("problem")) {
        p.name = trim(line.substr(7));
      } else if (starts("kind")) {
        std::string k = trim(line.substr(4));
        if (k == "prove") p.kind = Problem::Kind::Prove;
        else if (k == "model-search") p.kind = Problem::Kind::ModelSearch;
        else if (k == "check-script") p.kind = Problem::Kind::CheckScript;
        else throw Error("problem: unknown kind '" + k + "'");
      } else if (starts("logic")) {
        p.logic = trim(line.substr(5));
      } else if (starts("axiom")) {
        std::string body = trim(line.substr(5));
        auto colon = body.find(':');
        if (colon == std::string::npos)
          throw Error("problem: axiom line needs '<name>: <formula>'");
        std::string name = trim(body.substr(0, colon));
        Formula f = parse_formula(body.substr(colon + 1), sig, defs);
        p.axioms.emplace_back(name, std::move(f));
      } else if (starts("goal")) {
        p.goal = parse_formula(line.substr(4), sig, defs);
      } else if (starts("satisfy")) {
        for (const std::string& n : split_commas(line.substr(7)))
          p.satisfy.push_back(n);
      } else if (starts("falsify")) {
        for (const std::string& n : split_commas(line.substr(7)))
          p.falsify.push_back(n);
      } else if (starts("sizes")) {
        std::string body = trim(line.substr(5));
        auto dots = body.find("..");
        if (dots == std::string::npos)
          throw Error("problem: sizes must be '<lo>..<hi>'");
        p.min_size = std::stoi(body.substr(0, dots));
        p.max_size = std::stoi(body.substr(dots + 2));
      } else if (starts("script")) {
        p.script_ref = trim(line.substr(6));
      } else if (starts("expect")) {
        p.expected = expected_from(trim(line.substr(6)));
      } else {
        throw Error("problem: unrecognized line '" + line + "'");
      }
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
    }
  }
  if (p.name.empty()) throw Error("problem: missing 'problem <name>' header");
  // satisfy/falsify names must resolve; keep the resolved formulas as axioms
  for (const std::string& n : p.satisfy) {
    bool declared = std::any_of(p.axioms.begin(), p.axioms.end(),
                                [&](const auto& a) { return a.first == n; });
    if (!declared) p.axioms.emplace_back(n, resolve(n));
  }
  for (const std::string& n : p.falsify) {
    bool declared = std::any_of(p.axioms.begin(), p.axioms.end(),
                                [&](const auto& a) { return a.first == n; });
    if (!declared) p.axioms.emplace_back(n, resolve(n));
  }
  return p;
}

std::string to_string(const Problem& p) {
  std::ostringstream out;
  out << "problem " << p.name << "\n";
  out << "kind " << to_string(p.kind) << "\n";
  if (!p.logic.empty()) out << "logic " << p.logic << "\n";
  for (const auto& [name, f] : p.axioms)
    out << "axiom " << name << ": " << to_string(f) << "\n";
  if (p.goal) out << "goal " << to_string(*p.goal) << "\n";
  auto list = [&](const char* kw, const std::vector<std::string>& names) {
    if (names.empty()) return;
    out << kw << " ";
    for (size_t i = 0; i < names.size(); ++i) {
      if (i) out << ", ";
      out << names[i];
    }
    out << "\n";
  };
  list("satisfy", p.satisfy);
  list("falsify", p.falsify);
  if (p.kind == Problem::Kind::ModelSearch)
    out << "sizes " << p.min_size << ".." << p.max_size << "\n";
  if (!p.script_ref.empty()) out << "script " << p.script_ref << "\n";
  if (p.expected != Problem::Expected::None)
    out << "expect " << to_string(p.expected) << "\n";
  return out.str();
}

void overlay_from_dir(Registry& reg, const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  for (const fs::path& path : paths) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".p") {
      Problem p = parse_problem_text(buf.str(), reg.sig, reg.defs, reg.axioms);
      reg.problems[p.name] = std::move(p);
    } else if (path.extension() == ".nd") {
      NDScript s = parse_script(buf.str(), reg.sig, reg.defs);
      reg.scripts[s.name] = std::move(s);
    }
  }
  reg.validate();
}

int export_corpus(const Registry& reg, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  int count = 0;
  for (const auto& [name, p] : reg.problems) {
    std::ofstream out(fs::path(dir) / (name + ".p"));
    out << to_string(p);
    ++count;
  }
  for (const auto& [name, s] : reg.scripts) {
    std::ofstream out(fs::path(dir) / (name + ".nd"));
    out << to_string(s);
    ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Running

CrossCheckResult cross_check(const Registry& reg, const Problem& p,
                             ProveOutcome outcome) {
  CrossCheckResult r;
  if (p.kind != Problem::Kind::Prove || !p.goal) return r;
  r.ran = true;
  SearchQuery q;
  for (const auto& [name, f] : p.axioms) q.satisfy.push_back(f);
  q.falsify.push_back(*p.goal);
  q.min_size = 1;
  q.max_size = 3;
  SearchLimits limits;
  limits.size_cap = 3;
  SearchResult res = search(q, reg.sig, reg.defs, {}, limits);
  r.scanned = res.scanned;
  r.countermodel_found = res.found;
  r.exhausted = !res.found;
  if (res.found) r.model = res.model;
  r.consistent = !(outcome == ProveOutcome::Refutation && res.found);
  return r;
}

namespace {

ProblemOutcome run_problem(const Registry& reg, const Problem& p,
                           const ProverConfig& cfg) {
  ProblemOutcome out;
  out.name = p.name;
  out.kind = p.kind;
  out.expected = to_string(p.expected);
  try {
    switch (p.kind) {
      case Problem::Kind::Prove: {
        ProveResult res = prove(p.axioms, *p.goal, reg.sig, reg.defs, cfg);
        out.actual = to_string(res.outcome);
        out.generated = res.stats.generated;
        out.kept = res.stats.kept;
        if (res.proof) {
          VerifyResult v = verify_refutation(*res.proof, res.clausal.clauses);
          out.verified = v.ok;
          if (!v.ok) out.error = "proof verification failed: " + v.reason;
        }
        out.cross = cross_check(reg, p, res.outcome);
        out.pass = to_string(p.expected) == out.actual && out.cross.consistent &&
                   (!res.proof || out.verified);
        break;
      }
      case Problem::Kind::ModelSearch: {
        SearchQuery q;
        for (const std::string& n : p.satisfy) {
          for (const auto& [an, af] : p.axioms)
            if (an == n) q.satisfy.push_back(af);
        }
        for (const std::string& n : p.falsify) {
          for (const auto& [an, af] : p.axioms)
            if (an == n) q.falsify.push_back(af);
        }
        q.min_size = p.min_size;
        q.max_size = p.max_size;
        SearchLimits limits;
        limits.size_cap = std::max(4, p.max_size);
        SearchResult res = search(q, reg.sig, reg.defs, {}, limits);
        out.scanned = res.scanned;
        if (res.found) {
          out.actual = "found";
          out.found_size = res.model.size;
          // found models must re-verify
          std::vector<std::pair<std::string, Formula>> checks;
          for (size_t i = 0; i < q.satisfy.size(); ++i)
            checks.emplace_back("satisfy" + std::to_string(i), q.satisfy[i]);
          for (size_t i = 0; i < q.falsify.size(); ++i)
            checks.emplace_back("falsify" + std::to_string(i), q.falsify[i]);
          auto report = check_model(res.model, checks, reg.defs);
          out.verified = true;
          for (size_t i = 0; i < report.size(); ++i) {
            bool want = i < q.satisfy.size();
            if (report[i].holds != want) out.verified = false;
          }
          if (!out.verified) out.error = "found model fails re-verification";
        } else {
          out.actual = "exhausted";
        }
        out.pass = to_string(p.expected) == out.actual &&
                   (out.actual != "found" || out.verified);
        break;
      }
      case Problem::Kind::CheckScript: {
        // handled alongside the scripts; here only report the reference
        out.actual = "see script " + p.script_ref;
        out.pass = true;
        break;
      }
    }
  } catch (const std::exception& e) {
    out.actual = "error";
    out.error = e.what();
    out.pass = false;
  }
  return out;
}

}  // namespace

CorpusReport run_all(const Registry& reg, const ProverConfig& cfg, int jobs) {
  CorpusReport report;

  std::vector<const Problem*> problems;
  for (const auto& [name, p] : reg.problems) problems.push_back(&p);
  std::sort(problems.begin(), problems.end(),
            [](const Problem* a, const Problem* b) { return a->name < b->name; });

  if (jobs <= 1) {
    for (const Problem* p : problems)
      report.problems.push_back(run_problem(reg, *p, cfg));
  } else {
    std::vector<std::future<ProblemOutcome>> futures;
    size_t next = 0;
    std::mutex mu;
    auto worker = [&]() {
      std::vector<std::pair<size_t, ProblemOutcome>> got;
      while (true) {
        size_t idx;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= problems.size()) break;
          idx = next++;
        }
        got.emplace_back(idx, run_problem(reg, *problems[idx], cfg));
      }
      return got;
    };
    std::vector<std::future<std::vector<std::pair<size_t, ProblemOutcome>>>> fs;
    for (int j = 0; j < jobs; ++j)
      fs.push_back(std::async(std::launch::async, worker));
    std::vector<std::optional<ProblemOutcome>> slots(problems.size());
    for (auto& f : fs)
      for (auto& [idx, outcome] : f.get()) slots[idx] = std::move(outcome);
    for (auto& slot : slots) report.problems.push_back(std::move(*slot));
  }

  // scripts, in dependency order so lemmas are available once checked
  std::map<std::string, ScriptOutcome> script_outcomes;
  AxiomTable table;
  for (const std::string& name : reg.scripts_in_dependency_order()) {
    const NDScript& s = reg.script(name);
    ScriptOutcome so;
    so.name = name;
    so.problem = s.problem;
    AxiomTable local;
    if (reg.problems.count(s.problem))
      for (const auto& [an, af] : reg.problem(s.problem).axioms)
        local.axioms.emplace(an, af);
    for (const std::string& dep : s.uses) {
      auto it = table.lemmas.find(dep);
      if (it != table.lemmas.end()) local.lemmas.emplace(dep, it->second);
    }
    so.report = check_script(s, local);
    so.ok = so.report.ok;
    if (so.ok) table.lemmas.emplace(name, s.goal);
    auto direct = used_axioms(s, reg.scripts, false);
    so.used.assign(direct.begin(), direct.end());
    auto trans = used_axioms(s, reg.scripts, true);
    so.used_transitive.assign(trans.begin(), trans.end());
    script_outcomes.emplace(name, std::move(so));
  }
  for (auto& [name, so] : script_outcomes)
    report.scripts.push_back(std::move(so));

  // headline facts
  if (reg.axioms.count("SYM"))
    report.undir_in_sym = count_predicate(reg.axiom("SYM"), "Undir");
  if (reg.axioms.count("I.7"))
    report.undir_in_i7 = count_predicate(reg.axiom("I.7"), "Undir");

  auto used_is_i6 = [&](const std::string& name) {
    for (const ScriptOutcome& so : report.scripts)
      if (so.name == name)
        return so.ok && so.used == std::vector<std::string>{"I.6"};
    return false;
  };
  report.redundancy_ok = used_is_i6("S4") && used_is_i6("S5");

  auto goal_refuted = [&](const std::string& name) {
    for (const ProblemOutcome& po : report.problems)
      if (po.name == name) return po.pass && po.actual == "refutation";
    return false;
  };
  report.equivalence_ok = goal_refuted("G5") && goal_refuted("G7");

  report.consistent = true;
  for (const ProblemOutcome& po : report.problems)
    if (!po.cross.consistent) report.consistent = false;

  report.total = static_cast<int>(report.problems.size() + report.scripts.size());
  report.pass_count = 0;
  for (const ProblemOutcome& po : report.problems)
    if (po.pass) ++report.pass_count;
  for (const ScriptOutcome& so : report.scripts)
    if (so.ok) ++report.pass_count;
  report.pass = report.pass_count == report.total && report.consistent &&
                report.redundancy_ok && report.equivalence_ok;
  return report;
}

// ---------------------------------------------------------------------------
// Reports

std::string report_text(const CorpusReport& r) {
  std::ostringstream out;
  out << "item  kind          expected    actual      check        result\n";
  out << "----  ----          --------    ------      -----        ------\n";
  for (const ProblemOutcome& po : r.problems) {
    std::string check;
    if (po.kind == Problem::Kind::Prove) {
      check = po.cross.countermodel_found ? "countermodel" : "exhausted<=3";
      if (po.verified) check += ",verified";
    } else if (po.kind == Problem::Kind::ModelSearch) {
      check = po.actual == "found"
                  ? "n=" + std::to_string(po.found_size) + ",reverified"
                  : "scanned=" + std::to_string(po.scanned);
    }
    std::string actual = po.actual;
    if (po.kind == Problem::Kind::ModelSearch && po.actual == "found")
      actual += "(n=" + std::to_string(po.found_size) + ")";
    out << po.name << "    " << to_string(po.kind);
    out << std::string(std::max<int>(1, 14 - static_cast<int>(to_string(po.kind).size())), ' ');
    out << po.expected << std::string(std::max<int>(1, 12 - static_cast<int>(po.expected.size())), ' ');
    out << actual << std::string(std::max<int>(1, 12 - static_cast<int>(actual.size())), ' ');
    out << check << std::string(std::max<int>(1, 13 - static_cast<int>(check.size())), ' ');
    out << (po.pass ? "PASS" : "FAIL");
    if (!po.error.empty()) out << "  (" << po.error << ")";
    out << "\n";
  }
  for (const ScriptOutcome& so : r.scripts) {
    std::string used;
    for (size_t i = 0; i < so.used.size(); ++i) {
      if (i) used += ",";
      used += so.used[i];
    }
    if (used.empty()) used = "-";
    out << so.name << "    check-script  ok          "
        << (so.ok ? "ok" : to_string(so.report.reason));
    out << std::string(std::max<int>(1, 12 - static_cast<int>((so.ok ? 2 : to_string(so.report.reason).size()))), ' ');
    out << "axioms:" << used;
    out << std::string(std::max<int>(1, 13 - 7 - static_cast<int>(used.size())), ' ');
    out << (so.ok ? "PASS" : "FAIL");
    if (!so.ok)
      out << "  (step " << so.report.step_id << ": " << so.report.detail << ")";
    out << "\n";
  }
  out << "\n";
  out << "occurrences: Undir appears " << r.undir_in_sym << "x in SYM, "
      << r.undir_in_i7 << "x in I.7\n";
  out << "redundancy: w1 and w4 need I.6 alone: "
      << (r.redundancy_ok ? "confirmed" : "NOT confirmed") << "\n";
  out << "equivalence: {I.5,I.6,I.8,SYM} and {I.5,I.6,I.7,I.8} are "
      << (r.equivalence_ok ? "" : "NOT ") << "interderivable (G5 with G7)\n";
  out << "consistency: "
      << (r.consistent ? "no goal has both a refutation and a countermodel"
                       : "HARD FAILURE: refutation with countermodel")
      << "\n";
  out << "overall: " << (r.pass ? "PASS" : "FAIL") << " (" << r.pass_count
      << "/" << r.total << ")\n";
  return out.str();
}

nlohmann::json report_json(const CorpusReport& r, const ProverConfig& cfg) {
  nlohmann::json j;
  j["command"] = "corpus";
  j["config"] = {{"max_generated_clauses", cfg.max_generated_clauses},
                 {"timeout_seconds", cfg.timeout_seconds},
                 {"pick_ratio", std::to_string(cfg.pick_age) + ":" +
                                    std::to_string(cfg.pick_weight)}};
  j["problems"] = nlohmann::json::array();
  for (const ProblemOutcome& po : r.problems) {
    nlohmann::json pj;
    pj["name"] = po.name;
    pj["kind"] = to_string(po.kind);
    pj["expected"] = po.expected;
    pj["actual"] = po.actual;
    pj["pass"] = po.pass;
    if (po.kind == Problem::Kind::Prove) {
      pj["generated"] = po.generated;
      pj["kept"] = po.kept;
      pj["proof_verified"] = po.verified;
      pj["cross_check"] = {{"countermodel_found", po.cross.countermodel_found},
                           {"scanned", po.cross.scanned},
                           {"consistent", po.cross.consistent}};
    } else if (po.kind == Problem::Kind::ModelSearch) {
      pj["scanned"] = po.scanned;
      if (po.actual == "found") {
        pj["size"] = po.found_size;
        pj["reverified"] = po.verified;
      }
    }
    if (!po.error.empty()) pj["error"] = po.error;
    j["problems"].push_back(std::move(pj));
  }
  j["scripts"] = nlohmann::json::array();
  for (const ScriptOutcome& so : r.scripts) {
    nlohmann::json sj;
    sj["name"] = so.name;
    sj["problem"] = so.problem;
    sj["ok"] = so.ok;
    if (!so.ok) {
      sj["failed_step"] = so.report.step_id;
      sj["reason"] = to_string(so.report.reason);
    }
    sj["used_axioms"] = so.used;
    sj["used_axioms_transitive"] = so.used_transitive;
    j["scripts"].push_back(std::move(sj));
  }
  j["occurrences"] = {{"SYM", r.undir_in_sym}, {"I.7", r.undir_in_i7}};
  j["redundancy_ok"] = r.redundancy_ok;
  j["equivalence_ok"] = r.equivalence_ok;
  j["consistent"] = r.consistent;
  j["pass"] = r.pass;
  j["passed"] = r.pass_count;
  j["total"] = r.total;
  return j;
}

}  // namespace revline
