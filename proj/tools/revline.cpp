// Command-line front end: prove / check / models / corpus.
//
// Exit codes: prove: 0 refutation, 1 saturated or resource-out, 2 input error;
// check: 0 ok, 1 rejected, 2 input error; models: 0 found, 1 exhausted,
// 2 error; corpus: 0 iff every expected outcome is met.
//
// Reports are byte-reproducible: timing goes to stderr, never into a report.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "revline/corpus.hpp"
#include "revline/parse.hpp"
#include "revline/verify.hpp"

namespace {

using namespace revline;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CommonFlags {
  double timeout = 10.0;
  int max_clauses = 50000;
  std::string pick_ratio = "1:4";
  bool json = false;

  ProverConfig config() const {
    ProverConfig cfg;
    cfg.timeout_seconds = timeout;
    cfg.max_generated_clauses = max_clauses;
    auto colon = pick_ratio.find(':');
    if (colon == std::string::npos)
      throw Error("--pick-ratio must be '<age>:<weight>'");
    cfg.pick_age = std::stoi(pick_ratio.substr(0, colon));
    cfg.pick_weight = std::stoi(pick_ratio.substr(colon + 1));
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--timeout", flags.timeout, "prover timeout in seconds");
  cmd->add_option("--max-clauses", flags.max_clauses,
                  "cap on generated clauses");
  cmd->add_option("--pick-ratio", flags.pick_ratio,
                  "age:weight clause selection ratio");
  cmd->add_flag("--json", flags.json, "structured output");
}

std::pair<int, int> parse_sizes(const std::string& sizes) {
  auto dots = sizes.find("..");
  if (dots == std::string::npos) throw Error("--sizes must be '<lo>..<hi>'");
  return {std::stoi(sizes.substr(0, dots)), std::stoi(sizes.substr(dots + 2))};
}

int cmd_prove(const std::string& file, const CommonFlags& flags) {
  Registry reg = load_corpus();
  Problem p;
  try {
    p = parse_problem_text(slurp(file), reg.sig, reg.defs, reg.axioms);
    if (p.kind != Problem::Kind::Prove || !p.goal)
      throw Error("'" + p.name + "' is not a prove problem");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  ProveResult res = prove(p.axioms, *p.goal, reg.sig, reg.defs, flags.config());
  bool verified = false;
  if (res.proof)
    verified = verify_refutation(*res.proof, res.clausal.clauses).ok;

  if (flags.json) {
    nlohmann::json j;
    j["command"] = "prove";
    j["problem"] = p.name;
    j["outcome"] = to_string(res.outcome);
    j["generated"] = res.stats.generated;
    j["kept"] = res.stats.kept;
    if (res.proof) {
      j["proof_verified"] = verified;
      j["used_inputs"] = res.proof->used_inputs;
      nlohmann::json clauses = nlohmann::json::array();
      for (const Clause& c : res.proof->clauses) {
        nlohmann::json cj;
        cj["id"] = c.id;
        nlohmann::json lits = nlohmann::json::array();
        for (const Literal& l : c.literals) lits.push_back(to_string(l));
        cj["literals"] = std::move(lits);
        if (const auto* in = std::get_if<InputProv>(&c.prov)) {
          cj["rule"] = "input";
          cj["input"] = in->name;
        } else if (const auto* r = std::get_if<ResolveProv>(&c.prov)) {
          cj["rule"] = "resolve";
          cj["parents"] = {r->parent1, r->parent2};
          cj["positions"] = {r->lit1, r->lit2};
          cj["subst"] = to_string(r->mgu);
        } else if (const auto* f = std::get_if<FactorProv>(&c.prov)) {
          cj["rule"] = "factor";
          cj["parent"] = f->parent;
          cj["positions"] = {f->lit1, f->lit2};
          cj["subst"] = to_string(f->mgu);
        }
        clauses.push_back(std::move(cj));
      }
      j["clauses"] = std::move(clauses);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "problem " << p.name << ": " << to_string(res.outcome) << "\n";
    std::cout << "generated " << res.stats.generated << ", kept "
              << res.stats.kept << "\n";
    if (res.proof) {
      std::cout << "proof (verified: " << (verified ? "yes" : "NO") << "):\n";
      std::cout << to_string(*res.proof);
    }
  }
  std::cerr << "time: " << res.stats.seconds << "s\n";
  return res.outcome == ProveOutcome::Refutation ? (verified ? 0 : 2) : 1;
}

int cmd_check(const std::string& file, const CommonFlags& flags) {
  Registry reg = load_corpus();
  NDScript script;
  try {
    script = parse_script(slurp(file), reg.sig, reg.defs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  AxiomTable table;
  try {
    for (const auto& [an, af] : reg.problem(script.problem).axioms)
      table.axioms.emplace(an, af);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  // lemma dependencies come from the built-in registry and must check first
  for (const std::string& dep : script.uses) {
    const NDScript& lemma = reg.script(dep);
    AxiomTable lemma_table;
    for (const auto& [an, af] : reg.problem(lemma.problem).axioms)
      lemma_table.axioms.emplace(an, af);
    for (const std::string& dd : lemma.uses)
      lemma_table.lemmas.emplace(dd, reg.script(dd).goal);
    if (!check_script(lemma, lemma_table).ok) {
      std::cerr << "error: lemma '" << dep << "' does not check\n";
      return 2;
    }
    table.lemmas.emplace(dep, lemma.goal);
  }

  CheckReport r = check_script(script, table);
  if (flags.json) {
    nlohmann::json j;
    j["command"] = "check";
    j["script"] = script.name;
    j["ok"] = r.ok;
    if (!r.ok) {
      j["failed_step"] = r.step_id;
      j["reason"] = to_string(r.reason);
      j["detail"] = r.detail;
    }
    std::cout << j.dump(2) << "\n";
  } else if (r.ok) {
    std::cout << "script " << script.name << ": ok\n";
  } else {
    std::cout << "script " << script.name << ": rejected at step " << r.step_id
              << ": " << to_string(r.reason) << " (" << r.detail << ")\n";
  }
  return r.ok ? 0 : 1;
}

int cmd_models(const std::string& satisfy, const std::string& falsify,
               const std::string& sizes, long long limit,
               const CommonFlags& flags) {
  Registry reg = load_corpus();
  SearchQuery q;
  try {
    for (const std::string& name : [&] {
           std::vector<std::string> v;
           std::istringstream in(satisfy);
           std::string item;
           while (std::getline(in, item, ',')) if (!item.empty()) v.push_back(item);
           return v;
         }())
      q.satisfy.push_back(reg.axiom(name));
    std::istringstream in(falsify);
    std::string item;
    while (std::getline(in, item, ','))
      if (!item.empty()) q.falsify.push_back(reg.axiom(item));
    auto [lo, hi] = parse_sizes(sizes);
    q.min_size = lo;
    q.max_size = hi;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  SearchLimits limits;
  limits.max_scanned = limit;
  if (q.max_size > limits.size_cap) {
    std::cerr << "warning: size " << q.max_size
              << " is above the default cap 4; expect a long scan\n";
    limits.size_cap = q.max_size;
  }

  try {
    SearchResult res = search(q, reg.sig, reg.defs, {}, limits);
    if (flags.json) {
      nlohmann::json j;
      j["command"] = "models";
      j["found"] = res.found;
      j["scanned"] = res.scanned;
      if (res.found) {
        j["size"] = res.model.size;
        j["model"] = res.model.serialize();
        nlohmann::json ws = nlohmann::json::array();
        for (const Witness& w : res.falsify_witnesses)
          ws.push_back(to_string(w));
        j["falsify_witnesses"] = std::move(ws);
      }
      std::cout << j.dump(2) << "\n";
    } else if (res.found) {
      std::cout << "found at size " << res.model.size << " (scanned "
                << res.scanned << ")\n";
      std::cout << res.model.serialize();
      for (size_t i = 0; i < res.falsify_witnesses.size(); ++i)
        std::cout << "falsified #" << i << " at "
                  << to_string(res.falsify_witnesses[i]) << "\n";
    } else {
      std::cout << "exhausted sizes " << q.min_size << ".." << q.max_size
                << " (scanned " << res.scanned << ")\n";
    }
    return res.found ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_corpus(int jobs, const std::string& overlay, const std::string& export_dir,
               const CommonFlags& flags) {
  Registry reg = load_corpus();
  if (!overlay.empty()) {
    try {
      overlay_from_dir(reg, overlay);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  if (!export_dir.empty()) {
    int n = export_corpus(reg, export_dir);
    std::cerr << "exported " << n << " files to " << export_dir << "\n";
    return 0;
  }
  CorpusReport report = run_all(reg, flags.config(), jobs);
  if (flags.json)
    std::cout << report_json(report, flags.config()).dump(2) << "\n";
  else
    std::cout << report_text(report);
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reasoning toolkit for the unequally-directed-lines fragment "
               "of ordered affine geometry"};
  app.require_subcommand(1);

  CommonFlags flags;

  std::string prove_file;
  CLI::App* prove = app.add_subcommand("prove", "refute a problem file");
  prove->add_option("file", prove_file, "problem file (.p)")->required();
  add_common(prove, flags);

  std::string check_file;
  CLI::App* check = app.add_subcommand("check", "check a proof script");
  check->add_option("file", check_file, "script file (.nd)")->required();
  add_common(check, flags);

  std::string satisfy, falsify, sizes = "1..4";
  long long limit = 0;
  CLI::App* models = app.add_subcommand("models", "finite model search");
  models->add_option("--satisfy", satisfy, "comma-separated axiom names");
  models->add_option("--falsify", falsify, "comma-separated axiom names");
  models->add_option("--sizes", sizes, "domain size range lo..hi");
  models->add_option("--limit", limit, "abort after this many interpretations");
  add_common(models, flags);

  int jobs = 1;
  bool text = false;
  std::string overlay, export_dir;
  CLI::App* corpus = app.add_subcommand("corpus", "run the whole reproduction");
  corpus->add_flag("--text", text, "plain table output (the default)");
  corpus->add_option("--jobs", jobs, "worker threads");
  corpus->add_option("--dir", overlay, "overlay problem/script directory");
  corpus->add_option("--export", export_dir, "write the built-in corpus to a directory");
  add_common(corpus, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (prove->parsed()) return cmd_prove(prove_file, flags);
    if (check->parsed()) return cmd_check(check_file, flags);
    if (models->parsed()) return cmd_models(satisfy, falsify, sizes, limit, flags);
    if (corpus->parsed()) return cmd_corpus(jobs, overlay, export_dir, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
