#include "revline/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace revline {

// ---------------------------------------------------------------------------
// Serialization
//
//   size=3
//   rev: 0->1 1->2 2->0
//   undir: {(0,1),(1,0)}
//   const: c0=2
//   fn sk0: 0->1 1->1 2->0        (extra symbols only when present)
//   pred df0: {(0),(2)}

std::string Interpretation::serialize() const {
  std::ostringstream out;
  out << "size=" << size << "\n";
  out << "rev:";
  for (int i = 0; i < size; ++i) out << " " << i << "->" << rev_table[i];
  out << "\n";
  out << "undir: {";
  bool first = true;
  for (int l = 0; l < size; ++l)
    for (int m = 0; m < size; ++m)
      if (undir_at(l, m)) {
        if (!first) out << ",";
        first = false;
        out << "(" << l << "," << m << ")";
      }
  out << "}\n";
  if (!constants.empty()) {
    out << "const:";
    for (const auto& [name, v] : constants) out << " " << name << "=" << v;
    out << "\n";
  }
  for (const auto& [name, table] : extra_funcs) {
    out << "fn " << name << ":";
    for (size_t i = 0; i < table.size(); ++i) out << " " << i << "->" << table[i];
    out << "\n";
  }
  for (const auto& [name, table] : extra_preds) {
    out << "pred " << name << ": {";
    bool f2 = true;
    for (size_t i = 0; i < table.size(); ++i)
      if (table[i]) {
        if (!f2) out << ",";
        f2 = false;
        out << i;
      }
    out << "}\n";
  }
  return out.str();
}

namespace {

[[noreturn]] void bad_interp(const std::string& what) {
  throw Error("interpretation: " + what);
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Interpretation Interpretation::deserialize(const std::string& text) {
  Interpretation m;
  m.size = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("size=", 0) == 0) {
      m.size = std::stoi(line.substr(5));
      if (m.size <= 0) bad_interp("size must be positive");
      m.rev_table.assign(m.size, 0);
      m.undir.assign(m.size * m.size, 0);
    } else if (line.rfind("rev:", 0) == 0) {
      if (m.size == 0) bad_interp("rev before size");
      std::istringstream ls(line.substr(4));
      std::string pair;
      while (ls >> pair) {
        auto arrow = pair.find("->");
        if (arrow == std::string::npos) bad_interp("bad rev entry " + pair);
        int from = std::stoi(pair.substr(0, arrow));
        int to = std::stoi(pair.substr(arrow + 2));
        if (from < 0 || from >= m.size || to < 0 || to >= m.size)
          bad_interp("rev entry out of range: " + pair);
        m.rev_table[from] = to;
      }
    } else if (line.rfind("undir:", 0) == 0) {
      if (m.size == 0) bad_interp("undir before size");
      std::string body = strip(line.substr(6));
      if (body.empty() || body.front() != '{' || body.back() != '}')
        bad_interp("undir table must be {...}");
      body = body.substr(1, body.size() - 2);
      size_t pos = 0;
      while ((pos = body.find('(', pos)) != std::string::npos) {
        size_t comma = body.find(',', pos);
        size_t close = body.find(')', pos);
        if (comma == std::string::npos || close == std::string::npos ||
            comma > close)
          bad_interp("bad undir pair");
        int l = std::stoi(body.substr(pos + 1, comma - pos - 1));
        int mm = std::stoi(body.substr(comma + 1, close - comma - 1));
        if (l < 0 || l >= m.size || mm < 0 || mm >= m.size)
          bad_interp("undir pair out of range");
        m.undir[l * m.size + mm] = 1;
        pos = close + 1;
      }
    } else if (line.rfind("const:", 0) == 0) {
      std::istringstream ls(line.substr(6));
      std::string entry;
      while (ls >> entry) {
        auto eq = entry.find('=');
        if (eq == std::string::npos) bad_interp("bad const entry " + entry);
        int v = std::stoi(entry.substr(eq + 1));
        if (v < 0 || v >= m.size) bad_interp("const out of range: " + entry);
        m.constants[entry.substr(0, eq)] = v;
      }
    } else if (line.rfind("fn ", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos) bad_interp("bad fn line");
      std::string name = strip(line.substr(3, colon - 3));
      std::vector<int> table;
      std::istringstream ls(line.substr(colon + 1));
      std::string pair;
      while (ls >> pair) {
        auto arrow = pair.find("->");
        if (arrow == std::string::npos) bad_interp("bad fn entry " + pair);
        size_t idx = std::stoul(pair.substr(0, arrow));
        int to = std::stoi(pair.substr(arrow + 2));
        if (table.size() <= idx) table.resize(idx + 1, 0);
        table[idx] = to;
      }
      m.extra_funcs[name] = std::move(table);
    } else if (line.rfind("pred ", 0) == 0) {
      auto colon = line.find(':');
      if (colon == std::string::npos) bad_interp("bad pred line");
      std::string name = strip(line.substr(5, colon - 5));
      std::string body = strip(line.substr(colon + 1));
      if (body.empty() || body.front() != '{' || body.back() != '}')
        bad_interp("pred table must be {...}");
      std::vector<std::uint8_t> table;
      std::istringstream ls(body.substr(1, body.size() - 2));
      std::string idx;
      while (std::getline(ls, idx, ',')) {
        idx = strip(idx);
        if (idx.empty()) continue;
        size_t i = std::stoul(idx);
        if (table.size() <= i) table.resize(i + 1, 0);
        table[i] = 1;
      }
      m.extra_preds[name] = std::move(table);
    } else {
      bad_interp("unrecognized line: " + line);
    }
  }
  if (m.size == 0) bad_interp("missing size");
  return m;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

int eval_term(const Term& t, const Interpretation& m, const Env& env) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name()) return it->second;
      throw EvalError("unmapped variable '" + t.name() + "'");
    }
    case Term::Kind::Constant: {
      auto it = m.constants.find(t.name());
      if (it == m.constants.end())
        throw EvalError("unmapped constant '" + t.name() + "'");
      return it->second;
    }
    case Term::Kind::Application: {
      if (t.name() == "rev" && t.args().size() == 1)
        return m.rev_table[eval_term(t.args()[0], m, env)];
      auto it = m.extra_funcs.find(t.name());
      if (it == m.extra_funcs.end())
        throw EvalError("uninterpreted function '" + t.name() + "'");
      size_t idx = 0;
      for (const Term& a : t.args())
        idx = idx * m.size + eval_term(a, m, env);
      return it->second.at(idx);
    }
  }
  throw EvalError("unreachable");
}

bool eval_rec(const Formula& f, const Interpretation& m, Env& env,
              const std::vector<DefinedPredicate>& defs) {
  switch (f.kind()) {
    case Formula::Kind::Falsum:
      return false;
    case Formula::Kind::Atom: {
      if (f.pred() == "Undir" && f.args().size() == 2) {
        int l = eval_term(f.args()[0], m, env);
        int r = eval_term(f.args()[1], m, env);
        return m.undir_at(l, r);
      }
      auto it = m.extra_preds.find(f.pred());
      if (it != m.extra_preds.end()) {
        size_t idx = 0;
        for (const Term& a : f.args()) idx = idx * m.size + eval_term(a, m, env);
        return it->second.at(idx) != 0;
      }
      for (const DefinedPredicate& d : defs)
        if (d.name == f.pred())
          return eval_rec(expand_defs(f, defs), m, env, defs);
      throw EvalError("uninterpreted predicate '" + f.pred() + "'");
    }
    case Formula::Kind::And:
      return eval_rec(f.left(), m, env, defs) && eval_rec(f.right(), m, env, defs);
    case Formula::Kind::Or:
      return eval_rec(f.left(), m, env, defs) || eval_rec(f.right(), m, env, defs);
    case Formula::Kind::Implies:
      return !eval_rec(f.left(), m, env, defs) || eval_rec(f.right(), m, env, defs);
    case Formula::Kind::Forall: {
      for (int d = 0; d < m.size; ++d) {
        env.emplace_back(f.var(), d);
        bool ok = eval_rec(f.body(), m, env, defs);
        env.pop_back();
        if (!ok) return false;
      }
      return true;
    }
    case Formula::Kind::Exists: {
      for (int d = 0; d < m.size; ++d) {
        env.emplace_back(f.var(), d);
        bool ok = eval_rec(f.body(), m, env, defs);
        env.pop_back();
        if (ok) return true;
      }
      return false;
    }
  }
  throw EvalError("unreachable");
}

}  // namespace

bool eval(const Formula& f, const Interpretation& m, Env& env,
          const std::vector<DefinedPredicate>& defs) {
  return eval_rec(f, m, env, defs);
}

bool eval_closed(const Formula& f, const Interpretation& m,
                 const std::vector<DefinedPredicate>& defs) {
  Env env;
  return eval_rec(f, m, env, defs);
}

std::string to_string(const Witness& w) {
  std::string out;
  for (size_t i = 0; i < w.assignment.size(); ++i) {
    if (i) out += ", ";
    out += w.assignment[i].first + "=" + std::to_string(w.assignment[i].second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness extraction: peel the universal prefix of a failing closed formula,
// binding each variable to the first element under which the rest fails.

namespace {

Witness find_witness(const Formula& f, const Interpretation& m,
                     const std::vector<DefinedPredicate>& defs) {
  Witness w;
  Env env;
  const Formula* cur = &f;
  while (cur->kind() == Formula::Kind::Forall) {
    bool stepped = false;
    for (int d = 0; d < m.size; ++d) {
      env.emplace_back(cur->var(), d);
      bool holds = eval_rec(cur->body(), m, env, defs);
      if (!holds) {
        w.assignment.emplace_back(cur->var(), d);
        cur = &cur->body();
        stepped = true;
        break;
      }
      env.pop_back();
    }
    if (!stepped) break;  // formula actually holds; empty tail
  }
  return w;
}

}  // namespace

std::vector<ModelCheckEntry> check_model(
    const Interpretation& m,
    const std::vector<std::pair<std::string, Formula>>& formulas,
    const std::vector<DefinedPredicate>& defs) {
  std::vector<ModelCheckEntry> out;
  for (const auto& [name, f] : formulas) {
    ModelCheckEntry e;
    e.name = name;
    e.holds = eval_closed(f, m, defs);
    if (!e.holds) e.witness = find_witness(f, m, defs);
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search

namespace {

// Advances a base-`size` odometer; returns false on wrap-around.
template <typename Int>
bool next_table(std::vector<Int>& table, int radix) {
  for (size_t i = table.size(); i-- > 0;) {
    if (static_cast<int>(table[i]) + 1 < radix) {
      table[i] = static_cast<Int>(table[i] + 1);
      return true;
    }
    table[i] = 0;
  }
  return false;
}

long long power(long long b, int e) {
  long long out = 1;
  while (e-- > 0) out *= b;
  return out;
}

}  // namespace

SearchResult search(const SearchQuery& q, const Signature& sig,
                    const std::vector<DefinedPredicate>& defs,
                    const ExtraSymbols& extra, SearchLimits limits) {
  if (q.min_size < 1 || q.min_size > q.max_size)
    throw Error("search: bad size range");
  if (q.max_size > limits.size_cap)
    throw Error("search: size cap exceeded (max_size " +
                std::to_string(q.max_size) + " > cap " +
                std::to_string(limits.size_cap) + ")");
  for (const Formula& f : q.satisfy)
    if (!is_closed(f)) throw Error("search: satisfy formula not closed");
  for (const Formula& f : q.falsify)
    if (!is_closed(f)) throw Error("search: falsify formula not closed");

  // Cheapest formula first; requirement = (formula, wanted truth value).
  struct Req {
    const Formula* f;
    bool want;
    int cost;
    size_t orig;
  };
  std::vector<Req> reqs;
  for (size_t i = 0; i < q.satisfy.size(); ++i)
    reqs.push_back({&q.satisfy[i], true, count_predicate(q.satisfy[i], "Undir"), i});
  for (size_t i = 0; i < q.falsify.size(); ++i)
    reqs.push_back({&q.falsify[i], false, count_predicate(q.falsify[i], "Undir"), i});
  std::stable_sort(reqs.begin(), reqs.end(), [](const Req& a, const Req& b) {
    return a.cost < b.cost;
  });

  SearchResult result;
  result.min_size = q.min_size;
  result.max_size = q.max_size;

  for (int n = q.min_size; n <= q.max_size; ++n) {
    Interpretation m;
    m.size = n;
    m.rev_table.assign(n, 0);
    m.undir.assign(n * n, 0);
    for (const std::string& c : sig.constants) m.constants[c] = 0;
    for (const std::string& c : extra.consts) m.constants[c] = 0;
    for (const auto& [name, arity] : extra.preds)
      m.extra_preds[name].assign(power(n, arity), 0);
    for (const auto& [name, arity] : extra.funcs)
      m.extra_funcs[name].assign(power(n, arity), 0);

    // Odometer over (rev, undir, const, pred tables, fn tables), rev most
    // significant.  Implemented as nested next_table passes: advance the
    // least significant component; on wrap, carry into the previous one.
    bool done = false;
    while (!done) {
      ++result.scanned;
      if (limits.max_scanned && result.scanned > limits.max_scanned)
        throw Error("search: scan limit exceeded");

      bool ok = true;
      for (const Req& r : reqs) {
        if (eval_closed(*r.f, m, defs) != r.want) {
          ok = false;
          break;
        }
      }
      if (ok) {
        result.found = true;
        result.model = m;
        result.falsify_witnesses.clear();
        for (const Formula& f : q.falsify)
          result.falsify_witnesses.push_back(find_witness(f, m, defs));
        return result;
      }

      // advance, least significant first: fn tables, pred tables, consts,
      // undir, rev
      bool advanced = false;
      for (auto it = m.extra_funcs.rbegin(); it != m.extra_funcs.rend(); ++it)
        if (next_table(it->second, n)) {
          advanced = true;
          break;
        }
      if (!advanced)
        for (auto it = m.extra_preds.rbegin(); it != m.extra_preds.rend(); ++it)
          if (next_table(it->second, 2)) {
            advanced = true;
            break;
          }
      if (!advanced && !m.constants.empty()) {
        for (auto it = m.constants.rbegin(); it != m.constants.rend(); ++it) {
          if (it->second + 1 < n) {
            ++it->second;
            advanced = true;
            break;
          }
          it->second = 0;
        }
      }
      if (!advanced && next_table(m.undir, 2)) advanced = true;
      if (!advanced && next_table(m.rev_table, n)) advanced = true;
      if (!advanced) done = true;
    }
  }
  return result;  // exhausted
}

}  // namespace revline
