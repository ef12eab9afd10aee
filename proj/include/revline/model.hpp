#pragma once

// Exhaustive finite interpretation search and classical evaluation over
// small domains {0,...,n-1}.  The enumeration order is part of the external
// contract: sizes ascending; within a size rev_table, then undir_table, then
// const_table, each lexicographic (rev as the tuple (rev(0),...,rev(n-1));
// undir row-major with false < true; constants in name order).  Tables for
// extra predicates (name order) and extra functions (name order) come after
// the constants; the core corpus never uses them, they exist so clause sets
// with Skolem and definition symbols can be model-checked too.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revline/syntax.hpp"

namespace revline {

struct EvalError : Error {
  using Error::Error;
};

struct Interpretation {
  int size = 1;
  std::vector<int> rev_table;          // length size
  std::vector<std::uint8_t> undir;     // size*size, row-major
  std::map<std::string, int> constants;
  std::map<std::string, std::vector<int>> extra_funcs;          // n^arity entries
  std::map<std::string, std::vector<std::uint8_t>> extra_preds; // n^arity entries

  bool undir_at(int l, int m) const { return undir[l * size + m] != 0; }

  std::string serialize() const;
  static Interpretation deserialize(const std::string& text);
};

// Variable environment for evaluation; scoped push/pop, innermost last.
using Env = std::vector<std::pair<std::string, int>>;

bool eval(const Formula& f, const Interpretation& m, Env& env,
          const std::vector<DefinedPredicate>& defs = {});
bool eval_closed(const Formula& f, const Interpretation& m,
                 const std::vector<DefinedPredicate>& defs = {});

// Assignment of the outermost universal prefix under which a closed formula
// fails, always the first such assignment in ascending element order.
struct Witness {
  std::vector<std::pair<std::string, int>> assignment;
};
std::string to_string(const Witness& w);

struct SearchQuery {
  std::vector<Formula> satisfy;
  std::vector<Formula> falsify;
  int min_size = 1;
  int max_size = 4;
};

struct SearchLimits {
  int size_cap = 4;            // queries beyond this are rejected
  long long max_scanned = 0;   // 0 = unlimited
};

struct SearchResult {
  bool found = false;
  Interpretation model;                    // valid when found
  std::vector<Witness> falsify_witnesses;  // parallel to query.falsify
  long long scanned = 0;                   // interpretations enumerated
  int min_size = 0, max_size = 0;          // sizes covered
};

// Extra symbols whose tables the enumerator must also fill in (clause-set
// checks need Skolem functions/constants and definition predicates).
struct ExtraSymbols {
  std::map<std::string, int> funcs;  // name -> arity
  std::map<std::string, int> preds;  // name -> arity
  std::set<std::string> consts;
};

SearchResult search(const SearchQuery& q, const Signature& sig,
                    const std::vector<DefinedPredicate>& defs = {},
                    const ExtraSymbols& extra = {}, SearchLimits limits = {});

struct ModelCheckEntry {
  std::string name;
  bool holds = false;
  std::optional<Witness> witness;  // present when the formula fails
};

std::vector<ModelCheckEntry> check_model(
    const Interpretation& m,
    const std::vector<std::pair<std::string, Formula>>& formulas,
    const std::vector<DefinedPredicate>& defs = {});

}  // namespace revline
