#pragma once

// Robinson unification with occurs check.  Failure is a value, not an error;
// the result carries either an idempotent most general unifier or a short
// description of the clash / occurs-check position.

#include <optional>
#include <string>
#include <vector>

#include "revline/syntax.hpp"

namespace revline {

struct UnifyResult {
  std::optional<Substitution> mgu;
  std::string failure;  // set when mgu is empty

  explicit operator bool() const { return mgu.has_value(); }
};

UnifyResult unify(const Term& a, const Term& b);
UnifyResult unify_atoms(const std::string& pred_a, const std::vector<Term>& args_a,
                        const std::string& pred_b, const std::vector<Term>& args_b);

}  // namespace revline
