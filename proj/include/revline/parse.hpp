#pragma once

// Recursive-descent parser for the formula grammar:
//   connectives ~ (tightest), &, |, -> (right-associative), <->;
//   quantifiers `forall x.` / `exists x.` scope maximally rightward;
//   atoms Name(t1,...,tn); `false` for the absurdity; # comments.
//
// Identifiers bound by a quantifier are variables.  Other identifiers are
// looked up in the signature; names that are neither bound nor declared
// parse as free variables (closedness is enforced by the operations that
// need it, not by the parser).

#include <string_view>
#include <vector>

#include "revline/syntax.hpp"

namespace revline {

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col,
             std::string expected_tokens = "")
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + msg +
              (expected_tokens.empty() ? "" : " (expected " + expected_tokens + ")")),
        line(line),
        col(col),
        expected(std::move(expected_tokens)) {}
  int line;
  int col;
  std::string expected;
};

struct ParseOptions {
  bool allow_free_vars = true;
};

Formula parse_formula(std::string_view text, const Signature& sig,
                      const std::vector<DefinedPredicate>& defs = {},
                      ParseOptions opts = {});

// Term-only entry point (used by proof-script instantiations); free
// variables are always permitted here.
Term parse_term(std::string_view text, const Signature& sig);

}  // namespace revline
