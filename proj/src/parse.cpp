#include "revline/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace revline {

namespace {

enum class Tok {
  Ident,
  Forall,
  Exists,
  False,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  Iff,
  LParen,
  RParen,
  Comma,
  Dot,
  End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::False: return "'false'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_'))
          word += advance();
        Tok k = Tok::Ident;
        if (word == "forall") k = Tok::Forall;
        else if (word == "exists") k = Tok::Exists;
        else if (word == "false") k = Tok::False;
        out.push_back({k, word, line, col});
        continue;
      }
      switch (c) {
        case '~': advance(); out.push_back({Tok::Tilde, "~", line, col}); break;
        case '&': advance(); out.push_back({Tok::Amp, "&", line, col}); break;
        case '|': advance(); out.push_back({Tok::Pipe, "|", line, col}); break;
        case '(': advance(); out.push_back({Tok::LParen, "(", line, col}); break;
        case ')': advance(); out.push_back({Tok::RParen, ")", line, col}); break;
        case ',': advance(); out.push_back({Tok::Comma, ",", line, col}); break;
        case '.': advance(); out.push_back({Tok::Dot, ".", line, col}); break;
        case '-':
          advance();
          if (pos_ < src_.size() && src_[pos_] == '>') {
            advance();
            out.push_back({Tok::Arrow, "->", line, col});
          } else {
            throw ParseError("stray '-'", line, col, "'->'");
          }
          break;
        case '<':
          advance();
          if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '>') {
            advance();
            advance();
            out.push_back({Tok::Iff, "<->", line, col});
          } else {
            throw ParseError("stray '<'", line, col, "'<->'");
          }
          break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'",
                           line, col);
      }
    }
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig,
         const std::vector<DefinedPredicate>& defs, ParseOptions opts)
      : toks_(std::move(toks)), sig_(sig), opts_(opts) {
    for (const DefinedPredicate& d : defs)
      defined_[d.name] = static_cast<int>(d.params.size());
  }

  Formula parse_formula_top() {
    Formula f = formula();
    expect(Tok::End);
    return f;
  }

  Term parse_term_top() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  Token expect(Tok kind) {
    if (peek().kind != kind)
      throw ParseError("unexpected " + std::string(tok_name(peek().kind)) +
                           (peek().text.empty() ? "" : " '" + peek().text + "'"),
                       peek().line, peek().col, tok_name(kind));
    return take();
  }

  // formula := iff
  Formula formula() { return iff(); }

  Formula iff() {
    Formula lhs = imp();
    while (peek().kind == Tok::Iff) {
      take();
      Formula rhs = imp();
      // A <-> B desugars to (A -> B) & (B -> A)
      lhs = Formula::conj(Formula::implies(lhs, rhs),
                          Formula::implies(rhs, lhs));
    }
    return lhs;
  }

  Formula imp() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      take();
      return Formula::implies(std::move(lhs), imp());  // right-associative
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().kind == Tok::Pipe) {
      take();
      lhs = Formula::disj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (peek().kind == Tok::Amp) {
      take();
      lhs = Formula::conj(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Tilde:
        take();
        return Formula::negation(unary());
      case Tok::Forall:
      case Tok::Exists:
        return quantified();
      default:
        return primary();
    }
  }

  Formula quantified() {
    Token q = take();
    Token v = expect(Tok::Ident);
    if (sig_.constants.count(v.text))
      throw ParseError("quantified variable '" + v.text +
                           "' shadows a declared constant",
                       v.line, v.col);
    if (std::count(bound_.begin(), bound_.end(), v.text))
      throw ParseError("quantified variable '" + v.text +
                           "' shadows an enclosing binding",
                       v.line, v.col);
    expect(Tok::Dot);
    bound_.push_back(v.text);
    Formula body = formula();  // maximal rightward scope
    bound_.pop_back();
    return q.kind == Tok::Forall ? Formula::forall(v.text, std::move(body))
                                 : Formula::exists(v.text, std::move(body));
  }

  Formula primary() {
    switch (peek().kind) {
      case Tok::False:
        take();
        return Formula::falsum();
      case Tok::LParen: {
        take();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::Ident:
        return atom();
      default:
        throw ParseError("unexpected " + std::string(tok_name(peek().kind)),
                         peek().line, peek().col,
                         "atom, 'false', '~', quantifier or '('");
    }
  }

  Formula atom() {
    Token name = take();
    std::vector<Term> args;
    if (peek().kind == Tok::LParen) {
      take();
      args.push_back(term());
      while (peek().kind == Tok::Comma) {
        take();
        args.push_back(term());
      }
      expect(Tok::RParen);
    }
    int arity = -1;
    if (auto it = sig_.predicates.find(name.text); it != sig_.predicates.end())
      arity = it->second;
    else if (auto dt = defined_.find(name.text); dt != defined_.end())
      arity = dt->second;
    else
      throw ParseError("unknown predicate '" + name.text + "'", name.line,
                       name.col);
    if (static_cast<int>(args.size()) != arity)
      throw ParseError("predicate '" + name.text + "' expects " +
                           std::to_string(arity) + " arguments, got " +
                           std::to_string(args.size()),
                       name.line, name.col);
    return Formula::atom(name.text, std::move(args));
  }

  Term term() {
    Token name = expect(Tok::Ident);
    if (peek().kind == Tok::LParen) {
      take();
      std::vector<Term> args;
      args.push_back(term());
      while (peek().kind == Tok::Comma) {
        take();
        args.push_back(term());
      }
      expect(Tok::RParen);
      auto it = sig_.functions.find(name.text);
      if (it == sig_.functions.end())
        throw ParseError("unknown function '" + name.text + "'", name.line,
                         name.col);
      if (static_cast<int>(args.size()) != it->second)
        throw ParseError("function '" + name.text + "' expects " +
                             std::to_string(it->second) + " arguments, got " +
                             std::to_string(args.size()),
                         name.line, name.col);
      return Term::application(name.text, std::move(args));
    }
    if (std::count(bound_.begin(), bound_.end(), name.text))
      return Term::variable(name.text);
    if (sig_.constants.count(name.text)) return Term::constant(name.text);
    if (auto it = sig_.functions.find(name.text);
        it != sig_.functions.end() && it->second == 0)
      return Term::application(name.text, {});
    if (!opts_.allow_free_vars)
      throw ParseError("unknown symbol '" + name.text + "'", name.line,
                       name.col);
    return Term::variable(name.text);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  const Signature& sig_;
  ParseOptions opts_;
  std::map<std::string, int> defined_;
  std::vector<std::string> bound_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig,
                      const std::vector<DefinedPredicate>& defs,
                      ParseOptions opts) {
  Parser p(Lexer(text).run(), sig, defs, opts);
  return p.parse_formula_top();
}

Term parse_term(std::string_view text, const Signature& sig) {
  Parser p(Lexer(text).run(), sig, {}, ParseOptions{});
  return p.parse_term_top();
}

}  // namespace revline
