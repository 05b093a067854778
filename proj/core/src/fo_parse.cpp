#include <cctype>
#include <functional>

#include "dposet/error.hpp"
#include "dposet/families.hpp"
#include "dposet/fo.hpp"

namespace dposet::fo {

namespace {

enum class Tok { Ident, Const, Forall, Exists, Dot, LParen, RParen, Not, And, Or, Imp, Iff, Leq, Eq, Lt, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Const: return "constant";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Imp: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Leq: return "'<='";
    case Tok::Eq: return "'='";
    case Tok::Lt: return "'<'";
    case Tok::End: return "end of input";
  }
  return "?";
}

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  throw Error(Errc::SyntaxError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

bool constant_shaped(const std::string& w) {
  if (w == "Larrow") return true;
  if (w.rfind("male:", 0) == 0) return true;
  if (w.size() >= 2 && std::string("EFIOL").find(w[0]) != std::string::npos) {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(w[i]))) return false;
    return true;
  }
  return false;
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line, k = col;
    auto emit = [&](Tok t, std::size_t len) {
      out.push_back({t, std::string(s.substr(i, len)), l, k});
      advance(len);
    };
    if (s.substr(i, 3) == "<->") { emit(Tok::Iff, 3); continue; }
    if (s.substr(i, 2) == "<=") { emit(Tok::Leq, 2); continue; }
    if (s.substr(i, 2) == "->") { emit(Tok::Imp, 2); continue; }
    switch (c) {
      case '<': emit(Tok::Lt, 1); continue;
      case '=': emit(Tok::Eq, 1); continue;
      case '.': emit(Tok::Dot, 1); continue;
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '~': emit(Tok::Not, 1); continue;
      case '&': emit(Tok::And, 1); continue;
      case '|': emit(Tok::Or, 1); continue;
      default: break;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == ':')) ++j;
      if (j == i + 1) syntax_error(l, k, "'#' must be followed by a code");
      emit(Tok::Const, j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && word_char(s[j])) ++j;
      if (s.substr(i, j - i) == "male" && j < s.size() && s[j] == ':')
        while (j < s.size() && (word_char(s[j]) || s[j] == ':')) ++j;
      const std::string w(s.substr(i, j - i));
      Tok t = Tok::Ident;
      if (w == "forall") t = Tok::Forall;
      else if (w == "exists") t = Tok::Exists;
      else if (constant_shaped(w)) t = Tok::Const;
      emit(t, j - i);
      continue;
    }
    syntax_error(l, k, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr parse_all() {
    auto f = formula();
    if (peek().kind != Tok::End) unexpected("end of input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void unexpected(const std::string& wanted) {
    const auto& t = peek();
    syntax_error(t.line, t.col, std::string("expected ") + wanted + ", found " +
                                    (t.kind == Tok::End ? "end of input" : "'" + t.text + "'"));
  }
  void expect(Tok kind) {
    if (peek().kind != kind) unexpected(tok_name(kind));
    ++pos_;
  }

  FormulaPtr formula() {
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) return quantified();
    return iff();
  }

  FormulaPtr quantified() {
    const Token q = take();
    if (peek().kind != Tok::Ident) unexpected("a variable name");
    const Token v = take();
    for (const auto& b : bound_)
      if (b == v.text)
        syntax_error(v.line, v.col, "variable '" + v.text + "' is already bound by an enclosing quantifier");
    expect(Tok::Dot);
    bound_.push_back(v.text);
    auto body = formula();
    bound_.pop_back();
    return quant(q.kind == Tok::Forall ? Kind::Forall : Kind::Exists, v.text, std::move(body));
  }

  FormulaPtr iff() {
    auto f = imp();
    while (peek().kind == Tok::Iff) {
      ++pos_;
      f = binary(Kind::Iff, f, imp());
    }
    return f;
  }

  FormulaPtr imp() {
    auto f = disj();
    if (peek().kind == Tok::Imp) {
      ++pos_;
      return binary(Kind::Implies, f, imp());
    }
    return f;
  }

  FormulaPtr disj() {
    auto f = conjunction();
    while (peek().kind == Tok::Or) {
      ++pos_;
      f = binary(Kind::Or, f, conjunction());
    }
    return f;
  }

  FormulaPtr conjunction() {
    auto f = unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      f = binary(Kind::And, f, unary());
    }
    return f;
  }

  FormulaPtr unary() {
    switch (peek().kind) {
      case Tok::Not:
        ++pos_;
        return neg(unary());
      case Tok::Forall:
      case Tok::Exists:
        return quantified();
      case Tok::LParen: {
        ++pos_;
        auto f = formula();
        expect(Tok::RParen);
        return f;
      }
      default:
        return atomic();
    }
  }

  Term term() {
    const Token t = peek();
    if (t.kind == Tok::Ident) {
      ++pos_;
      return variable(t.text);
    }
    if (t.kind == Tok::Const) {
      ++pos_;
      return constant(t.text);
    }
    unexpected("a variable or constant");
  }

  FormulaPtr atomic() {
    Term a = term();
    const Token op = peek();
    if (op.kind != Tok::Leq && op.kind != Tok::Eq && op.kind != Tok::Lt) unexpected("'<=', '=' or '<'");
    ++pos_;
    Term b = term();
    if (op.kind == Tok::Leq) return atom(Kind::Leq, std::move(a), std::move(b));
    if (op.kind == Tok::Eq) return atom(Kind::Eq, std::move(a), std::move(b));
    return binary(Kind::And, atom(Kind::Leq, a, b), neg(atom(Kind::Eq, a, b)));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

std::string term_text(const Term& t) { return t.name; }

void print_into(const Formula& f, std::string& out) {
  switch (f.kind) {
    case Kind::Leq:
    case Kind::Eq:
      out += term_text(f.lhs);
      out += f.kind == Kind::Leq ? " <= " : " = ";
      out += term_text(f.rhs);
      return;
    case Kind::Not:
      out += "~";
      print_into(*f.kids[0], out);
      return;
    case Kind::Forall:
    case Kind::Exists:
      out += f.kind == Kind::Forall ? "(forall " : "(exists ";
      out += f.var;
      out += ". ";
      print_into(*f.kids[0], out);
      out += ")";
      return;
    default: break;
  }
  const char* op = f.kind == Kind::And ? " & " : f.kind == Kind::Or ? " | " : f.kind == Kind::Implies ? " -> " : " <-> ";
  out += "(";
  print_into(*f.kids[0], out);
  out += op;
  print_into(*f.kids[1], out);
  out += ")";
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case Kind::Leq:
    case Kind::Eq:
      for (const Term* t : {&f.lhs, &f.rhs})
        if (t->is_var && !bound.count(t->name)) out.insert(t->name);
      return;
    case Kind::Forall:
    case Kind::Exists: {
      const bool fresh = bound.insert(f.var).second;
      collect_free(*f.kids[0], bound, out);
      if (fresh) bound.erase(f.var);
      return;
    }
    default:
      for (const auto& k : f.kids) collect_free(*k, bound, out);
  }
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.var != b.var || a.kids.size() != b.kids.size()) return false;
  if (!(a.lhs == b.lhs) || !(a.rhs == b.rhs)) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!(*a.kids[i] == *b.kids[i])) return false;
  return true;
}

FormulaPtr parse(std::string_view text) { return Parser(lex(text)).parse_all(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

Term variable(const std::string& name) { return Term{true, name, {}}; }

Term constant(const std::string& spelling) {
  return Term{false, spelling, canonical_form(named_digraph(spelling))};
}

Term constant(const CanonCode& code) {
  auto canon = canonical_form(code.to_digraph());
  return Term{false, "#" + canon.text(), canon};
}

FormulaPtr atom(Kind kind, Term a, Term b) {
  if (kind != Kind::Leq && kind != Kind::Eq) throw Error(Errc::SyntaxError, "atoms are <= or =");
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr var_leq(const std::string& a, const std::string& b) {
  return atom(Kind::Leq, variable(a), variable(b));
}

FormulaPtr neg(FormulaPtr x) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Not;
  f->kids = {std::move(x)};
  return f;
}

FormulaPtr binary(Kind kind, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->kids = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr quant(Kind kind, const std::string& var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->var = var;
  f->kids = {std::move(body)};
  return f;
}

FormulaPtr conj(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) throw Error(Errc::BadArity, "empty conjunction");
  FormulaPtr f = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) f = binary(Kind::And, f, parts[i]);
  return f;
}

}  // namespace dposet::fo
