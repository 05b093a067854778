#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dposet/catalog.hpp"
#include "dposet/digraph.hpp"

namespace dposet::fo {

enum class Kind { Forall, Exists, And, Or, Not, Implies, Iff, Leq, Eq };

struct Term {
  bool is_var = true;
  std::string name;  // variable name or constant spelling
  CanonCode code;    // resolved constant (canonical); empty for variables

  friend bool operator==(const Term&, const Term&) = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind;
  std::string var;                // bound variable for Forall / Exists
  std::vector<FormulaPtr> kids;   // 1 for quantifiers and Not, 2 for binary
  Term lhs, rhs;                  // atoms only
};

bool operator==(const Formula& a, const Formula& b);

// Grammar:
//   formula := quant | iff
//   quant   := ("forall" | "exists") IDENT "." formula
//   iff     := imp {"<->" imp}
//   imp     := or ["->" imp]
//   or      := and {"|" and}
//   and     := unary {"&" unary}
//   unary   := "~" unary | quant | "(" formula ")" | atom
//   atom    := term ("<=" | "=" | "<") term
// "a < b" becomes "a <= b & ~a = b". A binder may not reuse the name of an
// enclosing binder. Throws SyntaxError (with line:column) or UnknownConstant.
FormulaPtr parse(std::string_view text);

// Fully parenthesized; parse(print(f)) == f.
std::string print(const Formula& f);

std::set<std::string> free_variables(const Formula& f);

// Programmatic builders.
FormulaPtr var_leq(const std::string& a, const std::string& b);
FormulaPtr atom(Kind kind, Term a, Term b);
Term variable(const std::string& name);
Term constant(const std::string& spelling);  // named constant or #code
Term constant(const CanonCode& code);
FormulaPtr neg(FormulaPtr f);
FormulaPtr binary(Kind kind, FormulaPtr a, FormulaPtr b);
FormulaPtr quant(Kind kind, const std::string& var, FormulaPtr body);
FormulaPtr conj(const std::vector<FormulaPtr>& parts);  // BadArity when empty

using Binding = std::map<std::string, CanonCode>;

// Quantifiers range over the poset's elements. Free variables must be bound
// (UnboundVariable) to elements of the universe (BadBinding). Constants outside
// the universe are compared with the order decided directly on digraphs.
bool evaluate(const Formula& f, const Poset& universe, const Binding& binding);

// Elements of the universe satisfying a formula with exactly one free
// variable (BadArity otherwise), in universe order.
std::vector<CanonCode> defined_set(const Formula& f, const Poset& universe);

}  // namespace dposet::fo
