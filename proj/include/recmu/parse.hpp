#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "recmu/equations.hpp"
#include "recmu/term.hpp"
#include "recmu/type.hpp"

namespace recmu {

// Concrete syntax
//
//   type  ::= prefix ('->' type)?          (also '→'; right-associative)
//   prefix::= '~' prefix | 'bot' | IDENT | '(' type ')'     ('¬', '⊥')
//   term  ::= '\' IDENT ':' type '.' term                   ('λ')
//           | 'mu' IDENT ':' type '.' term                  ('μ')
//           | '[' IDENT ']' term
//           | atom+ [term-starting-with-binder]
//   atom  ::= IDENT | '(' term ')'
//
// Type identifiers declared as atoms are atomic constants; other identifiers
// starting with an uppercase letter are type variables. '#' starts a comment.

/// All parse functions throw ParseError with a line/column location.
Type parse_type(std::string_view src, const std::set<std::string>& atoms = {});

/// Throws kNamespaceClash if one identifier is used both as a lambda- and a
/// mu-variable, and ParseError if a binder shadows an enclosing binder.
Term parse_term(std::string_view src, const std::set<std::string>& atoms = {});

/// A term file: zero or more `define name := term ;` followed by the main
/// term. Defined names are substituted (capture-avoiding) into later
/// definitions and the main term.
Term parse_program(std::string_view src, const std::set<std::string>& atoms = {});

/// Equation file: `atom A B`, `free Y`, `X = type` lines ('≈' also accepted).
/// The result is validated.
EquationSystem parse_equations(std::string_view src);

struct ContextBinding {
  std::string name;
  Type type;
};

/// Context file: `x : T` lines. Whether a name is a lambda- or a
/// mu-variable is decided by the term it is used with.
std::vector<ContextBinding> parse_context(std::string_view src,
                                          const std::set<std::string>& atoms = {});

}  // namespace recmu
