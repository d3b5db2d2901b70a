#pragma once

#include <string>

#include "relog/formula.hpp"
#include "relog/logic.hpp"
#include "relog/model.hpp"
#include "relog/rules.hpp"

namespace relog {

/// Parses a formula in the shared concrete syntax:
///   true false R(x,y) x=y x<y !f f&g f|g f->g
///   exists x. f   forall x. f   exists2 Z:2. f
/// Precedence ! > & > | > ->, quantifiers extend right.
Formula parse_formula(const std::string& text);

/// Parses a rule in isolation (dialect context defaults to NRL).
Rule parse_rule_text(const std::string& text, Dialect dialect = Dialect::NRL);

/// Parses the ".rl" program format: a `program DIALECT [agents N]` header,
/// `tape NAME ARITY` declarations, then numbered lines `N: [A:|G:] rule`.
/// Rejects dialect-violating constructs with a line-numbered diagnostic.
Program parse_program(const std::string& text);

/// Parses an L_RE sentence file: `I Y. <formula>` (comments allowed).
LreSentence parse_lre(const std::string& text);

/// Parses a vocabulary file: `rel NAME ARITY` / `tape NAME ARITY` lines with
/// optional `order NAME`; interpretations in braces are accepted and ignored.
Vocabulary parse_vocab(const std::string& text);

} // namespace relog
