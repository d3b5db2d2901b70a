#pragma once

#include "relog/eval.hpp"
#include "relog/formula.hpp"
#include "relog/model.hpp"

namespace relog {

/// A sentence `I Y. exists2 X1:k1. ... psi` — accepted by a structure that can
/// be expanded with finitely many fresh points, named exactly by Y, so that
/// the existential second-order part holds.
struct LreSentence {
    std::string witness; // Y, unary
    Formula eso_part;    // exists2 prefix over a first-order matrix

    bool operator==(const LreSentence&) const = default;
};

/// Shape and well-formedness checks; throws Error with a message.
/// Y must be used as a unary atom only; the sentence has no free first-order
/// variables; the part is an exists2 prefix over a first-order matrix.
void validate_lre(const LreSentence& s);

/// Splits an exists2 prefix from its matrix.
struct EsoPrefix {
    std::vector<std::pair<std::string, int>> quantifiers;
    Formula matrix;
};
EsoPrefix split_eso_prefix(const Formula& f);

/// Merges an exists2 prefix into a single quantifier whose arity is the sum
/// of the original arities. The result is equivalent on every structure (the
/// one-element and empty cases are handled by explicit guard disjuncts).
/// Rejects nullary quantified variables.
Formula collapse_eso(const Formula& f);

enum class LreOutcome { Accepted, NotFoundWithinBudget };

/// Brute-force semantics of an LreSentence: tries expansions by j fresh
/// points for j = 0..max_new_elements, interpreting Y as exactly the fresh
/// points. If the structure carries a distinguished order, each fresh point
/// extends it as the new maximum in turn. Budget overruns inside the
/// second-order search surface as BudgetError, distinct from a rejection.
LreOutcome eval_lre_bounded(const LreSentence& s, const Structure& m, int max_new_elements,
                            const EvalOptions& opts = {});

/// First-order formula over {order, Z} with free variables x1..xk defining
/// the successor of Z in the numeral ordering of k-ary relations (all-ones is
/// a fixed point). Mirrors relation_increment.
Formula builtin_step_formula(const std::string& z, int arity, const std::string& order = "<");

/// Sentence stating that Z is the total k-ary relation.
Formula builtin_max_formula(const std::string& z, int arity);

/// The structure extended by `fresh` new points; relations kept, tape
/// predicates kept, distinguished order (if any) extended so each new point
/// becomes the maximum in turn.
Structure expand_domain(const Structure& m, int fresh);

} // namespace relog
