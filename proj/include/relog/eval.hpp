#pragma once

#include <cstdint>

#include "relog/formula.hpp"
#include "relog/model.hpp"

namespace relog {

struct EvalOptions {
    /// Cap on second-order candidate interpretations enumerated in one call
    /// (counted across nested quantifiers, so products count).
    std::uint64_t max_candidates = std::uint64_t{1} << 20;
};

/// Tarskian truth of a first-order formula. Over the empty domain exists is
/// false and forall is true. Throws EvalError on unbound variables, unknown
/// symbols, arity clashes, or a second-order quantifier in the formula.
bool eval_fo(const Formula& f, const Structure& m, const Assignment& a = {});

/// Truth of a formula that may contain exists2, by exhaustive enumeration of
/// candidate interpretations (2^(n^k) per quantifier). Throws BudgetError
/// when the candidate budget is exceeded.
bool eval_eso(const Formula& f, const Structure& m, const Assignment& a = {},
              const EvalOptions& opts = {});

} // namespace relog
