#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "relog/error.hpp"

namespace relog {

/// Immutable first-order / existential second-order formula. Value type over
/// a shared node; copying is cheap and subtrees are freely shared.
class Formula {
public:
    enum class Kind {
        True, False,
        Atom,     // name(args...)  — relation symbol, tape predicate or SO variable
        Equal,    // x = y
        Not, And, Or, Implies,
        Exists, Forall,   // first-order, var
        ExistsSO          // exists2 Z:k
    };

    Formula(); // defaults to True

    static Formula truth(bool b);
    static Formula atom(std::string name, std::vector<std::string> args);
    static Formula equal(std::string x, std::string y);
    static Formula negation(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula exists(std::string var, Formula f);
    static Formula forall(std::string var, Formula f);
    static Formula exists_so(std::string var, int arity, Formula f);

    /// Convenience folds; return the neutral constant on empty input.
    static Formula conj_all(std::vector<Formula> fs);
    static Formula disj_all(std::vector<Formula> fs);

    Kind kind() const;
    const std::string& name() const;              // Atom / quantifiers
    const std::vector<std::string>& args() const; // Atom / Equal (two entries)
    int so_arity() const;                         // ExistsSO
    const Formula& child(std::size_t i = 0) const;
    std::size_t child_count() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

    /// Free first-order variables.
    std::set<std::string> free_variables() const;
    /// Names used as atoms that are not bound by an enclosing exists2.
    std::set<std::string> free_predicates() const;
    /// Every name occurring anywhere (variables, quantifiers, atoms).
    std::set<std::string> all_names() const;

    /// True iff the formula has no second-order quantifier.
    bool is_first_order() const;
    /// True iff every second-order quantifier sits in a position from which it
    /// can be pulled to an existential prenex: not under a negation, not on
    /// the left of an implication, not under a universal quantifier.
    bool is_eso() const;

    std::string to_string() const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Rewrites every atom of `predicate` via the callback (given the atom's
/// argument list), leaving everything else intact. Used by the ESO collapse
/// and the boolean expansions. The callback result replaces the whole atom.
Formula rewrite_atoms(const Formula& f, const std::string& predicate,
                      const std::function<Formula(const std::vector<std::string>&)>& make);

/// A name based on `base` that is not in `taken` (appends digits if needed).
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

} // namespace relog
