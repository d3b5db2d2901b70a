#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relog/formula.hpp"

namespace relog {

/// One program rule. Immutable value over a shared node, like Formula.
class Rule {
public:
    enum class Kind {
        Transform1,          // head(vars) :- body [if guard]
        Insert,              // I [:- guard]
        Delete,              // D(x) :- body [if guard]
        CondGoto,            // goto k [if guard]; plain goto carries guard true
        GuessRelation,       // guess X[:k]
        GuessGoto,           // goto? (k1,...,kn)
        CondRuleTuple,       // case g1 => R1 | ... | else => Rn
        ParallelRule,        // par [ C1 || ... || Cn ], arms executed in phases
        NondetTransformer,   // choose [ C1 ; ... ; Cm ]
        ParallelTransformer, // par over per-agent choose lists
        CondFlowControl      // case g1 => goto? (...) | ... | else => goto? (...)
    };

    Rule(); // defaults to Insert

    static Rule transform1(std::string head, std::vector<std::string> vars, Formula body,
                           std::optional<Formula> guard = std::nullopt);
    static Rule insert(std::optional<Formula> guard = std::nullopt);
    static Rule del(std::string var, Formula body, std::optional<Formula> guard = std::nullopt);
    static Rule cond_goto(int target, Formula guard = Formula::truth(true));
    static Rule guess(std::string symbol, int declared_arity = -1);
    static Rule guess_goto(std::vector<int> targets);
    static Rule cond_tuple(std::vector<std::pair<Formula, Rule>> arms, Rule else_rule);
    static Rule parallel_rule(std::vector<Rule> arms);
    static Rule nondet(std::vector<Rule> options);
    static Rule parallel_transformer(std::vector<Rule> agents);
    static Rule cond_flow(std::vector<std::pair<Formula, Rule>> arms, Rule else_rule);

    Kind kind() const;
    const std::string& head() const;                   // Transform1 / Delete var / guess symbol
    const std::vector<std::string>& head_vars() const; // Transform1
    const Formula& body() const;                       // Transform1 / Delete
    const std::optional<Formula>& guard() const;       // conditioned rules; CondGoto guard
    int target() const;                                // CondGoto
    const std::vector<int>& targets() const;           // GuessGoto (as written, duplicates kept)
    int declared_arity() const;                        // GuessRelation annotation, -1 if absent
    const std::vector<std::pair<Formula, Rule>>& arms() const; // CondRuleTuple / CondFlowControl
    const Rule& else_rule() const;
    const std::vector<Rule>& items() const; // ParallelRule / NondetTransformer / ParallelTransformer

    bool operator==(const Rule& other) const;
    bool operator!=(const Rule& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    struct Node;
    explicit Rule(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

enum class Dialect { RLO, RL, NRL, GRL };

std::string dialect_name(Dialect d);

enum class LineSort { None, Agent, General };

struct ProgramLine {
    LineSort sort = LineSort::None;
    Rule rule;

    bool operator==(const ProgramLine&) const = default;
};

struct Program {
    Dialect dialect = Dialect::RL;
    int agent_count = 0; // GRL; 0 when not declared
    std::vector<std::pair<std::string, int>> tapes;
    std::map<int, ProgramLine> lines;

    bool sorted() const;
    int first_line() const;        // least line number, 0 when empty
    int next_line(int after) const; // least line number > after, -1 when none
    bool has_line(int n) const { return lines.count(n) > 0; }
    const Rule& rule_at(int n) const { return lines.at(n).rule; }
    bool is_tape(const std::string& name) const;
    int tape_arity(const std::string& name) const; // -1 when not a tape

    bool operator==(const Program&) const = default;
};

struct PrintOptions {
    bool binary_line_numbers = false;
};

std::string print_rule(const Rule& r);
std::string print_program(const Program& p, const PrintOptions& opts = {});

struct Diagnostics {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
    std::string to_string() const;
};

/// Enforces all Program invariants: dialect gating, free-variable discipline,
/// declared X_true, sorted-GRL shape, symbol arity consistency. Jump targets
/// that name no line are warnings, since jumping to a missing line halts.
Diagnostics validate(const Program& p);

/// FNV-1a hash of the canonical program text, as a fixed-width hex string.
std::string program_hash(const Program& p);

} // namespace relog
