#include "relog/rules.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relog/error.hpp"

namespace relog {

struct Rule::Node {
    Kind kind = Kind::Insert;
    std::string head;
    std::vector<std::string> head_vars;
    std::optional<Formula> body;
    std::optional<Formula> guard;
    int target = 0;
    std::vector<int> targets;
    int declared_arity = -1;
    std::vector<std::pair<Formula, Rule>> arms;
    std::optional<Rule> else_rule;
    std::vector<Rule> items;
};

namespace {
const std::shared_ptr<const Rule::Node>& insert_node() {
    static const auto n = std::make_shared<const Rule::Node>();
    return n;
}
} // namespace

Rule::Rule() : node_(insert_node()) {}

Rule Rule::transform1(std::string head, std::vector<std::string> vars, Formula body,
                      std::optional<Formula> guard) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Transform1;
    n->head = std::move(head);
    n->head_vars = std::move(vars);
    n->body = std::move(body);
    n->guard = std::move(guard);
    return Rule(std::move(n));
}

Rule Rule::insert(std::optional<Formula> guard) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Insert;
    n->guard = std::move(guard);
    return Rule(std::move(n));
}

Rule Rule::del(std::string var, Formula body, std::optional<Formula> guard) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Delete;
    n->head = std::move(var);
    n->body = std::move(body);
    n->guard = std::move(guard);
    return Rule(std::move(n));
}

Rule Rule::cond_goto(int target, Formula guard) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::CondGoto;
    n->target = target;
    n->guard = std::move(guard);
    return Rule(std::move(n));
}

Rule Rule::guess(std::string symbol, int declared_arity) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::GuessRelation;
    n->head = std::move(symbol);
    n->declared_arity = declared_arity;
    return Rule(std::move(n));
}

Rule Rule::guess_goto(std::vector<int> targets) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::GuessGoto;
    n->targets = std::move(targets);
    return Rule(std::move(n));
}

Rule Rule::cond_tuple(std::vector<std::pair<Formula, Rule>> arms, Rule else_rule) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::CondRuleTuple;
    n->arms = std::move(arms);
    n->else_rule = std::move(else_rule);
    return Rule(std::move(n));
}

Rule Rule::parallel_rule(std::vector<Rule> arms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::ParallelRule;
    n->items = std::move(arms);
    return Rule(std::move(n));
}

Rule Rule::nondet(std::vector<Rule> options) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::NondetTransformer;
    n->items = std::move(options);
    return Rule(std::move(n));
}

Rule Rule::parallel_transformer(std::vector<Rule> agents) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::ParallelTransformer;
    n->items = std::move(agents);
    return Rule(std::move(n));
}

Rule Rule::cond_flow(std::vector<std::pair<Formula, Rule>> arms, Rule else_rule) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::CondFlowControl;
    n->arms = std::move(arms);
    n->else_rule = std::move(else_rule);
    return Rule(std::move(n));
}

Rule::Kind Rule::kind() const { return node_->kind; }
const std::string& Rule::head() const { return node_->head; }
const std::vector<std::string>& Rule::head_vars() const { return node_->head_vars; }
const Formula& Rule::body() const {
    if (!node_->body) throw Error("rule has no body");
    return *node_->body;
}
const std::optional<Formula>& Rule::guard() const { return node_->guard; }
int Rule::target() const { return node_->target; }
const std::vector<int>& Rule::targets() const { return node_->targets; }
int Rule::declared_arity() const { return node_->declared_arity; }
const std::vector<std::pair<Formula, Rule>>& Rule::arms() const { return node_->arms; }
const Rule& Rule::else_rule() const {
    if (!node_->else_rule) throw Error("rule has no else branch");
    return *node_->else_rule;
}
const std::vector<Rule>& Rule::items() const { return node_->items; }

bool Rule::operator==(const Rule& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind || a.head != b.head || a.head_vars != b.head_vars ||
        a.target != b.target || a.targets != b.targets || a.declared_arity != b.declared_arity)
        return false;
    auto opt_eq = [](const std::optional<Formula>& x, const std::optional<Formula>& y) {
        if (x.has_value() != y.has_value()) return false;
        return !x || *x == *y;
    };
    if (!opt_eq(a.body, b.body) || !opt_eq(a.guard, b.guard)) return false;
    if (a.arms.size() != b.arms.size() || a.items != b.items) return false;
    for (std::size_t i = 0; i < a.arms.size(); ++i)
        if (!(a.arms[i].first == b.arms[i].first) || a.arms[i].second != b.arms[i].second)
            return false;
    if (a.else_rule.has_value() != b.else_rule.has_value()) return false;
    if (a.else_rule && *a.else_rule != *b.else_rule) return false;
    return true;
}

namespace {

void print_rule_to(const Rule& r, std::ostream& os);

void print_arm(const Rule& r, std::ostream& os) {
    // A case tuple prints itself; a bare rule prints as the singleton case.
    print_rule_to(r, os);
}

void print_rule_to(const Rule& r, std::ostream& os) {
    switch (r.kind()) {
    case Rule::Kind::Transform1:
        os << r.head();
        if (!r.head_vars().empty()) {
            os << '(';
            for (std::size_t i = 0; i < r.head_vars().size(); ++i) {
                if (i) os << ',';
                os << r.head_vars()[i];
            }
            os << ')';
        }
        os << " :- " << r.body().to_string();
        if (r.guard()) os << " if " << r.guard()->to_string();
        return;
    case Rule::Kind::Insert:
        os << 'I';
        if (r.guard()) os << " :- " << r.guard()->to_string();
        return;
    case Rule::Kind::Delete:
        os << "D(" << r.head() << ") :- " << r.body().to_string();
        if (r.guard()) os << " if " << r.guard()->to_string();
        return;
    case Rule::Kind::CondGoto:
        os << "goto " << r.target();
        if (!(r.guard() && *r.guard() == Formula::truth(true)))
            os << " if " << r.guard()->to_string();
        return;
    case Rule::Kind::GuessRelation:
        os << "guess " << r.head();
        if (r.declared_arity() >= 0) os << ':' << r.declared_arity();
        return;
    case Rule::Kind::GuessGoto:
        os << "goto? (";
        for (std::size_t i = 0; i < r.targets().size(); ++i) {
            if (i) os << ',';
            os << r.targets()[i];
        }
        os << ')';
        return;
    case Rule::Kind::CondRuleTuple:
    case Rule::Kind::CondFlowControl:
        os << "case ";
        for (const auto& [g, inner] : r.arms()) {
            os << g.to_string() << " => ";
            print_rule_to(inner, os);
            os << " | ";
        }
        os << "else => ";
        print_rule_to(r.else_rule(), os);
        return;
    case Rule::Kind::ParallelRule:
    case Rule::Kind::ParallelTransformer:
        os << "par [ ";
        for (std::size_t i = 0; i < r.items().size(); ++i) {
            if (i) os << " || ";
            const Rule& arm = r.items()[i];
            if (r.kind() == Rule::Kind::ParallelTransformer &&
                arm.kind() == Rule::Kind::NondetTransformer && arm.items().size() == 1) {
                print_arm(arm.items()[0], os); // singleton choose prints bare
            } else {
                print_arm(arm, os);
            }
        }
        os << " ]";
        return;
    case Rule::Kind::NondetTransformer:
        os << "choose [ ";
        for (std::size_t i = 0; i < r.items().size(); ++i) {
            if (i) os << " ; ";
            print_arm(r.items()[i], os);
        }
        os << " ]";
        return;
    }
}

std::string to_binary(int n) {
    std::string s;
    while (n > 0) {
        s.push_back(char('0' + (n & 1)));
        n >>= 1;
    }
    std::reverse(s.begin(), s.end());
    return s.empty() ? "0" : s;
}

} // namespace

std::string Rule::to_string() const {
    std::ostringstream os;
    print_rule_to(*this, os);
    return os.str();
}

std::string dialect_name(Dialect d) {
    switch (d) {
    case Dialect::RLO: return "RLO";
    case Dialect::RL: return "RL";
    case Dialect::NRL: return "NRL";
    case Dialect::GRL: return "GRL";
    }
    return "?";
}

bool Program::sorted() const {
    for (const auto& [n, line] : lines)
        if (line.sort != LineSort::None) return true;
    return false;
}

int Program::first_line() const { return lines.empty() ? 0 : lines.begin()->first; }

int Program::next_line(int after) const {
    auto it = lines.upper_bound(after);
    return it == lines.end() ? -1 : it->first;
}

bool Program::is_tape(const std::string& name) const {
    for (const auto& [t, a] : tapes)
        if (t == name) return true;
    return false;
}

int Program::tape_arity(const std::string& name) const {
    for (const auto& [t, a] : tapes)
        if (t == name) return a;
    return -1;
}

std::string print_program(const Program& p, const PrintOptions& opts) {
    std::ostringstream os;
    os << "program " << dialect_name(p.dialect);
    if (p.agent_count > 0) os << " agents " << p.agent_count;
    os << "\n";
    for (const auto& [name, arity] : p.tapes) os << "tape " << name << ' ' << arity << "\n";
    for (const auto& [num, line] : p.lines) {
        os << (opts.binary_line_numbers ? to_binary(num) : std::to_string(num)) << ": ";
        if (line.sort == LineSort::Agent) os << "A: ";
        if (line.sort == LineSort::General) os << "G: ";
        os << line.rule.to_string() << "\n";
    }
    return os.str();
}

std::string program_hash(const Program& p) {
    std::string text = print_program(p);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

std::string Diagnostics::to_string() const {
    std::ostringstream os;
    for (const auto& e : errors) os << "error: " << e << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

namespace {

struct SymbolTable {
    const Program& p;
    Diagnostics& diag;
    std::map<std::string, int> inferred; // non-tape symbols -> arity

    void use(const std::string& name, int arity, int line) {
        int ta = p.tape_arity(name);
        if (ta >= 0) {
            if (ta != arity)
                diag.errors.push_back("line " + std::to_string(line) + ": symbol '" + name +
                                      "' used with arity " + std::to_string(arity) +
                                      " but declared tape of arity " + std::to_string(ta));
            return;
        }
        auto [it, fresh] = inferred.emplace(name, arity);
        if (!fresh && it->second != arity)
            diag.errors.push_back("line " + std::to_string(line) + ": symbol '" + name +
                                  "' used with arities " + std::to_string(it->second) + " and " +
                                  std::to_string(arity));
    }

    void scan_formula(const Formula& f, std::set<std::string> bound_so, int line) {
        switch (f.kind()) {
        case Formula::Kind::Atom:
            if (!bound_so.count(f.name())) use(f.name(), static_cast<int>(f.args().size()), line);
            return;
        case Formula::Kind::ExistsSO:
            bound_so.insert(f.name());
            scan_formula(f.child(), bound_so, line);
            return;
        default:
            for (std::size_t i = 0; i < f.child_count(); ++i)
                scan_formula(f.child(i), bound_so, line);
            return;
        }
    }
};

struct Validator {
    const Program& p;
    Diagnostics diag;
    SymbolTable table{p, diag};

    std::string at(int line) { return "line " + std::to_string(line) + ": "; }

    void check_body_shape(const Formula& body, const std::vector<std::string>& head_vars,
                          int line, const std::string& what) {
        std::set<std::string> want(head_vars.begin(), head_vars.end());
        if (body.free_variables() != want)
            diag.errors.push_back(at(line) + what + " body free variables must be precisely the head variables");
    }

    void check_sentence(const std::optional<Formula>& g, int line, const std::string& what) {
        if (g && !g->free_variables().empty())
            diag.errors.push_back(at(line) + what + " must be a sentence (no free variables)");
    }

    void check_formula_dialect(const Formula& f, int line) {
        if (p.dialect == Dialect::RLO) {
            if (!f.is_first_order())
                diag.errors.push_back(at(line) + "RLO bodies must be first-order");
        } else if (!f.is_eso()) {
            diag.errors.push_back(at(line) +
                                  "formula is not existential second-order (exists2 appears in a negative or universal position)");
        }
        table.scan_formula(f, {}, line);
    }

    void check_jump_target(int target, int line) {
        if (!p.has_line(target))
            diag.warnings.push_back(at(line) + "jump target " + std::to_string(target) +
                                    " names no line; taking it halts the computation");
    }

    bool conditioned_allowed() const {
        return p.dialect == Dialect::NRL || p.dialect == Dialect::GRL;
    }

    // The four single kinds usable inside transformer tuples.
    static bool simple_transformer_kind(Rule::Kind k) {
        return k == Rule::Kind::Transform1 || k == Rule::Kind::Insert ||
               k == Rule::Kind::Delete || k == Rule::Kind::GuessRelation;
    }

    void check_single(const Rule& r, int line) {
        switch (r.kind()) {
        case Rule::Kind::Transform1:
            check_body_shape(r.body(), r.head_vars(), line, "transform");
            check_formula_dialect(r.body(), line);
            table.use(r.head(), static_cast<int>(r.head_vars().size()), line);
            if (r.guard()) {
                if (!conditioned_allowed())
                    diag.errors.push_back(at(line) + "conditioned transformers are only admitted in NRL and GRL");
                check_sentence(r.guard(), line, "transform condition");
                check_formula_dialect(*r.guard(), line);
            }
            return;
        case Rule::Kind::Insert:
            if (r.guard()) {
                if (!conditioned_allowed())
                    diag.errors.push_back(at(line) + "conditioned transformers are only admitted in NRL and GRL");
                check_sentence(r.guard(), line, "insert condition");
                check_formula_dialect(*r.guard(), line);
            }
            return;
        case Rule::Kind::Delete: {
            auto fv = r.body().free_variables();
            if (fv != std::set<std::string>{r.head()})
                diag.errors.push_back(at(line) + "delete body must have exactly the one free variable " + r.head());
            check_formula_dialect(r.body(), line);
            if (r.guard()) {
                if (!conditioned_allowed())
                    diag.errors.push_back(at(line) + "conditioned transformers are only admitted in NRL and GRL");
                check_sentence(r.guard(), line, "delete condition");
                check_formula_dialect(*r.guard(), line);
            }
            return;
        }
        case Rule::Kind::CondGoto:
            check_sentence(r.guard(), line, "goto condition");
            if (r.guard()) check_formula_dialect(*r.guard(), line);
            if (r.target() <= 0) diag.errors.push_back(at(line) + "goto target must be positive");
            check_jump_target(r.target(), line);
            return;
        case Rule::Kind::GuessRelation:
            if (r.declared_arity() >= 0) table.use(r.head(), r.declared_arity(), line);
            return;
        case Rule::Kind::GuessGoto:
            for (int t : r.targets()) {
                if (t <= 0) diag.errors.push_back(at(line) + "goto? target must be positive");
                check_jump_target(t, line);
            }
            return;
        default:
            diag.errors.push_back(at(line) + "rule kind not allowed in this position");
            return;
        }
    }

    void check_cond_tuple(const Rule& r, int line, bool transformer_only) {
        for (const auto& [g, inner] : r.arms()) {
            check_sentence(std::optional<Formula>(g), line, "case guard");
            check_formula_dialect(g, line);
            check_tuple_member(inner, line, transformer_only);
        }
        check_tuple_member(r.else_rule(), line, transformer_only);
    }

    void check_tuple_member(const Rule& r, int line, bool transformer_only) {
        if (transformer_only) {
            if (!simple_transformer_kind(r.kind()) || r.guard().has_value()) {
                diag.errors.push_back(at(line) +
                                      "transformer tuples admit only unconditioned transform, I, D and guess rules");
                return;
            }
            check_single(r, line);
            return;
        }
        switch (r.kind()) {
        case Rule::Kind::Transform1:
        case Rule::Kind::Insert:
        case Rule::Kind::Delete:
        case Rule::Kind::CondGoto:
            check_single(r, line);
            return;
        default:
            diag.errors.push_back(at(line) + "parallel rule arms admit transform, I, D and goto rules only");
            return;
        }
    }

    void check_line(int num, const ProgramLine& line) {
        const Rule& r = line.rule;
        const bool grl = p.dialect == Dialect::GRL;
        const bool nrl = p.dialect == Dialect::NRL;

        switch (r.kind()) {
        case Rule::Kind::Transform1:
        case Rule::Kind::Insert:
        case Rule::Kind::CondGoto:
            if (grl && !p.sorted())
                diag.errors.push_back(at(num) + "GRL lines are parallel transformers or flow control rules");
            check_single(r, num);
            return;
        case Rule::Kind::Delete:
        case Rule::Kind::GuessRelation:
            if (p.dialect == Dialect::RLO || p.dialect == Dialect::RL)
                diag.errors.push_back(at(num) + rule_name(r.kind()) + " is not part of " + dialect_name(p.dialect));
            if (grl && !p.sorted())
                diag.errors.push_back(at(num) + "GRL lines are parallel transformers or flow control rules");
            check_single(r, num);
            return;
        case Rule::Kind::GuessGoto:
            if (p.dialect == Dialect::RLO || p.dialect == Dialect::RL)
                diag.errors.push_back(at(num) + "goto? is not part of " + dialect_name(p.dialect));
            check_single(r, num);
            return;
        case Rule::Kind::CondRuleTuple:
            if (!nrl)
                diag.errors.push_back(at(num) + "conditional rule tuples are admitted in NRL only");
            check_cond_tuple(r, num, false);
            return;
        case Rule::Kind::ParallelRule:
            if (!nrl)
                diag.errors.push_back(at(num) + "parallel rules are admitted in NRL only");
            for (const Rule& arm : r.items()) {
                if (arm.kind() == Rule::Kind::CondRuleTuple)
                    check_cond_tuple(arm, num, false);
                else
                    check_tuple_member(arm, num, false);
            }
            return;
        case Rule::Kind::NondetTransformer:
            if (!nrl)
                diag.errors.push_back(at(num) + "choose lines are admitted in NRL only");
            check_nondet(r, num);
            return;
        case Rule::Kind::ParallelTransformer:
            if (!grl)
                diag.errors.push_back(at(num) + "parallel transformers are admitted in GRL only");
            for (const Rule& agent : r.items()) {
                if (agent.kind() != Rule::Kind::NondetTransformer) {
                    diag.errors.push_back(at(num) + "parallel transformer arms must be choose lists");
                    continue;
                }
                check_nondet(agent, num);
            }
            return;
        case Rule::Kind::CondFlowControl:
            if (p.dialect == Dialect::RLO || p.dialect == Dialect::RL)
                diag.errors.push_back(at(num) + "flow control rules are not part of " + dialect_name(p.dialect));
            for (const auto& [g, inner] : r.arms()) {
                check_sentence(std::optional<Formula>(g), num, "flow control guard");
                check_formula_dialect(g, num);
                if (inner.kind() != Rule::Kind::GuessGoto)
                    diag.errors.push_back(at(num) + "flow control arms must be goto? rules");
                else
                    check_single(inner, num);
            }
            if (r.else_rule().kind() != Rule::Kind::GuessGoto)
                diag.errors.push_back(at(num) + "flow control else arm must be a goto? rule");
            else
                check_single(r.else_rule(), num);
            return;
        }
    }

    void check_nondet(const Rule& r, int num) {
        if (r.items().empty()) diag.errors.push_back(at(num) + "choose list must not be empty");
        for (const Rule& opt : r.items()) {
            if (opt.kind() == Rule::Kind::CondRuleTuple)
                check_cond_tuple(opt, num, true);
            else
                check_tuple_member(opt, num, true);
        }
    }

    static std::string rule_name(Rule::Kind k) {
        switch (k) {
        case Rule::Kind::Delete: return "D";
        case Rule::Kind::GuessRelation: return "guess";
        default: return "rule";
        }
    }

    void run() {
        if (p.tape_arity("X_true") != 0)
            diag.errors.push_back("program must declare the nullary tape predicate X_true");
        std::set<std::string> tape_names;
        for (const auto& [name, arity] : p.tapes) {
            if (!tape_names.insert(name).second)
                diag.errors.push_back("duplicate tape declaration '" + name + "'");
            if (arity < 0) diag.errors.push_back("tape '" + name + "' has negative arity");
        }
        for (const auto& [num, line] : p.lines) {
            if (num <= 0) diag.errors.push_back("line numbers must be positive");
            if (p.dialect != Dialect::GRL && line.sort != LineSort::None)
                diag.errors.push_back(at(num) + "A/G labels are only admitted in GRL programs");
            check_line(num, line);
        }
        if (p.dialect == Dialect::GRL && p.sorted()) {
            if (p.agent_count <= 0)
                diag.errors.push_back("sorted GRL programs must declare a positive agent count");
            for (const auto& [num, line] : p.lines) {
                if (line.sort == LineSort::None) {
                    diag.errors.push_back(at(num) + "sorted GRL lines must carry an A: or G: label");
                } else if (line.sort == LineSort::Agent) {
                    if (line.rule.kind() != Rule::Kind::ParallelTransformer)
                        diag.errors.push_back(at(num) + "A-lines must be parallel transformers");
                    else if (p.agent_count > 0 &&
                             static_cast<int>(line.rule.items().size()) != p.agent_count)
                        diag.errors.push_back(at(num) + "A-line width " +
                                              std::to_string(line.rule.items().size()) +
                                              " does not match the declared agent count " +
                                              std::to_string(p.agent_count));
                } else { // General
                    switch (line.rule.kind()) {
                    case Rule::Kind::CondFlowControl:
                    case Rule::Kind::GuessGoto:
                        break;
                    case Rule::Kind::Transform1:
                    case Rule::Kind::Insert:
                    case Rule::Kind::Delete:
                    case Rule::Kind::GuessRelation:
                        if (line.rule.guard().has_value())
                            diag.errors.push_back(at(num) + "G-line single rules must be unconditioned");
                        break;
                    default:
                        diag.errors.push_back(at(num) +
                                              "G-lines are flow control rules or single transform, I, D, guess rules");
                    }
                }
            }
        }
    }
};

} // namespace

Diagnostics validate(const Program& p) {
    Validator v{p};
    v.run();
    return std::move(v.diag);
}

} // namespace relog
