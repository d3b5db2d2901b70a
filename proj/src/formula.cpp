#include "relog/formula.hpp"

#include <sstream>

namespace relog {

struct Formula::Node {
    Kind kind = Kind::True;
    std::string name;
    std::vector<std::string> args;
    int so_arity = 0;
    std::vector<Formula> kids;
};

namespace {
const std::shared_ptr<const Formula::Node>& true_node() {
    static const auto n = std::make_shared<const Formula::Node>();
    return n;
}
} // namespace

Formula::Formula() : node_(true_node()) {}

Formula Formula::truth(bool b) {
    auto n = std::make_shared<Node>();
    n->kind = b ? Kind::True : Kind::False;
    return Formula(std::move(n));
}

Formula Formula::atom(std::string name, std::vector<std::string> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->name = std::move(name);
    n->args = std::move(args);
    return Formula(std::move(n));
}

Formula Formula::equal(std::string x, std::string y) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Equal;
    n->args = {std::move(x), std::move(y)};
    return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->kids = {std::move(f)};
    return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->kids = {std::move(a), std::move(b)};
    return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->kids = {std::move(a), std::move(b)};
    return Formula(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Implies;
    n->kids = {std::move(a), std::move(b)};
    return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Exists;
    n->name = std::move(var);
    n->kids = {std::move(f)};
    return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Forall;
    n->name = std::move(var);
    n->kids = {std::move(f)};
    return Formula(std::move(n));
}

Formula Formula::exists_so(std::string var, int arity, Formula f) {
    if (arity < 0) throw Error("negative arity in exists2");
    auto n = std::make_shared<Node>();
    n->kind = Kind::ExistsSO;
    n->name = std::move(var);
    n->so_arity = arity;
    n->kids = {std::move(f)};
    return Formula(std::move(n));
}

Formula Formula::conj_all(std::vector<Formula> fs) {
    if (fs.empty()) return truth(true);
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(std::move(acc), std::move(fs[i]));
    return acc;
}

Formula Formula::disj_all(std::vector<Formula> fs) {
    if (fs.empty()) return truth(false);
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(std::move(acc), std::move(fs[i]));
    return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<std::string>& Formula::args() const { return node_->args; }
int Formula::so_arity() const { return node_->so_arity; }
const Formula& Formula::child(std::size_t i) const { return node_->kids.at(i); }
std::size_t Formula::child_count() const { return node_->kids.size(); }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind || a.name != b.name || a.args != b.args || a.so_arity != b.so_arity ||
        a.kids.size() != b.kids.size())
        return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!(a.kids[i] == b.kids[i])) return false;
    return true;
}

namespace {

void collect_free_vars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
        return;
    case Formula::Kind::Atom:
    case Formula::Kind::Equal:
        for (const auto& v : f.args())
            if (!bound.count(v)) out.insert(v);
        return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        bool was = bound.count(f.name()) > 0;
        bound.insert(f.name());
        collect_free_vars(f.child(), bound, out);
        if (!was) bound.erase(f.name());
        return;
    }
    case Formula::Kind::ExistsSO:
        collect_free_vars(f.child(), bound, out);
        return;
    default:
        for (std::size_t i = 0; i < f.child_count(); ++i)
            collect_free_vars(f.child(i), bound, out);
        return;
    }
}

void collect_free_preds(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        if (!bound.count(f.name())) out.insert(f.name());
        return;
    case Formula::Kind::ExistsSO: {
        bool was = bound.count(f.name()) > 0;
        bound.insert(f.name());
        collect_free_preds(f.child(), bound, out);
        if (!was) bound.erase(f.name());
        return;
    }
    default:
        for (std::size_t i = 0; i < f.child_count(); ++i)
            collect_free_preds(f.child(i), bound, out);
        return;
    }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
    if (!f.name().empty()) out.insert(f.name());
    for (const auto& a : f.args()) out.insert(a);
    for (std::size_t i = 0; i < f.child_count(); ++i) collect_names(f.child(i), out);
}

bool eso_ok(const Formula& f, bool positive, bool under_universal) {
    switch (f.kind()) {
    case Formula::Kind::ExistsSO:
        if (!positive || under_universal) return false;
        return eso_ok(f.child(), positive, under_universal);
    case Formula::Kind::Not:
        return eso_ok(f.child(), !positive, under_universal);
    case Formula::Kind::Implies:
        return eso_ok(f.child(0), !positive, under_universal) &&
               eso_ok(f.child(1), positive, under_universal);
    case Formula::Kind::Forall:
        return eso_ok(f.child(), positive, true);
    case Formula::Kind::Exists:
        return eso_ok(f.child(), positive, under_universal);
    default:
        for (std::size_t i = 0; i < f.child_count(); ++i)
            if (!eso_ok(f.child(i), positive, under_universal)) return false;
        return true;
    }
}

int precedence(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
    }
}

void print(const Formula& f, std::ostream& os, int parent_prec) {
    const int prec = precedence(f.kind());
    switch (f.kind()) {
    case Formula::Kind::True: os << "true"; return;
    case Formula::Kind::False: os << "false"; return;
    case Formula::Kind::Atom:
        if (f.name() == "<" && f.args().size() == 2) {
            os << f.args()[0] << " < " << f.args()[1];
            return;
        }
        os << f.name();
        if (!f.args().empty()) {
            os << '(';
            for (std::size_t i = 0; i < f.args().size(); ++i) {
                if (i) os << ',';
                os << f.args()[i];
            }
            os << ')';
        }
        return;
    case Formula::Kind::Equal:
        os << f.args()[0] << " = " << f.args()[1];
        return;
    case Formula::Kind::Not: {
        os << '!';
        const Formula& c = f.child();
        bool paren = precedence(c.kind()) < 4 || c.kind() == Formula::Kind::Exists ||
                     c.kind() == Formula::Kind::Forall || c.kind() == Formula::Kind::ExistsSO ||
                     (c.kind() == Formula::Kind::Atom && c.name() == "<" && c.args().size() == 2) ||
                     c.kind() == Formula::Kind::Equal;
        if (paren) os << '(';
        print(c, os, 4);
        if (paren) os << ')';
        return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
        bool paren = prec < parent_prec;
        if (paren) os << '(';
        // left child needs parens when at same precedence for Implies (right assoc)
        print(f.child(0), os, f.kind() == Formula::Kind::Implies ? prec + 1 : prec);
        os << (f.kind() == Formula::Kind::And ? " & " : f.kind() == Formula::Kind::Or ? " | " : " -> ");
        print(f.child(1), os, prec);
        if (paren) os << ')';
        return;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        bool paren = parent_prec > 1;
        if (paren) os << '(';
        os << (f.kind() == Formula::Kind::Exists ? "exists " : "forall ") << f.name() << ". ";
        print(f.child(), os, 0);
        if (paren) os << ')';
        return;
    }
    case Formula::Kind::ExistsSO: {
        bool paren = parent_prec > 1;
        if (paren) os << '(';
        os << "exists2 " << f.name() << ':' << f.so_arity() << ". ";
        print(f.child(), os, 0);
        if (paren) os << ')';
        return;
    }
    }
}

} // namespace

std::set<std::string> Formula::free_variables() const {
    std::set<std::string> bound, out;
    collect_free_vars(*this, bound, out);
    return out;
}

std::set<std::string> Formula::free_predicates() const {
    std::set<std::string> bound, out;
    collect_free_preds(*this, bound, out);
    return out;
}

std::set<std::string> Formula::all_names() const {
    std::set<std::string> out;
    collect_names(*this, out);
    return out;
}

bool Formula::is_first_order() const {
    if (kind() == Kind::ExistsSO) return false;
    for (std::size_t i = 0; i < child_count(); ++i)
        if (!child(i).is_first_order()) return false;
    return true;
}

bool Formula::is_eso() const { return eso_ok(*this, true, false); }

std::string Formula::to_string() const {
    std::ostringstream os;
    print(*this, os, 0);
    return os.str();
}

Formula rewrite_atoms(const Formula& f, const std::string& predicate,
                      const std::function<Formula(const std::vector<std::string>&)>& make) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        if (f.name() == predicate) return make(f.args());
        return f;
    case Formula::Kind::ExistsSO:
        if (f.name() == predicate) return f; // shadowed below this binder
        return Formula::exists_so(f.name(), f.so_arity(), rewrite_atoms(f.child(), predicate, make));
    case Formula::Kind::Not:
        return Formula::negation(rewrite_atoms(f.child(), predicate, make));
    case Formula::Kind::And:
        return Formula::conj(rewrite_atoms(f.child(0), predicate, make),
                             rewrite_atoms(f.child(1), predicate, make));
    case Formula::Kind::Or:
        return Formula::disj(rewrite_atoms(f.child(0), predicate, make),
                             rewrite_atoms(f.child(1), predicate, make));
    case Formula::Kind::Implies:
        return Formula::implies(rewrite_atoms(f.child(0), predicate, make),
                                rewrite_atoms(f.child(1), predicate, make));
    case Formula::Kind::Exists:
        return Formula::exists(f.name(), rewrite_atoms(f.child(), predicate, make));
    case Formula::Kind::Forall:
        return Formula::forall(f.name(), rewrite_atoms(f.child(), predicate, make));
    default:
        return f;
    }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int i = 0;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

} // namespace relog
