#include "relog/eval.hpp"

namespace relog {

namespace {

struct Evaluator {
    const Structure& m;
    const EvalOptions& opts;
    std::uint64_t candidates = 0;

    std::vector<std::pair<std::string, int>> fo_env;
    struct SoBinding {
        std::string name;
        int arity;
        const Relation* rel;
    };
    std::vector<SoBinding> so_env;
    Tuple scratch;

    Evaluator(const Structure& m_, const EvalOptions& o) : m(m_), opts(o) {}

    int lookup_var(const std::string& v) const {
        for (auto it = fo_env.rbegin(); it != fo_env.rend(); ++it)
            if (it->first == v) return it->second;
        throw EvalError("unbound variable '" + v + "'");
    }

    bool atom_truth(const Formula& f) {
        scratch.clear();
        for (const auto& v : f.args()) scratch.push_back(lookup_var(v));
        for (auto it = so_env.rbegin(); it != so_env.rend(); ++it) {
            if (it->name == f.name()) {
                if (it->arity != static_cast<int>(scratch.size()))
                    throw EvalError("arity mismatch for '" + f.name() + "'");
                return it->rel->count(scratch) > 0;
            }
        }
        const Symbol* sym = m.vocabulary().find(f.name());
        if (!sym) throw EvalError("unknown symbol '" + f.name() + "'");
        if (sym->arity != static_cast<int>(scratch.size()))
            throw EvalError("arity mismatch for '" + f.name() + "'");
        return m.holds(f.name(), scratch);
    }

    bool eval(const Formula& f) {
        switch (f.kind()) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Atom: return atom_truth(f);
        case Formula::Kind::Equal:
            return lookup_var(f.args()[0]) == lookup_var(f.args()[1]);
        case Formula::Kind::Not: return !eval(f.child());
        case Formula::Kind::And: return eval(f.child(0)) && eval(f.child(1));
        case Formula::Kind::Or: return eval(f.child(0)) || eval(f.child(1));
        case Formula::Kind::Implies: return !eval(f.child(0)) || eval(f.child(1));
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            const bool is_exists = f.kind() == Formula::Kind::Exists;
            fo_env.emplace_back(f.name(), 0);
            bool result = !is_exists;
            for (int e = 0; e < m.domain_size(); ++e) {
                fo_env.back().second = e;
                if (eval(f.child()) == is_exists) {
                    result = is_exists;
                    break;
                }
            }
            fo_env.pop_back();
            return result;
        }
        case Formula::Kind::ExistsSO: return eval_so(f);
        }
        throw EvalError("unhandled formula node");
    }

    bool eval_so(const Formula& f) {
        // A quantifier whose variable never occurs as an atom below can be
        // dropped: any interpretation works.
        if (!f.child().free_predicates().count(f.name())) return eval(f.child());

        const std::uint64_t space = tuple_space_size(m.domain_size(), f.so_arity());
        if (space >= 62) throw BudgetError("exists2 candidate space exceeds 2^62");
        const std::uint64_t count = std::uint64_t{1} << space;

        std::vector<Tuple> all;
        all.reserve(static_cast<std::size_t>(space));
        for (std::uint64_t r = 0; r < space; ++r)
            all.push_back(lex_unrank(r, m.domain_size(), f.so_arity()));

        Relation candidate;
        so_env.push_back({f.name(), f.so_arity(), &candidate});
        bool found = false;
        for (std::uint64_t v = 0; v < count; ++v) {
            if (++candidates > opts.max_candidates) {
                so_env.pop_back();
                throw BudgetError("exists2 candidate budget exceeded");
            }
            candidate.clear();
            // rank-0 tuple is the most significant bit of the numeral v
            for (std::uint64_t r = 0; r < space; ++r)
                if ((v >> (space - 1 - r)) & 1) candidate.insert(all[static_cast<std::size_t>(r)]);
            if (eval(f.child())) {
                found = true;
                break;
            }
        }
        so_env.pop_back();
        return found;
    }
};

bool run_eval(const Formula& f, const Structure& m, const Assignment& a, const EvalOptions& opts) {
    Evaluator ev(m, opts);
    for (const auto& [v, e] : a.first_order) {
        if (e < 0 || e >= m.domain_size())
            throw EvalError("assignment maps '" + v + "' outside the domain");
        ev.fo_env.emplace_back(v, e);
    }
    for (const auto& [v, r] : a.second_order)
        ev.so_env.push_back({v, r.first, &r.second});
    return ev.eval(f);
}

} // namespace

bool eval_fo(const Formula& f, const Structure& m, const Assignment& a) {
    if (!f.is_first_order()) throw EvalError("eval_fo: formula has a second-order quantifier");
    EvalOptions opts;
    return run_eval(f, m, a, opts);
}

bool eval_eso(const Formula& f, const Structure& m, const Assignment& a, const EvalOptions& opts) {
    return run_eval(f, m, a, opts);
}

} // namespace relog
