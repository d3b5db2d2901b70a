#include "relog/logic.hpp"

namespace relog {

EsoPrefix split_eso_prefix(const Formula& f) {
    EsoPrefix p;
    Formula cur = f;
    while (cur.kind() == Formula::Kind::ExistsSO) {
        p.quantifiers.emplace_back(cur.name(), cur.so_arity());
        cur = cur.child();
    }
    p.matrix = cur;
    return p;
}

namespace {

void check_witness_atoms(const Formula& f, const std::string& y) {
    if (f.kind() == Formula::Kind::Atom && f.name() == y && f.args().size() != 1)
        throw Error("witness variable '" + y + "' must be used as a unary atom");
    if (f.kind() == Formula::Kind::ExistsSO && f.name() == y) return; // shadowed
    for (std::size_t i = 0; i < f.child_count(); ++i) check_witness_atoms(f.child(i), y);
}

} // namespace

void validate_lre(const LreSentence& s) {
    if (s.witness.empty()) throw Error("sentence has no witness variable");
    EsoPrefix p = split_eso_prefix(s.eso_part);
    if (!p.matrix.is_first_order())
        throw Error("matrix under the exists2 prefix is not first-order");
    if (!s.eso_part.free_variables().empty())
        throw Error("sentence has free first-order variables");
    for (const auto& q : p.quantifiers)
        if (q.first == s.witness)
            throw Error("witness variable '" + s.witness + "' is shadowed by the exists2 prefix");
    check_witness_atoms(s.eso_part, s.witness);
}

Structure expand_domain(const Structure& m, int fresh) {
    if (fresh < 0) throw Error("negative expansion");
    Structure out(m.domain_size() + fresh, m.vocabulary());
    for (const Symbol& s : m.vocabulary().symbols())
        out.set_interpretation(s.name, m.interpretation(s.name));
    if (m.vocabulary().distinguished_order()) {
        const std::string& lt = *m.vocabulary().distinguished_order();
        Relation r = m.interpretation(lt);
        for (int j = 0; j < fresh; ++j) {
            int fresh_elem = m.domain_size() + j;
            for (int e = 0; e < fresh_elem; ++e) r.insert(Tuple{e, fresh_elem});
        }
        out.set_interpretation(lt, std::move(r));
    }
    return out;
}

LreOutcome eval_lre_bounded(const LreSentence& s, const Structure& m, int max_new_elements,
                            const EvalOptions& opts) {
    validate_lre(s);
    for (int j = 0; j <= max_new_elements; ++j) {
        Structure expanded = expand_domain(m, j);
        Relation fresh_set;
        for (int e = m.domain_size(); e < expanded.domain_size(); ++e) fresh_set.insert(Tuple{e});
        Assignment a;
        a.second_order[s.witness] = {1, std::move(fresh_set)};
        if (eval_eso(s.eso_part, expanded, a, opts)) return LreOutcome::Accepted;
    }
    return LreOutcome::NotFoundWithinBudget;
}

Formula collapse_eso(const Formula& f) {
    EsoPrefix p = split_eso_prefix(f);
    if (p.quantifiers.empty())
        throw Error("collapse_eso: formula has no exists2 prefix");
    if (!p.matrix.is_first_order())
        throw Error("collapse_eso: matrix is not first-order");
    // A shadowed (repeated) name binds nothing; keep the innermost occurrence.
    std::vector<std::pair<std::string, int>> qs;
    for (auto it = p.quantifiers.rbegin(); it != p.quantifiers.rend(); ++it) {
        bool seen = false;
        for (const auto& q : qs)
            if (q.first == it->first) seen = true;
        if (!seen) qs.insert(qs.begin(), *it);
    }
    for (const auto& [name, arity] : qs)
        if (arity == 0)
            throw Error("collapse_eso: nullary quantified relation '" + name + "' unsupported");
    if (qs.size() == 1)
        return Formula::exists_so(qs[0].first, qs[0].second, p.matrix);
    if (qs.size() > 16) throw Error("collapse_eso: too many quantifiers");

    const int n = static_cast<int>(qs.size());
    int total = 0;
    for (const auto& q : qs) total += q.second;

    std::set<std::string> taken = f.all_names();
    const std::string u = fresh_name("_u", taken);
    taken.insert(u);
    const std::string v = fresh_name("_v", taken);
    taken.insert(v);
    const std::string z = fresh_name("_Z", taken);
    taken.insert(z);

    // Padding rewrite for domains with two distinct elements u, v: the block-i
    // content goes first, then a tag of (k - k_i - (i-1)) u's and (i-1) v's.
    // Tags of different blocks are never suffixes of one another, so the
    // images stay disjoint and every tuple of relations is representable.
    Formula pad = p.matrix;
    for (int i = 0; i < n; ++i) {
        const std::string name = qs[static_cast<std::size_t>(i)].first;
        const int arity = qs[static_cast<std::size_t>(i)].second;
        const int tag_len = total - arity;
        const int vs = i; // i is 0-based here
        pad = rewrite_atoms(pad, name, [&](const std::vector<std::string>& args) {
            if (static_cast<int>(args.size()) != arity)
                throw Error("collapse_eso: atom arity mismatch for '" + name + "'");
            std::vector<std::string> zargs = args;
            for (int t = 0; t < tag_len - vs; ++t) zargs.push_back(u);
            for (int t = 0; t < vs; ++t) zargs.push_back(v);
            return Formula::atom(z, std::move(zargs));
        });
    }
    Formula big = Formula::exists(
        u, Formula::exists(v, Formula::conj(Formula::negation(Formula::equal(u, v)), pad)));

    // One-element domains: every k-ary relation is a single bit, so the
    // second-order prefix reduces to a finite boolean disjunction.
    auto boolean_variant = [&](unsigned mask) {
        Formula g = p.matrix;
        for (int i = 0; i < n; ++i) {
            bool bit = (mask >> i) & 1u;
            g = rewrite_atoms(g, qs[static_cast<std::size_t>(i)].first,
                              [&](const std::vector<std::string>&) { return Formula::truth(bit); });
        }
        return g;
    };
    std::vector<Formula> variants;
    for (unsigned mask = 0; mask < (1u << n); ++mask) variants.push_back(boolean_variant(mask));
    const std::string a = fresh_name("_a", taken);
    taken.insert(a);
    const std::string b = fresh_name("_b", taken);
    Formula one_elt = Formula::conj(Formula::exists(a, Formula::forall(b, Formula::equal(a, b))),
                                    Formula::disj_all(std::move(variants)));

    // Empty domain: every quantified relation is forced empty.
    Formula empty_case = Formula::conj(
        Formula::negation(Formula::exists(a, Formula::equal(a, a))), boolean_variant(0));

    Formula body = Formula::disj(std::move(big), Formula::disj(std::move(one_elt), std::move(empty_case)));
    return Formula::exists_so(z, total, std::move(body));
}

namespace {

std::vector<std::string> numbered(const std::string& stem, int k) {
    std::vector<std::string> out;
    for (int i = 1; i <= k; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

Formula lex_less(const std::vector<std::string>& a, const std::vector<std::string>& b,
                 const std::string& order) {
    std::vector<Formula> alternatives;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<Formula> parts;
        for (std::size_t j = 0; j < i; ++j) parts.push_back(Formula::equal(a[j], b[j]));
        parts.push_back(Formula::atom(order, {a[i], b[i]}));
        alternatives.push_back(Formula::conj_all(std::move(parts)));
    }
    return Formula::disj_all(std::move(alternatives));
}

Formula tuple_equal(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(Formula::equal(a[i], b[i]));
    return Formula::conj_all(std::move(parts));
}

Formula forall_all(const std::vector<std::string>& vars, Formula f) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = Formula::forall(*it, std::move(f));
    return f;
}

Formula exists_all(const std::vector<std::string>& vars, Formula f) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = Formula::exists(*it, std::move(f));
    return f;
}

} // namespace

Formula builtin_max_formula(const std::string& z, int arity) {
    auto ys = numbered("y", arity);
    std::vector<std::string> args(ys.begin(), ys.end());
    return forall_all(ys, Formula::atom(z, args));
}

Formula builtin_step_formula(const std::string& z, int arity, const std::string& order) {
    auto xs = numbered("x", arity);
    auto ps = numbered("p", arity);
    auto ys = numbered("y", arity);

    Formula z_of_x = Formula::atom(z, xs);
    Formula max_z = builtin_max_formula(z, arity);

    // p is the lexicographically greatest tuple outside Z (the least
    // significant zero bit of the numeral).
    Formula p_is_border = Formula::conj(
        Formula::negation(Formula::atom(z, ps)),
        forall_all(ys, Formula::implies(lex_less(ps, ys, order), Formula::atom(z, ys))));
    Formula below_kept = Formula::conj(lex_less(xs, ps, order), z_of_x);
    Formula step_case =
        exists_all(ps, Formula::conj(p_is_border,
                                     Formula::disj(below_kept, tuple_equal(xs, ps))));

    return Formula::disj(Formula::conj(max_z, z_of_x), step_case);
}

} // namespace relog
