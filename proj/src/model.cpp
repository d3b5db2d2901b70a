#include "relog/model.hpp"

#include <algorithm>
#include <sstream>

namespace relog {

bool symbol_less(const Symbol& a, const Symbol& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.arity < b.arity;
}

void Vocabulary::add(const std::string& name, int arity, SymbolKind kind) {
    if (name.empty()) throw VocabError("empty symbol name");
    if (arity < 0) throw VocabError("negative arity for symbol '" + name + "'");
    if (contains(name))
        throw VocabError("duplicate symbol '" + name + "' in vocabulary");
    Symbol s{name, arity, kind};
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), s, symbol_less);
    symbols_.insert(it, std::move(s));
}

void Vocabulary::set_distinguished_order(const std::string& name) {
    const Symbol* s = find(name);
    if (!s) throw VocabError("distinguished order '" + name + "' is not in the vocabulary");
    if (s->arity != 2 || s->kind != SymbolKind::Relation)
        throw VocabError("distinguished order '" + name + "' must be a binary relation symbol");
    order_ = name;
}

bool Vocabulary::contains(const std::string& name) const { return find(name) != nullptr; }

const Symbol* Vocabulary::find(const std::string& name) const {
    for (const Symbol& s : symbols_)
        if (s.name == name) return &s;
    return nullptr;
}

const Symbol& Vocabulary::at(const std::string& name) const {
    const Symbol* s = find(name);
    if (!s) throw VocabError("unknown symbol '" + name + "'");
    return *s;
}

Structure::Structure(int domain_size, Vocabulary vocab)
    : domain_size_(domain_size), vocab_(std::move(vocab)) {
    if (domain_size < 0) throw Error("negative domain size");
    for (const Symbol& s : vocab_.symbols()) interp_[s.name] = {};
}

const Relation& Structure::interpretation(const std::string& symbol) const {
    auto it = interp_.find(symbol);
    if (it == interp_.end()) throw EvalError("symbol '" + symbol + "' is not interpreted");
    return it->second;
}

bool Structure::holds(const std::string& symbol, const Tuple& t) const {
    return interpretation(symbol).count(t) > 0;
}

bool Structure::nullary(const std::string& symbol) const {
    return holds(symbol, Tuple{});
}

void Structure::set_interpretation(const std::string& symbol, Relation r) {
    const Symbol& s = vocab_.at(symbol);
    for (const Tuple& t : r) {
        if (static_cast<int>(t.size()) != s.arity)
            throw Error("tuple arity mismatch for symbol '" + symbol + "'");
        for (int e : t)
            if (e < 0 || e >= domain_size_)
                throw Error("tuple component out of range for symbol '" + symbol + "'");
    }
    interp_[symbol] = std::move(r);
}

void Structure::set_nullary(const std::string& symbol, bool value) {
    set_interpretation(symbol, value ? Relation{Tuple{}} : Relation{});
}

bool Structure::operator<(const Structure& other) const {
    if (domain_size_ != other.domain_size_) return domain_size_ < other.domain_size_;
    if (!(vocab_ == other.vocab_)) {
        // compare by symbol listing
        auto ka = key(), kb = other.key();
        return ka < kb;
    }
    return interp_ < other.interp_;
}

std::string Structure::key() const {
    std::ostringstream os;
    os << domain_size_ << ';';
    for (const Symbol& s : vocab_.symbols()) {
        os << s.name << '/' << s.arity << (s.kind == SymbolKind::Tape ? "t" : "r");
        if (vocab_.distinguished_order() && *vocab_.distinguished_order() == s.name) os << '!';
        os << '=';
        auto it = interp_.find(s.name);
        if (it != interp_.end()) {
            for (const Tuple& t : it->second) {
                os << '(';
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (i) os << ',';
                    os << t[i];
                }
                os << ')';
            }
        }
        os << ';';
    }
    return os.str();
}

Structure pi_expand(const Structure& m, const std::vector<std::pair<std::string, int>>& tapes) {
    Vocabulary v = m.vocabulary();
    for (const auto& [name, arity] : tapes) {
        if (v.contains(name))
            throw VocabError("tape predicate '" + name + "' collides with the input vocabulary");
        v.add(name, arity, SymbolKind::Tape);
    }
    Structure out(m.domain_size(), v);
    for (const Symbol& s : m.vocabulary().symbols())
        out.set_interpretation(s.name, m.interpretation(s.name));
    // tape predicates stay empty (nullary: false)
    return out;
}

std::uint64_t tuple_space_size(int domain_size, int arity) {
    std::uint64_t r = 1;
    for (int i = 0; i < arity; ++i) {
        if (domain_size == 0) return 0;
        if (r > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(domain_size))
            throw BudgetError("tuple space exceeds 2^62");
        r *= static_cast<std::uint64_t>(domain_size);
    }
    return r;
}

std::uint64_t lex_rank(const Tuple& t, int domain_size) {
    std::uint64_t rank = 0;
    for (int c : t) {
        if (c < 0 || c >= domain_size)
            throw Error("lex_rank: component out of range");
        rank = rank * static_cast<std::uint64_t>(domain_size) + static_cast<std::uint64_t>(c);
    }
    return rank;
}

Tuple lex_unrank(std::uint64_t rank, int domain_size, int arity) {
    Tuple t(static_cast<std::size_t>(arity), 0);
    for (int i = arity - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<std::uint64_t>(domain_size));
        rank /= static_cast<std::uint64_t>(domain_size);
    }
    return t;
}

std::string encode(const Structure& m, const std::vector<int>& order) {
    const int n = m.domain_size();
    if (static_cast<int>(order.size()) != n) throw Error("encode: order is not a permutation of the domain");
    std::vector<int> pos(static_cast<std::size_t>(n), -1); // element -> position
    for (int i = 0; i < n; ++i) {
        int e = order[static_cast<std::size_t>(i)];
        if (e < 0 || e >= n || pos[static_cast<std::size_t>(e)] != -1)
            throw Error("encode: order is not a permutation of the domain");
        pos[static_cast<std::size_t>(e)] = i;
    }
    std::string bits(static_cast<std::size_t>(n), '1');
    bits.push_back('0');
    for (const Symbol& s : m.vocabulary().symbols()) {
        if (s.kind != SymbolKind::Relation) continue;
        std::uint64_t len = tuple_space_size(n, s.arity);
        std::string block(static_cast<std::size_t>(len), '0');
        Tuple mapped;
        for (const Tuple& t : m.interpretation(s.name)) {
            mapped.clear();
            for (int e : t) mapped.push_back(pos[static_cast<std::size_t>(e)]);
            block[static_cast<std::size_t>(lex_rank(mapped, n))] = '1';
        }
        bits += block;
    }
    return bits;
}

std::string encode(const Structure& m) {
    std::vector<int> id(static_cast<std::size_t>(m.domain_size()));
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    return encode(m, id);
}

Structure decode(const std::string& bits, const Vocabulary& vocab) {
    std::size_t i = 0;
    while (i < bits.size() && bits[i] == '1') ++i;
    if (i == bits.size()) throw Error("decode: missing 0 terminator after the domain prefix");
    if (bits[i] != '0') throw Error("decode: bad character in the domain prefix");
    const int n = static_cast<int>(i);
    ++i;
    Structure out(n, vocab);
    for (const Symbol& s : vocab.symbols()) {
        if (s.kind != SymbolKind::Relation) continue;
        std::uint64_t len = tuple_space_size(n, s.arity);
        if (bits.size() - i < len)
            throw Error("decode: missing relation block for symbol '" + s.name + "'");
        Relation r;
        for (std::uint64_t b = 0; b < len; ++b) {
            char c = bits[i + static_cast<std::size_t>(b)];
            if (c == '1')
                r.insert(lex_unrank(b, n, s.arity));
            else if (c != '0')
                throw Error("decode: bad character in relation block");
        }
        out.set_interpretation(s.name, std::move(r));
        i += static_cast<std::size_t>(len);
    }
    if (i != bits.size()) throw Error("decode: trailing bits after the last relation block");
    return out;
}

Relation relation_increment(const Relation& r, int domain_size, int arity) {
    const std::uint64_t len = tuple_space_size(domain_size, arity);
    std::vector<bool> bit(static_cast<std::size_t>(len), false);
    for (const Tuple& t : r) {
        if (static_cast<int>(t.size()) != arity) throw Error("relation_increment: tuple arity mismatch");
        bit[static_cast<std::size_t>(lex_rank(t, domain_size))] = true;
    }
    // Leftmost bit (rank 0) is most significant; add one starting from the
    // least significant end. All-ones is a fixed point.
    bool allones = true;
    for (bool b : bit)
        if (!b) { allones = false; break; }
    if (!allones) {
        for (std::uint64_t i = len; i-- > 0;) {
            std::size_t p = static_cast<std::size_t>(i);
            if (bit[p]) {
                bit[p] = false;
            } else {
                bit[p] = true;
                break;
            }
        }
    }
    Relation out;
    for (std::uint64_t i = 0; i < len; ++i)
        if (bit[static_cast<std::size_t>(i)]) out.insert(lex_unrank(i, domain_size, arity));
    return out;
}

OrderCheck validate_order(const Structure& m) {
    const auto& name = m.vocabulary().distinguished_order();
    if (!name) return {false, "no distinguished order symbol"};
    const Relation& lt = m.interpretation(*name);
    const int n = m.domain_size();
    for (int a = 0; a < n; ++a)
        if (lt.count(Tuple{a, a})) return {false, "irreflexivity"};
    for (const Tuple& ab : lt)
        for (const Tuple& bc : lt)
            if (ab[1] == bc[0] && !lt.count(Tuple{ab[0], bc[1]}))
                return {false, "transitivity"};
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!lt.count(Tuple{a, b}) && !lt.count(Tuple{b, a}))
                return {false, "totality"};
    return {true, ""};
}

Structure tau_reduct(const Structure& m) {
    Vocabulary v;
    for (const Symbol& s : m.vocabulary().symbols())
        if (s.kind == SymbolKind::Relation) v.add(s.name, s.arity, s.kind);
    if (m.vocabulary().distinguished_order() && v.contains(*m.vocabulary().distinguished_order()))
        v.set_distinguished_order(*m.vocabulary().distinguished_order());
    Structure out(m.domain_size(), v);
    for (const Symbol& s : v.symbols())
        out.set_interpretation(s.name, m.interpretation(s.name));
    return out;
}

std::string print_model(const Structure& m) {
    std::ostringstream os;
    os << "domain " << m.domain_size() << "\n";
    if (m.vocabulary().distinguished_order())
        os << "order " << *m.vocabulary().distinguished_order() << "\n";
    for (const Symbol& s : m.vocabulary().symbols()) {
        os << (s.kind == SymbolKind::Tape ? "tape " : "rel ") << s.name << ' ' << s.arity << " { ";
        if (s.arity == 0) {
            os << (m.nullary(s.name) ? "true " : "false ");
        } else {
            for (const Tuple& t : m.interpretation(s.name)) {
                os << '(';
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (i) os << ',';
                    os << t[i];
                }
                os << ") ";
            }
        }
        os << "}\n";
    }
    return os.str();
}

} // namespace relog
