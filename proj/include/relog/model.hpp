#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relog/error.hpp"

namespace relog {

/// A tuple of domain elements. Elements are always 0..domain_size-1.
using Tuple = std::vector<int>;
using Relation = std::set<Tuple>;

enum class SymbolKind { Relation, Tape };

struct Symbol {
    std::string name;
    int arity = 0;
    SymbolKind kind = SymbolKind::Relation;

    bool operator==(const Symbol&) const = default;
};

/// Canonical symbol order: ascending by (name as byte string, then arity).
bool symbol_less(const Symbol& a, const Symbol& b);

/// An ordered set of relation symbols and tape predicates. Iteration order is
/// always the canonical symbol order. Names are unique across both kinds.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Throws VocabError on duplicate names.
    void add(const std::string& name, int arity, SymbolKind kind = SymbolKind::Relation);

    /// Marks an existing binary relation symbol as the distinguished order.
    void set_distinguished_order(const std::string& name);

    const std::optional<std::string>& distinguished_order() const { return order_; }
    bool contains(const std::string& name) const;
    const Symbol* find(const std::string& name) const;
    const Symbol& at(const std::string& name) const;

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

    bool operator==(const Vocabulary&) const = default;

private:
    std::vector<Symbol> symbols_; // sorted by symbol_less
    std::optional<std::string> order_;
};

/// A finite relational structure. Immutable by convention: operations return
/// new values and never mutate shared state.
class Structure {
public:
    Structure() = default;
    Structure(int domain_size, Vocabulary vocab);

    int domain_size() const { return domain_size_; }
    const Vocabulary& vocabulary() const { return vocab_; }

    const Relation& interpretation(const std::string& symbol) const;
    bool holds(const std::string& symbol, const Tuple& t) const;
    /// Truth value of a nullary symbol.
    bool nullary(const std::string& symbol) const;

    /// Replaces one interpretation; validates arity and element range.
    void set_interpretation(const std::string& symbol, Relation r);
    void set_nullary(const std::string& symbol, bool value);

    bool operator==(const Structure&) const = default;
    bool operator<(const Structure& other) const;

    /// Canonical one-line serialization; doubles as a hash/visited-set key.
    std::string key() const;

private:
    int domain_size_ = 0;
    Vocabulary vocab_;
    std::map<std::string, Relation> interp_;
};

/// First- and second-order variable bindings used during evaluation.
struct Assignment {
    std::map<std::string, int> first_order;
    std::map<std::string, std::pair<int, Relation>> second_order; // name -> (arity, tuples)
};

/// Expands m with fresh tape predicates, all interpreted empty.
/// Throws VocabError if a tape name collides with an existing symbol.
Structure pi_expand(const Structure& m, const std::vector<std::pair<std::string, int>>& tapes);

/// 0-based position of t in the lexicographic order of all arity-|t| tuples
/// over 0..domain_size-1 (first component most significant).
std::uint64_t lex_rank(const Tuple& t, int domain_size);

/// Inverse of lex_rank for a given arity.
Tuple lex_unrank(std::uint64_t rank, int domain_size, int arity);

/// domain_size^arity with the 0^0 = 1 convention. Throws BudgetError if the
/// result does not fit in 62 bits.
std::uint64_t tuple_space_size(int domain_size, int arity);

/// Binary encoding of a structure: 1^|M| 0, then one bit block per relation
/// symbol in canonical order, tuples ordered lexicographically under the given
/// element order. `order[i]` is the i-th smallest element. Tape predicates are
/// not encoded.
std::string encode(const Structure& m, const std::vector<int>& order);
std::string encode(const Structure& m); // identity order

/// Inverse of encode under the identity order; elements come out renamed
/// 0..n-1 in encoding order. Tape predicates in vocab decode as empty.
Structure decode(const std::string& bits, const Vocabulary& vocab);

/// Reads the relation as a domain_size^k-bit numeral (rank-0 tuple most
/// significant) and adds one; the all-ones relation is a fixed point.
Relation relation_increment(const Relation& r, int domain_size, int arity);

struct OrderCheck {
    bool ok = false;
    std::string violation; // names the violated axiom when !ok
};

/// Checks that the distinguished order is a strict total linear order.
OrderCheck validate_order(const Structure& m);

/// Parses the ".model" text format.
Structure parse_model(const std::string& text);
/// Canonical ".model" serialization (includes tape interpretations if any).
std::string print_model(const Structure& m);

/// Drops every tape predicate, keeping relation symbols and the order mark.
Structure tau_reduct(const Structure& m);

} // namespace relog
