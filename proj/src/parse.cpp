#include "relog/parse.hpp"

#include <cctype>
#include <set>

namespace relog {

namespace {

enum class Tok {
    Ident, Number,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Comma, Dot, Colon, ColonDash, Equal, Less, Bang, Amp, Pipe, PipePipe,
    Arrow, FatArrow, Semi, Question,
    End
};

struct Token {
    Tok type = Tok::End;
    std::string text;
    long num = 0;
    int line = 1;
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    auto push = [&](Tok t, std::string text = "", long num = 0) {
        out.push_back(Token{t, std::move(text), num, line});
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            push(Tok::Ident, src.substr(i, j - i));
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            std::string text = src.substr(i, j - i);
            push(Tok::Number, text, std::stol(text));
            i = j;
            continue;
        }
        switch (c) {
        case '(': push(Tok::LParen); ++i; break;
        case ')': push(Tok::RParen); ++i; break;
        case '{': push(Tok::LBrace); ++i; break;
        case '}': push(Tok::RBrace); ++i; break;
        case '[': push(Tok::LBracket); ++i; break;
        case ']': push(Tok::RBracket); ++i; break;
        case ',': push(Tok::Comma); ++i; break;
        case '.': push(Tok::Dot); ++i; break;
        case ';': push(Tok::Semi); ++i; break;
        case '?': push(Tok::Question); ++i; break;
        case '!': push(Tok::Bang); ++i; break;
        case '&': push(Tok::Amp); ++i; break;
        case '<': push(Tok::Less, "<"); ++i; break;
        case ':':
            if (i + 1 < src.size() && src[i + 1] == '-') {
                push(Tok::ColonDash);
                i += 2;
            } else {
                push(Tok::Colon);
                ++i;
            }
            break;
        case '=':
            if (i + 1 < src.size() && src[i + 1] == '>') {
                push(Tok::FatArrow);
                i += 2;
            } else {
                push(Tok::Equal);
                ++i;
            }
            break;
        case '|':
            if (i + 1 < src.size() && src[i + 1] == '|') {
                push(Tok::PipePipe);
                i += 2;
            } else {
                push(Tok::Pipe);
                ++i;
            }
            break;
        case '-':
            if (i + 1 < src.size() && src[i + 1] == '>') {
                push(Tok::Arrow);
                i += 2;
            } else {
                throw ParseError("stray '-'", line);
            }
            break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line);
        }
    }
    out.push_back(Token{Tok::End, "", 0, line});
    return out;
}

const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words = {"true", "false", "exists", "forall", "exists2",
                                                "goto", "if",    "else",   "case",    "par",
                                                "choose", "guess", "I",     "D",       "end"};
    return words;
}

struct Parser {
    std::vector<Token> toks;
    std::size_t pos = 0;
    Dialect dialect = Dialect::NRL;

    explicit Parser(const std::string& src) : toks(tokenize(src)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t p = pos + ahead;
        return p < toks.size() ? toks[p] : toks.back();
    }
    const Token& get() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }
    bool accept(Tok t) {
        if (peek().type == t) {
            ++pos;
            return true;
        }
        return false;
    }
    bool accept_word(const std::string& w) {
        if (peek().type == Tok::Ident && peek().text == w) {
            ++pos;
            return true;
        }
        return false;
    }
    const Token& expect(Tok t, const std::string& what) {
        if (peek().type != t) throw ParseError("expected " + what, peek().line);
        return toks[pos++];
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line); }

    bool at_word(const std::string& w, std::size_t ahead = 0) const {
        return peek(ahead).type == Tok::Ident && peek(ahead).text == w;
    }

    bool is_formula_start(const Token& t) const {
        switch (t.type) {
        case Tok::Bang:
        case Tok::LParen:
            return true;
        case Tok::Ident:
            if (t.text == "true" || t.text == "false" || t.text == "exists" ||
                t.text == "forall" || t.text == "exists2")
                return true;
            return !reserved_words().count(t.text);
        default:
            return false;
        }
    }

    std::string parse_name() {
        if (peek().type == Tok::Less) {
            ++pos;
            return "<";
        }
        const Token& t = expect(Tok::Ident, "a name");
        return t.text;
    }

    std::string parse_variable() {
        const Token& t = peek();
        if (t.type != Tok::Ident || reserved_words().count(t.text))
            fail("expected a variable name");
        ++pos;
        return t.text;
    }

    // ---- formulas -------------------------------------------------------

    Formula parse_formula() { return parse_implies(); }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (accept(Tok::Arrow)) return Formula::implies(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (peek().type == Tok::Pipe) {
            // Inside case tuples a '|' may separate arms instead: speculate.
            std::size_t save = pos;
            ++pos;
            if (!is_formula_start(peek())) {
                pos = save;
                break;
            }
            Formula rhs = parse_and();
            if (peek().type == Tok::FatArrow) {
                pos = save; // that was the next arm's guard
                break;
            }
            lhs = Formula::disj(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_unary();
        while (accept(Tok::Amp)) lhs = Formula::conj(std::move(lhs), parse_unary());
        return lhs;
    }

    Formula parse_unary() {
        if (accept(Tok::Bang)) return Formula::negation(parse_unary());
        if (at_word("exists")) {
            ++pos;
            std::string v = parse_variable();
            expect(Tok::Dot, "'.' after the quantified variable");
            return Formula::exists(std::move(v), parse_formula());
        }
        if (at_word("forall")) {
            ++pos;
            std::string v = parse_variable();
            expect(Tok::Dot, "'.' after the quantified variable");
            return Formula::forall(std::move(v), parse_formula());
        }
        if (at_word("exists2")) {
            ++pos;
            std::string v = parse_variable();
            expect(Tok::Colon, "':' after the relation variable");
            long k = expect(Tok::Number, "an arity").num;
            expect(Tok::Dot, "'.' after the arity");
            return Formula::exists_so(std::move(v), static_cast<int>(k), parse_formula());
        }
        return parse_primary();
    }

    Formula parse_primary() {
        if (accept_word("true")) return Formula::truth(true);
        if (accept_word("false")) return Formula::truth(false);
        if (accept(Tok::LParen)) {
            Formula f = parse_formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        const Token& t = peek();
        if (t.type != Tok::Ident || reserved_words().count(t.text))
            fail("expected a formula");
        std::string name = t.text;
        ++pos;
        if (accept(Tok::LParen)) {
            std::vector<std::string> args;
            if (!accept(Tok::RParen)) {
                args.push_back(parse_variable());
                while (accept(Tok::Comma)) args.push_back(parse_variable());
                expect(Tok::RParen, "')'");
            }
            return Formula::atom(std::move(name), std::move(args));
        }
        if (accept(Tok::Equal)) {
            std::string rhs = parse_variable();
            return Formula::equal(std::move(name), std::move(rhs));
        }
        if (accept(Tok::Less)) {
            std::string rhs = parse_variable();
            return Formula::atom("<", {std::move(name), std::move(rhs)});
        }
        return Formula::atom(std::move(name), {}); // nullary atom
    }

    // ---- rules ----------------------------------------------------------

    std::optional<Formula> parse_opt_if_guard() {
        if (accept_word("if")) return parse_formula();
        return std::nullopt;
    }

    Rule parse_rule() {
        if (at_word("I")) {
            ++pos;
            if (accept(Tok::ColonDash)) return Rule::insert(parse_formula());
            if (accept_word("if")) return Rule::insert(parse_formula());
            return Rule::insert();
        }
        if (at_word("D")) {
            ++pos;
            expect(Tok::LParen, "'(' after D");
            std::string var = parse_variable();
            expect(Tok::RParen, "')'");
            expect(Tok::ColonDash, "':-'");
            Formula body = parse_formula();
            return Rule::del(std::move(var), std::move(body), parse_opt_if_guard());
        }
        if (at_word("goto")) {
            ++pos;
            if (accept(Tok::Question)) {
                expect(Tok::LParen, "'(' after goto?");
                std::vector<int> targets;
                if (!accept(Tok::RParen)) {
                    targets.push_back(static_cast<int>(expect(Tok::Number, "a line number").num));
                    while (accept(Tok::Comma))
                        targets.push_back(static_cast<int>(expect(Tok::Number, "a line number").num));
                    expect(Tok::RParen, "')'");
                }
                return Rule::guess_goto(std::move(targets));
            }
            int target = static_cast<int>(expect(Tok::Number, "a line number").num);
            if (accept_word("if")) return Rule::cond_goto(target, parse_formula());
            return Rule::cond_goto(target);
        }
        if (at_word("guess")) {
            ++pos;
            std::string name = parse_name();
            int arity = -1;
            if (accept(Tok::Colon)) arity = static_cast<int>(expect(Tok::Number, "an arity").num);
            return Rule::guess(std::move(name), arity);
        }
        if (at_word("case")) return parse_case_tuple();
        if (at_word("par")) return parse_par();
        if (at_word("choose")) return parse_choose();
        // Transform1: HEAD [ (vars) ] :- body [if guard]
        std::string head = parse_name();
        std::vector<std::string> vars;
        if (accept(Tok::LParen)) {
            if (!accept(Tok::RParen)) {
                vars.push_back(parse_variable());
                while (accept(Tok::Comma)) vars.push_back(parse_variable());
                expect(Tok::RParen, "')'");
            }
        }
        expect(Tok::ColonDash, "':-' in a transform rule");
        Formula body = parse_formula();
        return Rule::transform1(std::move(head), std::move(vars), std::move(body),
                                parse_opt_if_guard());
    }

    Rule parse_case_tuple() {
        expect(Tok::Ident, "'case'"); // the caller checked the word
        std::vector<std::pair<Formula, Rule>> arms;
        while (true) {
            if (accept_word("else")) {
                expect(Tok::FatArrow, "'=>' after else");
                Rule else_rule = parse_rule();
                bool all_flow = else_rule.kind() == Rule::Kind::GuessGoto;
                for (const auto& [g, r] : arms)
                    all_flow = all_flow && r.kind() == Rule::Kind::GuessGoto;
                if (all_flow) return Rule::cond_flow(std::move(arms), std::move(else_rule));
                return Rule::cond_tuple(std::move(arms), std::move(else_rule));
            }
            Formula g = parse_formula();
            expect(Tok::FatArrow, "'=>' after the case guard");
            Rule r = parse_rule();
            arms.emplace_back(std::move(g), std::move(r));
            expect(Tok::Pipe, "'|' between case arms");
        }
    }

    Rule parse_par() {
        expect(Tok::Ident, "'par'");
        expect(Tok::LBracket, "'[' after par");
        std::vector<Rule> arms;
        arms.push_back(parse_rule());
        while (accept(Tok::PipePipe)) arms.push_back(parse_rule());
        expect(Tok::RBracket, "']' closing par");
        bool any_choose = false;
        for (const Rule& a : arms) any_choose |= a.kind() == Rule::Kind::NondetTransformer;
        if (dialect == Dialect::GRL || any_choose) {
            for (Rule& a : arms)
                if (a.kind() != Rule::Kind::NondetTransformer) a = Rule::nondet({a});
            return Rule::parallel_transformer(std::move(arms));
        }
        return Rule::parallel_rule(std::move(arms));
    }

    Rule parse_choose() {
        expect(Tok::Ident, "'choose'");
        expect(Tok::LBracket, "'[' after choose");
        std::vector<Rule> options;
        options.push_back(parse_rule());
        while (accept(Tok::Semi)) options.push_back(parse_rule());
        expect(Tok::RBracket, "']' closing choose");
        return Rule::nondet(std::move(options));
    }

    // ---- programs -------------------------------------------------------

    Program parse_program() {
        Program p;
        if (!accept_word("program")) fail("expected 'program DIALECT' header");
        std::string d = expect(Tok::Ident, "a dialect name").text;
        if (d == "RLO") p.dialect = Dialect::RLO;
        else if (d == "RL") p.dialect = Dialect::RL;
        else if (d == "NRL") p.dialect = Dialect::NRL;
        else if (d == "GRL") p.dialect = Dialect::GRL;
        else fail("unknown dialect '" + d + "'");
        dialect = p.dialect;
        if (accept_word("agents"))
            p.agent_count = static_cast<int>(expect(Tok::Number, "an agent count").num);
        while (at_word("tape")) {
            ++pos;
            std::string name = parse_name();
            int arity = static_cast<int>(expect(Tok::Number, "a tape arity").num);
            p.tapes.emplace_back(std::move(name), arity);
        }
        while (peek().type != Tok::End) {
            int line_no = peek().line;
            long num = expect(Tok::Number, "a line number").num;
            expect(Tok::Colon, "':' after the line number");
            if (num <= 0) throw ParseError("line numbers must be positive", line_no);
            LineSort sort = LineSort::None;
            if (peek().type == Tok::Ident && peek(1).type == Tok::Colon &&
                (peek().text == "A" || peek().text == "G")) {
                sort = peek().text == "A" ? LineSort::Agent : LineSort::General;
                pos += 2;
            }
            Rule r = parse_rule();
            if (!p.lines.emplace(static_cast<int>(num), ProgramLine{sort, std::move(r)}).second)
                throw ParseError("duplicate line number " + std::to_string(num), line_no);
        }
        return p;
    }

    // ---- models ---------------------------------------------------------

    Structure parse_model() {
        if (!accept_word("domain")) fail("expected 'domain N'");
        long n = expect(Tok::Number, "a domain size").num;
        std::string order;
        if (accept_word("order")) order = parse_name();
        struct Decl {
            std::string name;
            int arity;
            SymbolKind kind;
            Relation rel;
        };
        std::vector<Decl> decls;
        while (peek().type != Tok::End) {
            SymbolKind kind;
            if (accept_word("rel")) kind = SymbolKind::Relation;
            else if (accept_word("tape")) kind = SymbolKind::Tape;
            else fail("expected 'rel' or 'tape'");
            Decl d;
            d.kind = kind;
            d.name = parse_name();
            d.arity = static_cast<int>(expect(Tok::Number, "an arity").num);
            expect(Tok::LBrace, "'{'");
            if (d.arity == 0) {
                if (accept_word("true")) d.rel.insert(Tuple{});
                else if (accept_word("false")) { /* stays empty */ }
            }
            while (peek().type == Tok::LParen) {
                ++pos;
                Tuple t;
                if (peek().type != Tok::RParen) {
                    t.push_back(static_cast<int>(expect(Tok::Number, "an element").num));
                    while (accept(Tok::Comma))
                        t.push_back(static_cast<int>(expect(Tok::Number, "an element").num));
                }
                expect(Tok::RParen, "')'");
                if (static_cast<int>(t.size()) != d.arity)
                    fail("tuple arity does not match the declared arity of " + d.name);
                d.rel.insert(std::move(t));
            }
            expect(Tok::RBrace, "'}'");
            decls.push_back(std::move(d));
        }
        Vocabulary v;
        for (const Decl& d : decls) v.add(d.name, d.arity, d.kind);
        if (!order.empty()) v.set_distinguished_order(order);
        Structure m(static_cast<int>(n), v);
        for (Decl& d : decls) m.set_interpretation(d.name, std::move(d.rel));
        return m;
    }

    Vocabulary parse_vocab() {
        Vocabulary v;
        std::string order;
        while (peek().type != Tok::End) {
            if (accept_word("order")) {
                order = parse_name();
                continue;
            }
            if (accept_word("domain")) { // tolerate full .model files
                expect(Tok::Number, "a domain size");
                continue;
            }
            SymbolKind kind;
            if (accept_word("rel")) kind = SymbolKind::Relation;
            else if (accept_word("tape")) kind = SymbolKind::Tape;
            else fail("expected 'rel' or 'tape'");
            std::string name = parse_name();
            int arity = static_cast<int>(expect(Tok::Number, "an arity").num);
            v.add(name, arity, kind);
            if (accept(Tok::LBrace)) { // skip any interpretation block
                while (peek().type != Tok::RBrace && peek().type != Tok::End) ++pos;
                expect(Tok::RBrace, "'}'");
            }
        }
        if (!order.empty()) v.set_distinguished_order(order);
        return v;
    }

    LreSentence parse_lre() {
        if (!at_word("I")) fail("expected an 'I Y. <formula>' sentence");
        ++pos;
        LreSentence s;
        s.witness = parse_variable();
        expect(Tok::Dot, "'.' after the witness variable");
        s.eso_part = parse_formula();
        if (peek().type != Tok::End) fail("trailing input after the sentence");
        return s;
    }
};

} // namespace

Formula parse_formula(const std::string& text) {
    Parser p(text);
    Formula f = p.parse_formula();
    if (p.peek().type != Tok::End) p.fail("trailing input after the formula");
    return f;
}

Rule parse_rule_text(const std::string& text, Dialect dialect) {
    Parser p(text);
    p.dialect = dialect;
    Rule r = p.parse_rule();
    if (p.peek().type != Tok::End) p.fail("trailing input after the rule");
    return r;
}

Program parse_program(const std::string& text) {
    Parser p(text);
    return p.parse_program();
}

LreSentence parse_lre(const std::string& text) {
    Parser p(text);
    LreSentence s = p.parse_lre();
    validate_lre(s);
    return s;
}

Vocabulary parse_vocab(const std::string& text) {
    Parser p(text);
    return p.parse_vocab();
}

Structure parse_model(const std::string& text) {
    Parser p(text);
    return p.parse_model();
}

} // namespace relog
