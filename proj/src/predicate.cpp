#include "autseq/predicate.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>

#include "autseq/error.hpp"

namespace autseq {

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* relation_text(Relation rel) {
    switch (rel) {
        case Relation::eq: return "=";
        case Relation::ne: return "!=";
        case Relation::lt: return "<";
        case Relation::le: return "<=";
        case Relation::gt: return ">";
        case Relation::ge: return ">=";
    }
    return "?";
}

bool apply(Relation rel, long long a, long long b) {
    switch (rel) {
        case Relation::eq: return a == b;
        case Relation::ne: return a != b;
        case Relation::lt: return a < b;
        case Relation::le: return a <= b;
        case Relation::gt: return a > b;
        case Relation::ge: return a >= b;
    }
    return false;
}

Relation mirrored(Relation rel) {
    switch (rel) {
        case Relation::lt: return Relation::gt;
        case Relation::le: return Relation::ge;
        case Relation::gt: return Relation::lt;
        case Relation::ge: return Relation::le;
        default: return rel;
    }
}

}  // namespace

std::string to_string(const Term& term) {
    switch (term.kind) {
        case Term::Kind::constant: return std::to_string(term.value);
        case Term::Kind::variable: return term.name;
        case Term::Kind::add:
            return to_string(term.operands[0]) + "+" + to_string(term.operands[1]);
        case Term::Kind::subtract: {
            const Term& rhs = term.operands[1];
            const bool wrap = rhs.kind == Term::Kind::add || rhs.kind == Term::Kind::subtract;
            return to_string(term.operands[0]) + "-" + (wrap ? "(" + to_string(rhs) + ")" : to_string(rhs));
        }
    }
    return "?";
}

std::string to_string(const PredicateAst& ast) {
    using K = PredicateAst::Kind;
    auto child = [&](std::size_t i) { return "(" + to_string(ast.children[i]) + ")"; };
    switch (ast.kind) {
        case K::truth: return ast.flag ? "true" : "false";
        case K::compare:
            return to_string(ast.terms[0]) + " " + relation_text(ast.rel) + " " + to_string(ast.terms[1]);
        case K::index_letter:
            return ast.name + "[" + to_string(ast.terms[0]) + "] " + relation_text(ast.rel) + " " +
                   std::to_string(ast.letter);
        case K::index_compare:
            return ast.name + "[" + to_string(ast.terms[0]) + "] " + relation_text(ast.rel) + " " +
                   ast.other_name + "[" + to_string(ast.terms[1]) + "]";
        case K::call: {
            std::string out = "$" + ast.name + "(";
            for (std::size_t i = 0; i < ast.terms.size(); ++i) out += (i ? "," : "") + to_string(ast.terms[i]);
            return out + ")";
        }
        case K::negation: return "~" + child(0);
        case K::conjunction: return child(0) + " & " + child(1);
        case K::disjunction: return child(0) + " | " + child(1);
        case K::implication: return child(0) + " => " + child(1);
        case K::equivalence: return child(0) + " <=> " + child(1);
        case K::exists: return "E " + ast.name + " " + child(0);
        case K::forall: return "A " + ast.name + " " + child(0);
    }
    return "?";
}

namespace {

void term_vars(const Term& t, std::vector<std::string>& out, const std::vector<std::string>& bound) {
    if (t.kind == Term::Kind::variable) {
        if (std::find(bound.begin(), bound.end(), t.name) == bound.end() &&
            std::find(out.begin(), out.end(), t.name) == out.end()) {
            out.push_back(t.name);
        }
    }
    for (const Term& o : t.operands) term_vars(o, out, bound);
}

void formula_vars(const PredicateAst& f, std::vector<std::string>& out, std::vector<std::string>& bound) {
    for (const Term& t : f.terms) term_vars(t, out, bound);
    const bool binds = f.kind == PredicateAst::Kind::exists || f.kind == PredicateAst::Kind::forall;
    if (binds) bound.push_back(f.name);
    for (const PredicateAst& c : f.children) formula_vars(c, out, bound);
    if (binds) bound.pop_back();
}

}  // namespace

std::vector<std::string> free_variables(const PredicateAst& ast) {
    std::vector<std::string> out;
    std::vector<std::string> bound;
    formula_vars(ast, out, bound);
    return out;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
    ident, number, lparen, rparen, lbracket, rbracket, comma, dollar,
    and_, or_, not_, implies, iff, plus, minus, star, rel, end
};

struct Token {
    Tok kind;
    std::string text;
    Relation rel = Relation::eq;
    SourcePos pos;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        const SourcePos pos{line, col};
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
        auto push = [&](Tok k, std::size_t n, Relation r = Relation::eq) {
            out.push_back({k, std::string(src.substr(i, n)), r, pos});
            advance(n);
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i + 1;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
                                      src[j] == '\'')) {
                ++j;
            }
            push(Tok::ident, j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::number, j - i);
        } else if (starts("<=>")) {
            push(Tok::iff, 3);
        } else if (starts("=>")) {
            push(Tok::implies, 2);
        } else if (starts("<=")) {
            push(Tok::rel, 2, Relation::le);
        } else if (starts(">=")) {
            push(Tok::rel, 2, Relation::ge);
        } else if (starts("!=")) {
            push(Tok::rel, 2, Relation::ne);
        } else {
            switch (c) {
                case '(': push(Tok::lparen, 1); break;
                case ')': push(Tok::rparen, 1); break;
                case '[': push(Tok::lbracket, 1); break;
                case ']': push(Tok::rbracket, 1); break;
                case ',': push(Tok::comma, 1); break;
                case '$': push(Tok::dollar, 1); break;
                case '&': push(Tok::and_, 1); break;
                case '|': push(Tok::or_, 1); break;
                case '~':
                case '!': push(Tok::not_, 1); break;
                case '+': push(Tok::plus, 1); break;
                case '-': push(Tok::minus, 1); break;
                case '*': push(Tok::star, 1); break;
                case '=': push(Tok::rel, 1, Relation::eq); break;
                case '<': push(Tok::rel, 1, Relation::lt); break;
                case '>': push(Tok::rel, 1, Relation::gt); break;
                default:
                    throw SyntaxError(std::string("unexpected character '") + c + "'", pos.line, pos.column);
            }
        }
    }
    out.push_back({Tok::end, "", Relation::eq, {line, col}});
    return out;
}

// ---------------------------------------------------------------------------
// Parser

bool is_quantifier(const Token& t) { return t.kind == Tok::ident && (t.text == "E" || t.text == "A"); }
bool is_keyword(const Token& t) {
    return t.kind == Tok::ident && (t.text == "E" || t.text == "A" || t.text == "true" || t.text == "false");
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tok_(std::move(tokens)) {}

    PredicateAst parse_all() {
        PredicateAst f = formula();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    std::vector<Token> tok_;
    std::size_t at_ = 0;

    const Token& peek(std::size_t ahead = 0) const { return tok_[std::min(at_ + ahead, tok_.size() - 1)]; }
    const Token& take() { return tok_[at_ < tok_.size() - 1 ? at_++ : at_]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(msg, peek().pos.line, peek().pos.column);
    }
    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        take();
    }

    static PredicateAst node(PredicateAst::Kind k, SourcePos pos) {
        PredicateAst n;
        n.kind = k;
        n.pos = pos;
        return n;
    }
    static PredicateAst binary(PredicateAst::Kind k, PredicateAst a, PredicateAst b) {
        PredicateAst n = node(k, a.pos);
        n.children.push_back(std::move(a));
        n.children.push_back(std::move(b));
        return n;
    }

    PredicateAst formula() { return equivalence(); }

    PredicateAst equivalence() {
        PredicateAst lhs = implication();
        while (peek().kind == Tok::iff) {
            take();
            lhs = binary(PredicateAst::Kind::equivalence, std::move(lhs), implication());
        }
        return lhs;
    }

    PredicateAst implication() {
        PredicateAst lhs = disjunction();
        if (peek().kind == Tok::implies) {
            take();
            return binary(PredicateAst::Kind::implication, std::move(lhs), implication());
        }
        return lhs;
    }

    PredicateAst disjunction() {
        PredicateAst lhs = conjunction();
        while (peek().kind == Tok::or_) {
            take();
            lhs = binary(PredicateAst::Kind::disjunction, std::move(lhs), conjunction());
        }
        return lhs;
    }

    PredicateAst conjunction() {
        PredicateAst lhs = unary();
        while (peek().kind == Tok::and_) {
            take();
            lhs = binary(PredicateAst::Kind::conjunction, std::move(lhs), unary());
        }
        return lhs;
    }

    PredicateAst unary() {
        const Token& t = peek();
        if (t.kind == Tok::not_) {
            take();
            PredicateAst n = node(PredicateAst::Kind::negation, t.pos);
            n.children.push_back(unary());
            return n;
        }
        if (is_quantifier(t)) return quantifier();
        return atom();
    }

    // A variable list ends at the first identifier that is followed by
    // something other than another identifier, a comma, or a body opener.
    PredicateAst quantifier() {
        const Token q = take();
        std::vector<std::pair<std::string, SourcePos>> vars;
        while (true) {
            const Token& v = peek();
            if (v.kind != Tok::ident || is_keyword(v)) break;
            const Token& after = peek(1);
            const bool continues = after.kind == Tok::ident || after.kind == Tok::comma ||
                                   after.kind == Tok::lparen || after.kind == Tok::not_ ||
                                   after.kind == Tok::dollar;
            if (!continues) break;
            vars.emplace_back(v.text, v.pos);
            take();
            if (peek().kind == Tok::comma) take();
        }
        if (vars.empty()) fail("expected a variable after quantifier '" + q.text + "'");
        PredicateAst body = formula();
        const auto kind = q.text == "E" ? PredicateAst::Kind::exists : PredicateAst::Kind::forall;
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
            PredicateAst n = node(kind, q.pos);
            n.name = it->first;
            n.children.push_back(std::move(body));
            body = std::move(n);
        }
        return body;
    }

    PredicateAst atom() {
        const Token& t = peek();
        if (t.kind == Tok::ident && (t.text == "true" || t.text == "false")) {
            PredicateAst n = node(PredicateAst::Kind::truth, t.pos);
            n.flag = t.text == "true";
            take();
            return n;
        }
        if (t.kind == Tok::dollar) return call();
        if (t.kind == Tok::lparen) {
            const std::size_t saved = at_;
            try {
                take();
                PredicateAst inner = formula();
                expect(Tok::rparen, "')'");
                const Tok next = peek().kind;
                if (next != Tok::rel && next != Tok::plus && next != Tok::minus && next != Tok::star) return inner;
            } catch (const SyntaxError&) {
            }
            at_ = saved;  // a parenthesized term starts a comparison
        }
        return comparison();
    }

    PredicateAst call() {
        const Token d = take();
        if (peek().kind != Tok::ident) fail("expected a predicate name after '$'");
        PredicateAst n = node(PredicateAst::Kind::call, d.pos);
        n.name = take().text;
        expect(Tok::lparen, "'('");
        if (peek().kind != Tok::rparen) {
            n.terms.push_back(term());
            while (peek().kind == Tok::comma) {
                take();
                n.terms.push_back(term());
            }
        }
        expect(Tok::rparen, "')'");
        return n;
    }

    struct Operand {
        bool indexed = false;
        std::string seq;
        Term term;
    };

    Operand operand() {
        Operand o;
        if (peek().kind == Tok::ident && peek(1).kind == Tok::lbracket && !is_keyword(peek())) {
            o.indexed = true;
            o.seq = take().text;
            take();
            o.term = term();
            expect(Tok::rbracket, "']'");
            return o;
        }
        o.term = term();
        return o;
    }

    PredicateAst comparison() {
        const SourcePos pos = peek().pos;
        Operand lhs = operand();
        if (peek().kind != Tok::rel) fail("expected a comparison operator");
        Relation rel = take().rel;
        Operand rhs = operand();
        if (peek().kind == Tok::rel) fail("comparisons cannot be chained");
        if (!lhs.indexed && rhs.indexed) {
            std::swap(lhs, rhs);
            rel = mirrored(rel);
        }
        PredicateAst n = node(PredicateAst::Kind::compare, pos);
        n.rel = rel;
        if (!lhs.indexed) {
            n.terms = {std::move(lhs.term), std::move(rhs.term)};
            return n;
        }
        n.name = lhs.seq;
        n.terms.push_back(std::move(lhs.term));
        if (rhs.indexed) {
            n.kind = PredicateAst::Kind::index_compare;
            n.other_name = rhs.seq;
            n.terms.push_back(std::move(rhs.term));
        } else {
            if (rhs.term.kind != Term::Kind::constant) {
                throw SyntaxError("an indexed letter can only be compared with a letter constant or another index",
                                  pos.line, pos.column);
            }
            n.kind = PredicateAst::Kind::index_letter;
            n.letter = static_cast<Letter>(rhs.term.value);
        }
        return n;
    }

    Term term() {
        Term lhs = summand();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool add = take().kind == Tok::plus;
            Term t;
            t.kind = add ? Term::Kind::add : Term::Kind::subtract;
            t.operands.push_back(std::move(lhs));
            t.operands.push_back(summand());
            lhs = std::move(t);
        }
        if (peek().kind == Tok::star) fail("multiplication is not supported");
        return lhs;
    }

    Term summand() {
        const Token& t = peek();
        Term out;
        if (t.kind == Tok::number) {
            Value v = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc()) fail("number out of range");
            take();
            out.kind = Term::Kind::constant;
            out.value = v;
        } else if (t.kind == Tok::ident && !is_keyword(t)) {
            out.kind = Term::Kind::variable;
            out.name = take().text;
        } else if (t.kind == Tok::lparen) {
            take();
            out = term();
            expect(Tok::rparen, "')'");
        } else {
            fail("expected a variable, a number or '('");
        }
        if (peek().kind == Tok::star) fail("multiplication is not supported");
        return out;
    }
};

void check_names(const PredicateAst& f, const Environment& env) {
    auto report = [&](const std::string& what) {
        throw InputError(what + " at " + std::to_string(f.pos.line) + ":" + std::to_string(f.pos.column));
    };
    if (f.kind == PredicateAst::Kind::index_letter || f.kind == PredicateAst::Kind::index_compare) {
        if (!env.find_sequence(f.name)) report("unknown sequence '" + f.name + "'");
        if (f.kind == PredicateAst::Kind::index_compare && !env.find_sequence(f.other_name)) {
            report("unknown sequence '" + f.other_name + "'");
        }
    }
    if (f.kind == PredicateAst::Kind::call) {
        const CompiledPredicate* p = env.find_predicate(f.name);
        if (!p) report("unknown predicate '$" + f.name + "'");
        if (p->free_vars.size() != f.terms.size()) {
            report("predicate '$" + f.name + "' takes " + std::to_string(p->free_vars.size()) + " arguments");
        }
    }
    for (const PredicateAst& c : f.children) check_names(c, env);
}

}  // namespace

PredicateAst parse_predicate(std::string_view text) { return Parser(lex(text)).parse_all(); }

PredicateAst parse_predicate(std::string_view text, const Environment& env) {
    PredicateAst ast = parse_predicate(text);
    check_names(ast, env);
    return ast;
}

// ---------------------------------------------------------------------------
// Environment and CompiledPredicate

void Environment::add_sequence(const std::string& name, SequenceDfao seq) {
    if (seq.base() != base_) throw StructuralError("sequence '" + name + "' has a different base");
    sequences_.insert_or_assign(name, std::move(seq));
}

void Environment::define(const std::string& name, CompiledPredicate predicate) {
    if (!predicate.closed() && predicate.automaton.base() != base_) {
        throw StructuralError("predicate '" + name + "' has a different base");
    }
    predicates_.insert_or_assign(name, std::move(predicate));
}

const SequenceDfao* Environment::find_sequence(std::string_view name) const {
    auto it = sequences_.find(name);
    return it == sequences_.end() ? nullptr : &it->second;
}

const CompiledPredicate* Environment::find_predicate(std::string_view name) const {
    auto it = predicates_.find(name);
    return it == predicates_.end() ? nullptr : &it->second;
}

bool CompiledPredicate::truth() const {
    if (!closed()) throw StructuralError("truth(): predicate has free variables");
    return !automaton.is_empty();
}

bool CompiledPredicate::holds(std::span<const Value> values) const {
    if (closed()) {
        if (!values.empty()) throw InputError("closed predicate takes no values");
        return truth();
    }
    return automaton.accepts(values);
}

// ---------------------------------------------------------------------------
// Compiler

namespace {

// Intermediate result: an automaton over `vars`, or a truth constant when
// `vars` is empty.
struct Pred {
    std::optional<Automaton> aut;
    std::vector<std::string> vars;
    bool truth = false;

    static Pred constant(bool value) {
        Pred p;
        p.truth = value;
        return p;
    }
};

class Compiler {
public:
    explicit Compiler(const Environment& env) : env_(env), k_(env.base()) {}

    Pred formula(const PredicateAst& f) {
        using K = PredicateAst::Kind;
        switch (f.kind) {
            case K::truth: return Pred::constant(f.flag);
            case K::compare: return compare(f);
            case K::index_letter: return index_letter(f);
            case K::index_compare: return index_compare(f);
            case K::call: return call(f);
            case K::negation: return negation(formula(f.children[0]));
            case K::conjunction: return combine(formula(f.children[0]), formula(f.children[1]), BoolOp::conjunction);
            case K::disjunction: return combine(formula(f.children[0]), formula(f.children[1]), BoolOp::disjunction);
            case K::implication: return combine(formula(f.children[0]), formula(f.children[1]), BoolOp::implication);
            case K::equivalence:
                return negation(
                    combine(formula(f.children[0]), formula(f.children[1]), BoolOp::exclusive_or));
            case K::exists:
            case K::forall: return quantifier(f);
        }
        throw StructuralError("unknown formula node");
    }

    Pred align(const Pred& p, const std::vector<std::string>& vars) const {
        if (p.vars.empty()) {
            if (vars.empty()) return p;
            const DigitTupleAlphabet alphabet(k_, static_cast<int>(vars.size()));
            return {p.truth ? Automaton::universal(alphabet) : Automaton::empty(alphabet), vars, false};
        }
        if (p.vars == vars) return p;
        std::vector<int> map;
        for (const std::string& v : p.vars) {
            auto it = std::find(vars.begin(), vars.end(), v);
            map.push_back(static_cast<int>(it - vars.begin()));
        }
        return {cylindrify(*p.aut, static_cast<int>(vars.size()), map), vars, false};
    }

private:
    const Environment& env_;
    int k_;
    int fresh_counter_ = 0;

    // A fresh variable with its defining constraint.
    struct Definition {
        std::string var;
        Pred constraint;
    };

    std::string fresh() { return "#" + std::to_string(++fresh_counter_); }

    Pred negation(const Pred& p) {
        if (p.vars.empty()) return Pred::constant(!p.truth);
        return {negate(*p.aut), p.vars, false};
    }

    Pred combine(const Pred& a, const Pred& b, BoolOp op) {
        if (a.vars.empty() || b.vars.empty()) {
            const Pred& c = a.vars.empty() ? a : b;
            const Pred& other = a.vars.empty() ? b : a;
            const bool c_first = a.vars.empty();
            switch (op) {
                case BoolOp::conjunction: return c.truth ? other : Pred::constant(false);
                case BoolOp::disjunction: return c.truth ? Pred::constant(true) : other;
                case BoolOp::implication:
                    if (c_first) return c.truth ? other : Pred::constant(true);
                    return c.truth ? Pred::constant(true) : negation(other);
                case BoolOp::exclusive_or: return c.truth ? negation(other) : other;
            }
        }
        std::vector<std::string> vars = a.vars;
        for (const std::string& v : b.vars) {
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
        Pred x = align(a, vars);
        Pred y = align(b, vars);
        return {boolean_combine(*x.aut, *y.aut, op), vars, false};
    }

    Pred exists(const Pred& p, const std::string& var) {
        auto it = std::find(p.vars.begin(), p.vars.end(), var);
        if (it == p.vars.end()) return p;
        if (p.vars.size() == 1) return Pred::constant(!p.aut->is_empty());
        const int track = static_cast<int>(it - p.vars.begin());
        std::vector<std::string> vars = p.vars;
        vars.erase(vars.begin() + track);
        return {project(*p.aut, track, env_.limits), vars, false};
    }

    Pred quantifier(const PredicateAst& f) {
        try {
            Pred body = formula(f.children[0]);
            if (f.kind == PredicateAst::Kind::exists) return exists(body, f.name);
            return negation(exists(negation(body), f.name));
        } catch (const ResourceError& e) {
            const std::string msg = e.what();
            if (msg.find("in subformula") != std::string::npos) throw;
            throw ResourceError(msg + " in subformula: " + to_string(f));
        }
    }

    // Places `aut` over `vars`, which may repeat a name (e.g. i + i).
    Pred place(const Automaton& aut, std::vector<std::string> vars) {
        std::vector<Definition> defs;
        for (std::size_t t = 0; t < vars.size(); ++t) {
            for (std::size_t u = 0; u < t; ++u) {
                if (vars[u] == vars[t]) {
                    const std::string f = fresh();
                    defs.push_back({f, place(comparator_automaton(k_, Relation::eq), {f, vars[t]})});
                    vars[t] = f;
                    break;
                }
            }
        }
        return close(Pred{aut, std::move(vars), false}, std::move(defs));
    }

    // Conjoins definitions last-to-first and projects each fresh variable once
    // nothing left mentions it.
    Pred close(Pred core, std::vector<Definition> defs) {
        for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
            core = combine(core, it->constraint, BoolOp::conjunction);
            core = exists(core, it->var);
        }
        return core;
    }

    // Name of a variable equal to `t`; appends definitions for fresh names.
    std::string materialize(const Term& t, std::vector<Definition>& defs) {
        switch (t.kind) {
            case Term::Kind::variable: return t.name;
            case Term::Kind::constant: {
                const std::string f = fresh();
                defs.push_back({f, Pred{constant_automaton(k_, t.value), {f}, false}});
                return f;
            }
            case Term::Kind::add:
            case Term::Kind::subtract: {
                const std::string a = materialize(t.operands[0], defs);
                const std::string b = materialize(t.operands[1], defs);
                const std::string f = fresh();
                // f = a + b, or a = f + b for subtraction.
                Pred c = t.kind == Term::Kind::add ? place(adder_automaton(k_), {a, b, f})
                                                   : place(adder_automaton(k_), {f, b, a});
                defs.push_back({f, std::move(c)});
                return f;
            }
        }
        throw StructuralError("unknown term");
    }

    Pred compare(const PredicateAst& f) {
        std::vector<Definition> defs;
        // a + b = c needs a single adder.
        const Term* sum = nullptr;
        const Term* other = nullptr;
        if (f.rel == Relation::eq) {
            if (f.terms[0].kind == Term::Kind::add && f.terms[1].kind != Term::Kind::add) {
                sum = &f.terms[0];
                other = &f.terms[1];
            } else if (f.terms[1].kind == Term::Kind::add && f.terms[0].kind != Term::Kind::add) {
                sum = &f.terms[1];
                other = &f.terms[0];
            }
        }
        if (sum) {
            const std::string a = materialize(sum->operands[0], defs);
            const std::string b = materialize(sum->operands[1], defs);
            const std::string c = materialize(*other, defs);
            return close(place(adder_automaton(k_), {a, b, c}), std::move(defs));
        }
        const std::string a = materialize(f.terms[0], defs);
        const std::string b = materialize(f.terms[1], defs);
        if (a == b) {
            const bool reflexive = f.rel == Relation::eq || f.rel == Relation::le || f.rel == Relation::ge;
            // Still subject to the definitions (a difference may not exist).
            const DigitTupleAlphabet alphabet(k_, 1);
            Pred core{reflexive ? Automaton::universal(alphabet) : Automaton::empty(alphabet), {a}, false};
            return close(std::move(core), std::move(defs));
        }
        return close(place(comparator_automaton(k_, f.rel), {a, b}), std::move(defs));
    }

    const SequenceDfao& sequence(const PredicateAst& f, const std::string& name) const {
        const SequenceDfao* s = env_.find_sequence(name);
        if (!s) {
            throw InputError("unknown sequence '" + name + "' at " + std::to_string(f.pos.line) + ":" +
                             std::to_string(f.pos.column));
        }
        return *s;
    }

    Pred index_letter(const PredicateAst& f) {
        const SequenceDfao& seq = sequence(f, f.name);
        std::vector<Definition> defs;
        const std::string v = materialize(f.terms[0], defs);
        const Automaton& base = seq.automaton();
        std::vector<StateId> tr(base.transitions().begin(), base.transitions().end());
        std::vector<bool> acc(base.state_count());
        for (StateId q = 0; q < base.state_count(); ++q) acc[q] = apply(f.rel, seq.output(q), f.letter);
        Automaton core = minimize(Automaton(base.alphabet(), base.initial(), std::move(tr), std::move(acc)));
        return close(Pred{std::move(core), {v}, false}, std::move(defs));
    }

    Pred index_compare(const PredicateAst& f) {
        const SequenceDfao& x = sequence(f, f.name);
        const SequenceDfao& y = sequence(f, f.other_name);
        std::vector<Definition> defs;
        const std::string a = materialize(f.terms[0], defs);
        const std::string b = materialize(f.terms[1], defs);
        const Automaton& ax = x.automaton();
        const Automaton& ay = y.automaton();
        if (a == b) {
            // One track: run both sequences in lockstep.
            const DigitTupleAlphabet alphabet(k_, 1);
            const std::size_t ny = ay.state_count();
            std::vector<StateId> tr(ax.state_count() * ny * alphabet.size());
            std::vector<bool> acc(ax.state_count() * ny);
            for (StateId p = 0; p < ax.state_count(); ++p) {
                for (StateId q = 0; q < ny; ++q) {
                    const std::size_t s = p * ny + q;
                    acc[s] = apply(f.rel, x.output(p), y.output(q));
                    for (Symbol d = 0; d < alphabet.size(); ++d) {
                        tr[s * alphabet.size() + d] = static_cast<StateId>(ax.next(p, d) * ny + ay.next(q, d));
                    }
                }
            }
            Automaton core = minimize(Automaton(alphabet, static_cast<StateId>(ax.initial() * ny + ay.initial()),
                                                std::move(tr), std::move(acc)));
            return close(Pred{std::move(core), {a}, false}, std::move(defs));
        }
        // Two tracks: each sequence reads its own track.
        const DigitTupleAlphabet alphabet(k_, 2);
        const std::size_t ny = ay.state_count();
        std::vector<StateId> tr(ax.state_count() * ny * alphabet.size());
        std::vector<bool> acc(ax.state_count() * ny);
        for (StateId p = 0; p < ax.state_count(); ++p) {
            for (StateId q = 0; q < ny; ++q) {
                const std::size_t s = p * ny + q;
                acc[s] = apply(f.rel, x.output(p), y.output(q));
                for (Symbol sym = 0; sym < alphabet.size(); ++sym) {
                    const auto dx = static_cast<Symbol>(alphabet.digit(sym, 0));
                    const auto dy = static_cast<Symbol>(alphabet.digit(sym, 1));
                    tr[s * alphabet.size() + sym] = static_cast<StateId>(ax.next(p, dx) * ny + ay.next(q, dy));
                }
            }
        }
        Automaton core = minimize(Automaton(alphabet, static_cast<StateId>(ax.initial() * ny + ay.initial()),
                                            std::move(tr), std::move(acc)));
        return close(Pred{std::move(core), {a, b}, false}, std::move(defs));
    }

    Pred call(const PredicateAst& f) {
        const CompiledPredicate* target = env_.find_predicate(f.name);
        if (!target) {
            throw InputError("unknown predicate '$" + f.name + "' at " + std::to_string(f.pos.line) + ":" +
                             std::to_string(f.pos.column));
        }
        if (target->free_vars.size() != f.terms.size()) {
            throw InputError("predicate '$" + f.name + "' takes " + std::to_string(target->free_vars.size()) +
                             " arguments");
        }
        if (target->closed()) return Pred::constant(target->truth());
        std::vector<Definition> defs;
        std::vector<std::string> args;
        for (const Term& t : f.terms) args.push_back(materialize(t, defs));
        return close(place(target->automaton, std::move(args)), std::move(defs));
    }
};

}  // namespace

CompiledPredicate compile(const PredicateAst& ast, const Environment& env, std::span<const std::string> free_order) {
    const std::vector<std::string> free = free_variables(ast);
    std::vector<std::string> order(free_order.begin(), free_order.end());
    if (order.empty()) {
        order = free;
    } else {
        for (const std::string& v : free) {
            if (std::find(order.begin(), order.end(), v) == order.end()) {
                throw InputError("free variable '" + v + "' is not declared");
            }
        }
        const std::set<std::string> unique(order.begin(), order.end());
        if (unique.size() != order.size()) throw InputError("repeated variable in the track order");
    }
    Compiler compiler(env);
    Pred result;
    try {
        result = compiler.formula(ast);
    } catch (const ResourceError& e) {
        const std::string msg = e.what();
        if (msg.find("in subformula") != std::string::npos) throw;
        throw ResourceError(msg + " in subformula: " + to_string(ast));
    }
    if (order.empty()) {
        const DigitTupleAlphabet alphabet(env.base(), 1);
        return {result.truth ? Automaton::universal(alphabet) : Automaton::empty(alphabet), {}};
    }
    Pred aligned = compiler.align(result, order);
    return {minimize(*aligned.aut), order};
}

CompiledPredicate compile(std::string_view text, const Environment& env, std::span<const std::string> free_order) {
    return compile(parse_predicate(text, env), env, free_order);
}

// ---------------------------------------------------------------------------
// Predicate library

namespace {

struct Definition {
    const char* name;
    std::vector<std::string> params;
    const char* body;
};

const std::vector<Definition>& definitions() {
    static const std::vector<Definition> defs = {
        {"FEQ", {"i", "m", "n"}, "A u (u < n => X[i+u] = X[m+u])"},
        {"PRIM", {"i", "n"},
         "n >= 1 & ~(E d e (d >= 1 & e >= 1 & d + e = n & $FEQ(i, i+d, e) & $FEQ(i+e, i, d)))"},
        {"LLEN", {"i", "a", "m", "b"},
         "(a < b & $FEQ(i, m, a)) | E c (c < a & c < b & $FEQ(i, m, c) & X[i+c] < X[m+c])"},
        {"P", {"i", "j"}, "E n (i + n = j + 1 & $PRIM(i, n))"},
        {"LL", {"i", "j", "m", "n"}, "E a b (i + a = j + 1 & m + b = n + 1 & $LLEN(i, a, m, b))"},
        {"LYN", {"i", "n"}, "n >= 1 & A d e ((d >= 1 & e >= 1 & d + e = n) => $LLEN(i, n, i+d, e))"},
        {"L", {"i", "j"}, "E n (i + n = j + 1 & $LYN(i, n))"},
        {"LLinf", {"i", "j"}, "E t ($FEQ(i, j, t) & X[i+t] < X[j+t])"},
        {"Linf", {"i"}, "A j (j > i => $LLinf(i, j))"},
        {"I", {"i", "j", "i'", "j'"}, "i' <= i & j' >= j"},
        {"SI", {"i", "j", "i'", "j'"}, "$I(i, j, i', j') & (i' < i | j' > j)"},
        {"LF", {"i", "j"}, "$L(i, j) & A i' j' ($SI(i, j, i', j') => ~$L(i', j'))"},
        {"FIRSTOCC", {"n", "i"}, "A j (j < i => ~$FEQ(i, j, n))"},
        {"START", {"i"}, "(E j $LF(i, j)) | ($Linf(i) & A h (h < i => ~$Linf(h)))"},
        {"PLT", {"n", "i"},
         "i < n & A j ((j < n & j != i) => E a b (i + a = n & j + b = n & $LLEN(i, a, j, b)))"},
        {"FLT", {"i", "j", "l"},
         "i <= l & l < j & A m ((i <= m & m < j & m != l) => E a b (l + a = j & m + b = j & $LLEN(l, a, m, b)))"},
        {"CP", {"n", "i"}, "$PRIM(i, n) & $FIRSTOCC(n, i)"},
        {"CL", {"n", "i"}, "$LYN(i, n) & $FIRSTOCC(n, i)"},
        {"TC", {"n", "i"},
         "E j (j <= n & $L(i, j) & A i' j' (($SI(i, j, i', j') & j' <= n) => ~$L(i', j')))"},
    };
    return defs;
}

void collect_calls(const PredicateAst& f, std::vector<std::string>& out) {
    if (f.kind == PredicateAst::Kind::call) out.push_back(f.name);
    for (const PredicateAst& c : f.children) collect_calls(c, out);
}

}  // namespace

PredicateLibrary::PredicateLibrary(SequenceDfao seq, Limits limits) : seq_(std::move(seq)), env_(seq_.base()) {
    env_.limits = limits;
    env_.add_sequence("X", seq_);
}

const std::vector<std::string>& PredicateLibrary::names() {
    static const std::vector<std::string> out = [] {
        std::vector<std::string> v;
        for (const Definition& d : definitions()) v.emplace_back(d.name);
        return v;
    }();
    return out;
}

const CompiledPredicate& PredicateLibrary::get(const std::string& name) {
    if (const CompiledPredicate* p = env_.find_predicate(name)) return *p;
    const auto& defs = definitions();
    auto it = std::find_if(defs.begin(), defs.end(), [&](const Definition& d) { return name == d.name; });
    if (it == defs.end()) throw InputError("unknown built-in predicate '" + name + "'");
    const PredicateAst ast = parse_predicate(it->body);
    std::vector<std::string> calls;
    collect_calls(ast, calls);
    for (const std::string& c : calls) get(c);
    env_.define(name, compile(ast, env_, it->params));
    return *env_.find_predicate(name);
}

CompiledPredicate builtin_predicate(const std::string& name, const SequenceDfao& seq) {
    PredicateLibrary lib(seq);
    return lib.get(name);
}

}  // namespace autseq
