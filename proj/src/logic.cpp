#include "kabel/logic.hpp"

#include "kabel/error.hpp"
#include "kabel/lrsa.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace kabel {

// ---------------------------------------------------------------- environment

void Environment::add_numeration(Numeration n) {
    auto name = n.name();
    validity_.erase(name);
    adders_.erase(name);
    numerations_[name] = std::make_shared<const Numeration>(std::move(n));
    if (default_numeration.empty()) default_numeration = name;
}

const Numeration& Environment::numeration(const std::string& name) const {
    auto it = numerations_.find(name);
    if (it == numerations_.end()) throw Error(Errc::InvalidArgument, "unknown numeration system '" + name + "'");
    return *it->second;
}

std::vector<std::string> Environment::numeration_names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : numerations_) out.push_back(k);
    return out;
}

const Automaton& Environment::validity(const std::string& name) {
    auto it = validity_.find(name);
    if (it == validity_.end()) it = validity_.emplace(name, numeration(name).validity_dfa()).first;
    return it->second;
}

const Automaton& Environment::adder(const std::string& name) {
    auto it = adders_.find(name);
    if (it == adders_.end()) it = adders_.emplace(name, kabel::adder(numeration(name))).first;
    return it->second;
}

void Environment::set_adder(const std::string& name, Automaton a) { adders_[name] = std::move(a); }

void Environment::define(const std::string& name, Automaton relation) {
    relation.set_name(name);
    relations_[name] = std::move(relation);
}

const Automaton& Environment::relation(const std::string& name) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw Error(Errc::UnknownRelation, "unknown relation '$" + name + "'");
    return it->second;
}

void Environment::set_word(const std::string& name, Automaton dfao) {
    dfao.set_name(name);
    words_[name] = std::move(dfao);
}

const Automaton& Environment::word(const std::string& name) const {
    auto it = words_.find(name);
    if (it == words_.end()) throw Error(Errc::UnknownRelation, "unknown word automaton '" + name + "'");
    return it->second;
}

// ---------------------------------------------------------------- syntax tree

namespace {

struct Term {
    enum Kind { Var, Const, Add, Sub, Mul } kind = Var;
    std::string name;  // Var
    std::string num;   // explicit or scope numeration of a Var
    bool annotated = false;
    long long value = 0; // Const, or the factor of Mul
    std::vector<Term> kids;
};

struct Formula {
    enum Kind { Not, And, Or, Xor, Implies, Iff, Exists, Forall, Compare, WordCmp, Rel } kind = Compare;
    std::vector<Formula> kids;
    std::vector<std::string> vars; // quantified variables
    std::string op;                // comparison operator
    std::vector<Term> terms;       // Compare: 2 terms; WordCmp: indices; Rel: args
    std::string name;              // word or relation
    std::string rhs_word;          // WordCmp against another word
    std::vector<Term> rhs_terms;
    long long value = 0;           // WordCmp against @value
    std::string scope_num;
};

struct Token {
    enum Kind { Ident, Number, At, Dollar, Msd, Op, End } kind = End;
    std::string text;
    long long number = 0;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            t.kind = Token::Ident;
            t.text = s.substr(i, j - i);
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Token::Number;
            t.text = s.substr(i, j - i);
            t.number = std::stoll(t.text);
            i = j;
        } else if (c == '@') {
            std::size_t j = i + 1;
            if (j < s.size() && s[j] == '-') ++j;
            const std::size_t start = j;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == start) throw Error(Errc::ParseError, "expected a number after '@'");
            t.kind = Token::At;
            t.number = std::stoll(s.substr(i + 1, j - i - 1));
            i = j;
        } else if (c == '$' || c == '?') {
            std::size_t j = i + 1;
            while (j < s.size() && ident_char(s[j])) ++j;
            std::string word = s.substr(i + 1, j - i - 1);
            if (c == '$') {
                t.kind = Token::Dollar;
                t.text = word;
            } else {
                if (word.rfind("msd_", 0) != 0) throw Error(Errc::ParseError, "unsupported annotation '?" + word + "'");
                t.kind = Token::Msd;
                t.text = word.substr(4);
            }
            if (t.text.empty()) throw Error(Errc::ParseError, std::string("empty name after '") + c + "'");
            i = j;
        } else {
            static const char* ops[] = {"<=>", "=>", "<=", ">=", "!=", "~", "&", "|", "^", "=", "<", ">",
                                        "+",   "-",  "*",  "(",  ")",  "[", "]", ","};
            bool found = false;
            for (const char* op : ops) {
                const std::size_t n = std::char_traits<char>::length(op);
                if (s.compare(i, n, op) == 0) {
                    t.kind = Token::Op;
                    t.text = op;
                    i += n;
                    found = true;
                    break;
                }
            }
            if (!found) throw Error(Errc::ParseError, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    out.push_back(Token{});
    return out;
}

bool is_comparison(const std::string& op) {
    return op == "=" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=";
}

class Parser {
public:
    Parser(const std::string& s, std::string num) : toks_(lex(s)), scope_(std::move(num)) {}

    Formula parse() {
        Formula f = iff();
        if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool is_op(const char* op, std::size_t k = 0) const { return peek(k).kind == Token::Op && peek(k).text == op; }
    void expect(const char* op) {
        if (!is_op(op)) fail(std::string("expected '") + op + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::ParseError, msg + " at token " + std::to_string(pos_));
    }

    Formula binary(Formula::Kind k, Formula a, Formula b) {
        Formula f;
        f.kind = k;
        f.kids.push_back(std::move(a));
        f.kids.push_back(std::move(b));
        return f;
    }

    Formula iff() {
        Formula f = implies();
        while (is_op("<=>")) {
            ++pos_;
            f = binary(Formula::Iff, std::move(f), implies());
        }
        return f;
    }
    Formula implies() {
        Formula f = xor_();
        if (is_op("=>")) {
            ++pos_;
            return binary(Formula::Implies, std::move(f), implies());
        }
        return f;
    }
    Formula xor_() {
        Formula f = or_();
        while (is_op("^")) {
            ++pos_;
            f = binary(Formula::Xor, std::move(f), or_());
        }
        return f;
    }
    Formula or_() {
        Formula f = and_();
        while (is_op("|")) {
            ++pos_;
            f = binary(Formula::Or, std::move(f), and_());
        }
        return f;
    }
    Formula and_() {
        Formula f = unary();
        while (is_op("&")) {
            ++pos_;
            f = binary(Formula::And, std::move(f), unary());
        }
        return f;
    }

    bool at_quantifier() const {
        const Token& t = peek();
        if (t.kind != Token::Ident || (t.text[0] != 'E' && t.text[0] != 'A')) return false;
        if (is_op("[", 1)) return false;
        return t.text.size() > 1 || peek(1).kind == Token::Ident;
    }

    Formula unary() {
        if (is_op("~")) {
            ++pos_;
            Formula f;
            f.kind = Formula::Not;
            f.kids.push_back(unary());
            return f;
        }
        if (peek().kind == Token::Msd) {
            const std::string saved = scope_;
            scope_ = peek().text;
            ++pos_;
            Formula f = iff();
            scope_ = saved;
            return f;
        }
        if (at_quantifier()) {
            Formula f;
            f.kind = peek().text[0] == 'E' ? Formula::Exists : Formula::Forall;
            std::string first = peek().text.substr(1);
            ++pos_;
            if (first.empty()) {
                if (peek().kind != Token::Ident) fail("expected a quantified variable");
                first = peek().text;
                ++pos_;
            }
            f.vars.push_back(first);
            while (is_op(",")) {
                ++pos_;
                if (peek().kind != Token::Ident) fail("expected a quantified variable");
                f.vars.push_back(peek().text);
                ++pos_;
            }
            f.kids.push_back(iff());
            return f;
        }
        return primary();
    }

    Formula primary() {
        if (is_op("(")) {
            ++pos_;
            const std::string saved = scope_;
            Formula f = iff();
            scope_ = saved;
            expect(")");
            return f;
        }
        if (peek().kind == Token::Dollar) {
            Formula f;
            f.kind = Formula::Rel;
            f.name = peek().text;
            f.scope_num = scope_;
            ++pos_;
            expect("(");
            if (!is_op(")")) {
                f.terms.push_back(annotated_term());
                while (is_op(",")) {
                    ++pos_;
                    f.terms.push_back(annotated_term());
                }
            }
            expect(")");
            return f;
        }
        if (peek().kind == Token::Ident && is_op("[", 1)) {
            Formula f;
            f.kind = Formula::WordCmp;
            f.scope_num = scope_;
            f.name = peek().text;
            ++pos_;
            f.terms = indices();
            if (peek().kind != Token::Op || !is_comparison(peek().text)) fail("expected a comparison");
            f.op = peek().text;
            ++pos_;
            if (peek().kind == Token::At) {
                f.value = peek().number;
                ++pos_;
            } else if (peek().kind == Token::Ident && is_op("[", 1)) {
                f.rhs_word = peek().text;
                ++pos_;
                f.rhs_terms = indices();
            } else {
                fail("expected '@value' or a word index");
            }
            return f;
        }
        Formula f;
        f.kind = Formula::Compare;
        f.scope_num = scope_;
        f.terms.push_back(term());
        if (peek().kind != Token::Op || !is_comparison(peek().text)) fail("expected a comparison");
        f.op = peek().text;
        ++pos_;
        f.terms.push_back(term());
        return f;
    }

    std::vector<Term> indices() {
        std::vector<Term> out;
        while (is_op("[")) {
            ++pos_;
            out.push_back(term());
            expect("]");
        }
        return out;
    }

    Term annotated_term() {
        if (peek().kind == Token::Msd) {
            const std::string saved = scope_;
            scope_ = peek().text;
            ++pos_;
            Term t = term();
            scope_ = saved;
            mark_annotated(t);
            return t;
        }
        return term();
    }
    static void mark_annotated(Term& t) {
        t.annotated = true;
        for (auto& k : t.kids) mark_annotated(k);
    }

    Term term() {
        Term t = factor();
        while (is_op("+") || is_op("-")) {
            Term n;
            n.kind = peek().text == "+" ? Term::Add : Term::Sub;
            ++pos_;
            n.kids.push_back(std::move(t));
            n.kids.push_back(factor());
            n.num = scope_;
            t = std::move(n);
        }
        return t;
    }
    Term factor() {
        Term t;
        t.num = scope_;
        if (peek().kind == Token::Number) {
            t.kind = Term::Const;
            t.value = peek().number;
            ++pos_;
            if (is_op("*")) {
                ++pos_;
                Term m;
                m.kind = Term::Mul;
                m.value = t.value;
                m.num = scope_;
                m.kids.push_back(factor());
                return m;
            }
            return t;
        }
        if (peek().kind == Token::Ident) {
            t.kind = Term::Var;
            t.name = peek().text;
            ++pos_;
            return t;
        }
        fail("expected a term");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::string scope_;
};

// ---------------------------------------------------------------- compilation

struct Compiler {
    Environment& env;
    int fresh_counter = 0;

    std::string fresh() { return "#" + std::to_string(fresh_counter++); }

    // Binds the tracks of `a` to variables (repeats become diagonals) and
    // returns the predicate over the sorted distinct variables.
    Predicate bind(const Automaton& a, const std::vector<std::string>& args) {
        if (args.size() != a.track_count())
            throw Error(Errc::ArityMismatch, "'" + a.name() + "' expects " + std::to_string(a.track_count()) +
                                                 " arguments, got " + std::to_string(args.size()));
        std::map<std::string, Track> vars;
        for (std::size_t t = 0; t < args.size(); ++t) {
            auto [it, inserted] = vars.emplace(args[t], a.tracks()[t]);
            if (!inserted && it->second != a.tracks()[t])
                throw Error(Errc::MixedNumerationWithoutConverter, "variable " + args[t] + " used in two numerations");
        }
        Predicate p;
        Tracks target;
        for (const auto& [v, tr] : vars) {
            p.variables.push_back(v);
            target.push_back(tr);
        }
        std::vector<std::size_t> pos;
        for (const auto& v : args)
            pos.push_back(static_cast<std::size_t>(std::lower_bound(p.variables.begin(), p.variables.end(), v) -
                                                   p.variables.begin()));
        bool identity = target == a.tracks();
        for (std::size_t i = 0; identity && i < pos.size(); ++i) identity = pos[i] == i;
        p.automaton = identity ? a : minimize(lift(a, target, pos));
        return p;
    }

    Tracks tracks_of(const std::vector<std::string>& vars, const std::map<std::string, Track>& nums) {
        Tracks t;
        for (const auto& v : vars) t.push_back(nums.at(v));
        return t;
    }

    std::map<std::string, Track> merged(const Predicate& a, const Predicate& b) {
        std::map<std::string, Track> m;
        for (const Predicate* p : {&a, &b})
            for (std::size_t t = 0; t < p->variables.size(); ++t) {
                auto [it, inserted] = m.emplace(p->variables[t], p->automaton.tracks()[t]);
                if (!inserted && it->second != p->automaton.tracks()[t])
                    throw Error(Errc::MixedNumerationWithoutConverter,
                                "variable " + p->variables[t] + " used in numerations " + it->second.numeration +
                                    " and " + p->automaton.tracks()[t].numeration);
            }
        return m;
    }

    Automaton validity_of(const Tracks& target, const std::vector<std::size_t>& which) {
        Automaton v(target);
        v.add_state(1);
        for (std::size_t l = 0; l < v.letters(); ++l) v.set_transition(0, l, 0);
        for (auto t : which) v = intersect(v, lift(env.validity(target[t].numeration), target, {t}));
        return v;
    }

    // Reinterprets p over `vars` (a sorted superset); new variables are
    // restricted to valid representations when `validate` is set.
    Automaton widen(const Predicate& p, const std::vector<std::string>& vars, const Tracks& target, bool validate) {
        if (p.variables == vars) return p.automaton;
        std::vector<std::size_t> pos, extra;
        for (const auto& v : p.variables)
            pos.push_back(static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()));
        for (std::size_t t = 0; t < vars.size(); ++t)
            if (!std::binary_search(p.variables.begin(), p.variables.end(), vars[t])) extra.push_back(t);
        Automaton a = lift(p.automaton, target, pos);
        if (validate && !extra.empty()) a = intersect(a, validity_of(target, extra));
        return minimize(a);
    }

    Predicate combine(const Predicate& a, const Predicate& b, bool validate,
                      const std::function<std::int64_t(std::int64_t, std::int64_t)>& f) {
        auto nums = merged(a, b);
        Predicate r;
        for (const auto& [v, t] : nums) r.variables.push_back(v);
        const Tracks target = tracks_of(r.variables, nums);
        r.automaton = minimize(product(widen(a, r.variables, target, validate), widen(b, r.variables, target, validate), f));
        return r;
    }

    Predicate conj(const Predicate& a, const Predicate& b) {
        return combine(a, b, false, [](std::int64_t x, std::int64_t y) -> std::int64_t { return x && y; });
    }

    Predicate negate(const Predicate& p) {
        std::vector<std::size_t> all(p.variables.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        Predicate r = p;
        r.automaton = intersect(complement(p.automaton), validity_of(p.automaton.tracks(), all));
        return r;
    }

    Predicate exists(Predicate p, const std::string& v) {
        auto it = std::lower_bound(p.variables.begin(), p.variables.end(), v);
        if (it == p.variables.end() || *it != v) return p;
        const auto t = static_cast<std::size_t>(it - p.variables.begin());
        p.automaton = project(p.automaton, t, env.projection_cap);
        p.variables.erase(it);
        return p;
    }

    // ---- terms

    Automaton constant(const std::string& num, long long c) {
        if (c < 0) throw Error(Errc::InvalidArgument, "negative constant");
        const Numeration& n = env.numeration(num);
        const Digits d = n.rep(static_cast<std::uint64_t>(c));
        Automaton a({{num, n.radix()}});
        for (std::size_t i = 0; i <= d.size(); ++i) a.add_state(i == d.size() ? 1 : 0);
        const auto dead = a.add_state(0);
        for (std::uint32_t s = 0; s < a.size(); ++s)
            for (std::size_t l = 0; l < a.letters(); ++l) a.set_transition(s, l, dead);
        for (std::size_t i = 0; i < d.size(); ++i) a.set_transition(static_cast<std::uint32_t>(i), d[i], static_cast<std::uint32_t>(i + 1));
        if (d.empty() || d[0] != 0) a.set_transition(0, 0, 0);
        a.set_initial(0);
        return minimize(a);
    }

    Automaton comparator(const std::string& num, const std::string& op) {
        const unsigned r = env.numeration(num).radix();
        Automaton a({{num, r}, {num, r}});
        const bool eq_out = op == "=" || op == "<=" || op == ">=";
        const bool lt_out = op == "<" || op == "<=" || op == "!=";
        const bool gt_out = op == ">" || op == ">=" || op == "!=";
        const auto eq = a.add_state(eq_out), lt = a.add_state(lt_out), gt = a.add_state(gt_out);
        for (unsigned x = 0; x < r; ++x)
            for (unsigned y = 0; y < r; ++y) {
                const auto l = a.encode({x, y});
                a.set_transition(eq, l, x < y ? lt : x > y ? gt : eq);
                a.set_transition(lt, l, lt);
                a.set_transition(gt, l, gt);
            }
        a.set_initial(eq);
        std::vector<std::size_t> both{0, 1};
        return minimize(intersect(a, validity_of(a.tracks(), both)));
    }

    struct Pending {
        std::vector<Predicate> constraints;
        std::vector<std::string> fresh;
    };

    static std::string first_var_num(const Term& t) {
        if (t.kind == Term::Var) return t.num;
        for (const auto& k : t.kids) {
            auto n = first_var_num(k);
            if (!n.empty()) return n;
        }
        return {};
    }

    // Returns a variable equal to the term's value, recording constraints.
    std::string term_var(const Term& t, const std::string& num, Pending& pend) {
        if (t.kind == Term::Var) {
            if (!t.annotated && t.num != num && !num.empty())
                throw Error(Errc::MixedNumerationWithoutConverter,
                            "variable " + t.name + " is read in " + t.num + " where " + num + " is expected");
            return t.name;
        }
        const std::string v = fresh();
        pend.fresh.push_back(v);
        term_into(t, v, num, pend);
        return v;
    }

    // Records the constraint target = value(t).
    void term_into(const Term& t, const std::string& target, const std::string& num, Pending& pend) {
        switch (t.kind) {
        case Term::Var: {
            const std::string v = term_var(t, num, pend);
            pend.constraints.push_back(bind(comparator(num, "="), {v, target}));
            return;
        }
        case Term::Const:
            pend.constraints.push_back(bind(constant(num, t.value), {target}));
            return;
        case Term::Add: {
            auto a = term_var(t.kids[0], num, pend), b = term_var(t.kids[1], num, pend);
            pend.constraints.push_back(bind(env.adder(num), {a, b, target}));
            return;
        }
        case Term::Sub: {
            auto a = term_var(t.kids[0], num, pend), b = term_var(t.kids[1], num, pend);
            pend.constraints.push_back(bind(env.adder(num), {target, b, a}));
            return;
        }
        case Term::Mul: {
            if (t.value < 0) throw Error(Errc::InvalidArgument, "negative factor");
            if (t.value == 0) {
                pend.constraints.push_back(bind(constant(num, 0), {target}));
                return;
            }
            const auto x = term_var(t.kids[0], num, pend);
            std::string acc = x;
            for (long long i = 1; i < t.value; ++i) {
                const std::string next = i + 1 == t.value ? target : fresh();
                if (next != target) pend.fresh.push_back(next);
                pend.constraints.push_back(bind(env.adder(num), {acc, x, next}));
                acc = next;
            }
            if (t.value == 1) pend.constraints.push_back(bind(comparator(num, "="), {x, target}));
            return;
        }
        }
    }

    Predicate finish(Predicate p, Pending& pend) {
        // Conjoin smallest constraints first.
        std::sort(pend.constraints.begin(), pend.constraints.end(),
                  [](const Predicate& a, const Predicate& b) { return a.automaton.size() < b.automaton.size(); });
        for (const auto& c : pend.constraints) p = conj(p, c);
        for (const auto& v : pend.fresh) p = exists(std::move(p), v);
        return p;
    }

    // Resolves each argument of a track-typed atom to a variable.
    std::vector<std::string> args_for(const std::vector<Term>& terms, const Tracks& tracks, Pending& pend) {
        std::vector<std::string> args;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string& num = tracks[i].numeration;
            if (!env.has_numeration(num))
                throw Error(Errc::InvalidArgument, "track numeration '" + num + "' is not registered");
            const Term& t = terms[i];
            const std::string declared = first_var_num(t);
            if (!declared.empty() && declared != num && t.kind == Term::Var)
                throw Error(Errc::MixedNumerationWithoutConverter,
                            "argument " + t.name + " is in " + declared + " but the track expects " + num);
            args.push_back(term_var(t, declared.empty() ? num : declared, pend));
        }
        return args;
    }

    Predicate compile(const Formula& f) {
        switch (f.kind) {
        case Formula::Not:
            return negate(compile(f.kids[0]));
        case Formula::And:
            return conj(compile(f.kids[0]), compile(f.kids[1]));
        case Formula::Or:
            return combine(compile(f.kids[0]), compile(f.kids[1]), true,
                           [](std::int64_t x, std::int64_t y) -> std::int64_t { return x || y; });
        case Formula::Xor:
            return combine(compile(f.kids[0]), compile(f.kids[1]), true,
                           [](std::int64_t x, std::int64_t y) -> std::int64_t { return (x != 0) != (y != 0); });
        case Formula::Implies:
            return combine(negate(compile(f.kids[0])), compile(f.kids[1]), true,
                           [](std::int64_t x, std::int64_t y) -> std::int64_t { return x || y; });
        case Formula::Iff: {
            auto a = compile(f.kids[0]), b = compile(f.kids[1]);
            auto both = combine(a, b, true, [](std::int64_t x, std::int64_t y) -> std::int64_t { return x && y; });
            auto none = combine(negate(a), negate(b), true,
                                [](std::int64_t x, std::int64_t y) -> std::int64_t { return x && y; });
            return combine(both, none, true, [](std::int64_t x, std::int64_t y) -> std::int64_t { return x || y; });
        }
        case Formula::Exists:
        case Formula::Forall: {
            Predicate p = compile(f.kids[0]);
            const bool all = f.kind == Formula::Forall;
            if (all) p = negate(p);
            for (auto it = f.vars.rbegin(); it != f.vars.rend(); ++it) p = exists(std::move(p), *it);
            return all ? negate(p) : p;
        }
        case Formula::Compare: {
            std::string num = first_var_num(f.terms[0]);
            if (num.empty()) num = first_var_num(f.terms[1]);
            if (num.empty()) num = f.scope_num;
            if (num.empty()) throw Error(Errc::InvalidArgument, "no numeration system in scope");
            env.numeration(num);
            Pending pend;
            const Term& l = f.terms[0];
            const Term& r = f.terms[1];
            Predicate p;
            if (f.op == "=" && l.kind == Term::Var) {
                const auto v = term_var(l, num, pend);
                if (r.kind == Term::Var && r.name == v)
                    p = bind(env.validity(num), {v});
                else
                    term_into(r, v, num, pend);
            } else if (f.op == "=" && r.kind == Term::Var) {
                term_into(l, term_var(r, num, pend), num, pend);
            } else {
                const auto a = term_var(l, num, pend), b = term_var(r, num, pend);
                if (a == b) {
                    const bool holds = f.op == "=" || f.op == "<=" || f.op == ">=";
                    p = holds ? bind(env.validity(num), {a}) : bind(map_outputs(env.validity(num), [](std::int64_t) { return 0; }), {a});
                } else {
                    p = bind(comparator(num, f.op), {a, b});
                }
            }
            if (p.automaton.track_count() == 0 && p.variables.empty() && pend.constraints.empty())
                throw Error(Errc::ParseError, "empty comparison");
            if (p.variables.empty() && p.automaton.size() == 0) {
                p = pend.constraints.back();
                pend.constraints.pop_back();
            }
            return finish(std::move(p), pend);
        }
        case Formula::WordCmp: {
            const Automaton& w = env.word(f.name);
            if (f.terms.size() != w.track_count())
                throw Error(Errc::ArityMismatch, f.name + " has " + std::to_string(w.track_count()) + " indices");
            Pending pend;
            auto args = args_for(f.terms, w.tracks(), pend);
            Predicate p;
            if (f.rhs_word.empty()) {
                const auto v = f.value;
                const auto& op = f.op;
                auto holds = [v, op](std::int64_t o) -> std::int64_t {
                    if (op == "=") return o == v;
                    if (op == "!=") return o != v;
                    if (op == "<") return o < v;
                    if (op == "<=") return o <= v;
                    if (op == ">") return o > v;
                    return o >= v;
                };
                p = bind(map_outputs(w, holds), args);
            } else {
                const Automaton& w2 = env.word(f.rhs_word);
                if (f.rhs_terms.size() != w2.track_count())
                    throw Error(Errc::ArityMismatch, f.rhs_word + " has " + std::to_string(w2.track_count()) + " indices");
                auto args2 = args_for(f.rhs_terms, w2.tracks(), pend);
                // Joint DFAO over both index lists, then compare outputs.
                std::vector<std::string> all = args;
                all.insert(all.end(), args2.begin(), args2.end());
                Tracks t = w.tracks();
                t.insert(t.end(), w2.tracks().begin(), w2.tracks().end());
                std::vector<std::size_t> p1(w.track_count()), p2(w2.track_count());
                for (std::size_t i = 0; i < p1.size(); ++i) p1[i] = i;
                for (std::size_t i = 0; i < p2.size(); ++i) p2[i] = p1.size() + i;
                const auto& op = f.op;
                Automaton joint = product(lift(w, t, p1), lift(w2, t, p2), [op](std::int64_t x, std::int64_t y) -> std::int64_t {
                    if (op == "=") return x == y;
                    if (op == "!=") return x != y;
                    if (op == "<") return x < y;
                    if (op == "<=") return x <= y;
                    if (op == ">") return x > y;
                    return x >= y;
                });
                p = bind(minimize(joint), all);
            }
            std::vector<std::size_t> all_tracks(p.variables.size());
            for (std::size_t i = 0; i < all_tracks.size(); ++i) all_tracks[i] = i;
            p.automaton = minimize(intersect(p.automaton, validity_of(p.automaton.tracks(), all_tracks)));
            return finish(std::move(p), pend);
        }
        case Formula::Rel: {
            const Automaton& r = env.relation(f.name);
            if (f.terms.size() != r.track_count())
                throw Error(Errc::ArityMismatch, "$" + f.name + " takes " + std::to_string(r.track_count()) +
                                                     " arguments, got " + std::to_string(f.terms.size()));
            Pending pend;
            auto args = args_for(f.terms, r.tracks(), pend);
            return finish(bind(r, args), pend);
        }
        }
        throw Error(Errc::ParseError, "unhandled formula");
    }
};

} // namespace

Predicate compile(const std::string& formula, Environment& env) {
    Parser parser(formula, env.default_numeration);
    Formula f = parser.parse();
    Compiler c{env};
    return c.compile(f);
}

Automaton arrange(const Predicate& p, const std::vector<std::string>& order, Environment& env) {
    Compiler c{env};
    std::map<std::string, Track> nums;
    for (std::size_t t = 0; t < p.variables.size(); ++t) nums.emplace(p.variables[t], p.automaton.tracks()[t]);
    for (const auto& v : p.variables)
        if (std::find(order.begin(), order.end(), v) == order.end())
            throw Error(Errc::ArityMismatch, "variable " + v + " missing from the argument order");
    for (const auto& v : order)
        if (!nums.count(v)) {
            if (env.default_numeration.empty()) throw Error(Errc::InvalidArgument, "no numeration for " + v);
            nums.emplace(v, Track{env.default_numeration, env.numeration(env.default_numeration).radix()});
        }
    std::vector<std::string> sorted;
    for (const auto& [v, t] : nums) sorted.push_back(v);
    const Tracks st = c.tracks_of(sorted, nums);
    Automaton wide = c.widen(p, sorted, st, true);
    // Now permute the sorted tracks into `order`.
    Tracks target = c.tracks_of(order, nums);
    Automaton out(target);
    std::vector<std::size_t> pos;
    for (const auto& v : sorted)
        pos.push_back(static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin()));
    return minimize(lift(wide, target, pos));
}

Automaton dfao_value_predicate(const Automaton& dfao, std::int64_t value) {
    const auto range = dfao.output_range();
    if (std::find(range.begin(), range.end(), value) == range.end())
        throw Error(Errc::ValueNotInRange, "value " + std::to_string(value) + " is not an output of the automaton");
    return minimize(map_outputs(dfao, [value](std::int64_t o) -> std::int64_t { return o == value; }));
}

Automaton feq_predicate(const Automaton& word, const std::string& numeration, Environment& env) {
    const std::string saved = env.default_numeration;
    env.default_numeration = numeration;
    const std::string w = "_feqword", mismatch = "_feqmismatch";
    env.set_word(w, word);
    // Positions u whose letter differs from the one at the same offset from j.
    env.define(mismatch, arrange(compile("Ev v+i=u+j & " + w + "[u]!=" + w + "[v]", env), {"i", "j", "u"}, env));
    Automaton feq = arrange(compile("~Eu i<=u & u<n+i & $" + mismatch + "(i,j,u)", env), {"i", "j", "n"}, env);
    env.default_numeration = saved;
    return feq;
}

} // namespace kabel
