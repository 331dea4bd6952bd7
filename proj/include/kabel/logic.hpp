#pragma once

#include "kabel/automaton.hpp"
#include "kabel/numeration.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace kabel {

/// Named objects a formula may refer to: numeration systems (with cached
/// validity automata and adders), relations (`$name(...)`) and automatic words
/// or DFAOs (`Name[i][j] = @v`).
class Environment {
public:
    void add_numeration(Numeration n);
    bool has_numeration(const std::string& name) const { return numerations_.count(name) != 0; }
    const Numeration& numeration(const std::string& name) const;
    std::vector<std::string> numeration_names() const;

    /// Single-track DFA of the valid (zero-padded) representations.
    const Automaton& validity(const std::string& numeration);
    /// Three-track relation x + y = z.
    const Automaton& adder(const std::string& numeration);
    void set_adder(const std::string& numeration, Automaton a);

    void define(const std::string& name, Automaton relation);
    bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }
    const Automaton& relation(const std::string& name) const;

    void set_word(const std::string& name, Automaton dfao);
    bool has_word(const std::string& name) const { return words_.count(name) != 0; }
    const Automaton& word(const std::string& name) const;

    /// Numeration used for unannotated variables when a formula has no `?msd_`.
    std::string default_numeration;
    std::size_t projection_cap = 20'000'000;

private:
    std::map<std::string, std::shared_ptr<const Numeration>> numerations_;
    std::map<std::string, Automaton> validity_, adders_, relations_, words_;
};

/// Compiled formula: a DFA accepting exactly the valid padded assignments of
/// the free variables. Track t carries `variables[t]`; variables are sorted.
struct Predicate {
    Automaton automaton;
    std::vector<std::string> variables;

    bool closed() const { return variables.empty(); }
    /// Truth value of a closed formula.
    bool value() const { return automaton.accepting(automaton.initial()); }
};

/// Compiles a formula in the Walnut-style surface syntax:
///   quantifiers `E`/`A` with maximal scope, `~ & | ^ => <=>` (tightest
///   first), comparisons `= != < <= > >=` between terms built from variables,
///   constants, `+`, `-` and `c*t`, word atoms `W[t]...[t] op @v` and
///   `W[t] op V[t]`, relation calls `$r(t, ?msd_x t, ...)`, and `?msd_x`
///   switching the default numeration for the rest of the enclosing group.
Predicate compile(const std::string& formula, Environment& env);

/// Restricts a predicate to the given variable order (all of its free
/// variables must appear); extra variables are constrained to be valid.
Automaton arrange(const Predicate& p, const std::vector<std::string>& order, Environment& env);

/// DFA of the inputs on which `dfao` outputs `value`. Throws ValueNotInRange
/// when no reachable state has that output.
Automaton dfao_value_predicate(const Automaton& dfao, std::int64_t value);

/// feq(i, j, n): the length-n factors at i and j coincide. `word` is the
/// single-track DFAO of the sequence in `numeration`.
Automaton feq_predicate(const Automaton& word, const std::string& numeration, Environment& env);

} // namespace kabel
