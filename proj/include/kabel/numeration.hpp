#pragma once

#include "kabel/words.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace kabel {

using Digits = std::vector<std::uint16_t>;

class Automaton;

/// Dumont–Thomas numeration system of a prolongable substitution, read most
/// significant digit first. Integer base b is the system of 0 ↦ 0^b.
///
/// The digit language is the language of the addressing automaton: every word
/// read from the seed letter along defined transitions. Since τ(a) starts with
/// a, leading zeros loop on the initial state, so the accepted language is
/// exactly 0*·L with L the canonical representations.
class Numeration {
public:
    static Numeration dumont_thomas(const Substitution& s, Letter seed, std::string name);
    static Numeration integer_base(unsigned base, std::string name);

    const std::string& name() const { return name_; }
    const Substitution& substitution() const { return subst_; }
    Letter seed() const { return seed_; }
    unsigned radix() const { return radix_; }
    std::size_t state_count() const { return subst_.size(); }
    /// Addressing transition δ(b,i) = τ(b)[i], or -1 when i ≥ |τ(b)|.
    int next(Letter state, unsigned digit) const;
    bool is_integer_base() const { return integer_base_; }

    bool valid(const Digits& u) const;
    /// Canonical representation; rep(0) is the empty word.
    Digits rep(std::uint64_t n) const;
    /// Throws InvalidRepresentation outside 0*·L and CapExceeded on overflow.
    std::uint64_t val(const Digits& u) const;
    Digits padded_rep(std::uint64_t n, std::size_t length) const;

    /// Single-track DFA accepting 0*·L (plus a dead state).
    Automaton validity_dfa() const;
    /// Single-track DFAO with output τ^ω(seed)[val(u)]; invalid inputs reach a
    /// sink with output -1.
    Automaton word_dfao() const;

    std::string to_string(const Digits& u) const;
    Digits parse_digits(const std::string& s) const;

private:
    void build_levels();

    std::string name_;
    Substitution subst_;
    Letter seed_ = 0;
    unsigned radix_ = 0;
    bool integer_base_ = false;
    std::vector<std::vector<std::uint64_t>> levels_; // |τ^l(b)|, saturating
};

using NumerationPtr = std::shared_ptr<const Numeration>;

/// Addressing automaton as a DFAO (states = letters, output q ↦ q). Throws
/// NotProlongable.
Automaton addressing(const Substitution& s, Letter a);

} // namespace kabel
