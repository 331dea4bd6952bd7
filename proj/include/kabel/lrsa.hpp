#pragma once

#include "kabel/automaton.hpp"
#include "kabel/numeration.hpp"
#include "kabel/poly.hpp"
#include "kabel/spectrum.hpp"

#include <cstdint>
#include <vector>

namespace kabel {

/// Integer sequence satisfying the recurrence with characteristic polynomial
/// `poly` (monic, degree d), given by its first d terms.
struct LinRecSeq {
    IntPoly poly;
    std::vector<Integer> initial;
    Integer term(std::size_t n) const;
    std::vector<Integer> terms(std::size_t count) const;
};

/// Partial automaton whose transitions carry linear recurrence sequences.
/// Reading u from the initial state accumulates r ← shift(r) + e(q,a); the
/// series value is r[0], or 0 when a transition is undefined.
struct Lrsa {
    Tracks tracks;
    IntPoly poly;
    std::uint32_t initial = 0;
    std::uint32_t states = 0;
    std::size_t letters = 1;
    std::vector<std::int32_t> delta;              ///< states × letters, -1 = undefined
    std::vector<std::vector<std::int64_t>> edge;  ///< first deg(poly) terms per transition

    std::size_t dim() const { return static_cast<std::size_t>(poly.degree()); }
    LinRecSeq edge_sequence(std::uint32_t q, std::size_t letter) const;
    Integer series(const std::vector<Digits>& words) const;
};

/// Valuation series of the numeration (edges carry |τ^n(τ(b)[0..i))|).
Lrsa addressing_lrsa(const Numeration& n);
/// Parikh prefix series for letter b (edges carry |τ^n(τ(c)[0..i))|_b).
Lrsa parikh_lrsa(const Numeration& n, Letter b);

struct SignedLrsa {
    long coefficient;
    const Lrsa* lrsa;
};

/// Signed combination. With `synchronized` the tracks are concatenated and
/// the series is Σ c_i s_i(u_i) (the ⊕ sum); otherwise all operands read the
/// same tracks and the series is Σ c_i s_i(u).
Lrsa combine(const std::vector<SignedLrsa>& ops, bool synchronized = true);

struct SupportOptions {
    std::size_t max_states = 1'000'000;
    double safety = 4.0;
};

/// DFA of the inputs on which every transition is defined and the series
/// vanishes. Throws NotUltimatelyPisot or StateBudgetExceeded.
Automaton zero_set_dfa(const Lrsa& a, const SupportOptions& opt = {});
/// DFA of supp(s) = defined inputs with a nonzero series value.
Automaton support_dfa(const Lrsa& a, const SupportOptions& opt = {});

/// ⟨x,y,z⟩ with val(x) + val(y) = val(z), all valid.
Automaton adder(const Numeration& n);
/// ⟨u,v⟩ with val_1(u) = val_2(v). Throws RootMismatch when the Pisot
/// polynomials differ.
Automaton converter(const Numeration& n1, const Numeration& n2);
/// ⟨n, c⟩ with c = |x[0..n)|_b.
Automaton parikh_sync(const Numeration& n, Letter b);

} // namespace kabel
