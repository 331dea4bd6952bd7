#pragma once

#include "kabel/numeration.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kabel {

/// One input track: the numeration it is read in and its digit count.
struct Track {
    std::string numeration;
    unsigned radix = 2;
    friend bool operator==(const Track&, const Track&) = default;
};

using Tracks = std::vector<Track>;

/// Number of tuple letters: product of the track radices.
std::size_t letter_count(const Tracks& tracks);

/// Complete deterministic automaton over tuples of digits with integer outputs.
/// A DFA is the special case with outputs in {0,1} (1 = accepting).
///
/// A tuple letter is encoded in mixed radix with track 0 most significant.
/// State 0 is not special; `initial()` names the start state.
class Automaton {
public:
    Automaton() : Automaton(Tracks{}) {}
    explicit Automaton(Tracks tracks);

    const Tracks& tracks() const { return tracks_; }
    std::size_t track_count() const { return tracks_.size(); }
    std::size_t letters() const { return letters_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(out_.size()); }
    std::uint32_t initial() const { return initial_; }
    void set_initial(std::uint32_t q) { initial_ = q; }

    std::uint32_t add_state(std::int64_t output = 0);
    void set_transition(std::uint32_t q, std::size_t letter, std::uint32_t to) { delta_[q * letters_ + letter] = to; }
    std::uint32_t next(std::uint32_t q, std::size_t letter) const { return delta_[q * letters_ + letter]; }
    const std::uint32_t* row(std::uint32_t q) const { return delta_.data() + q * letters_; }
    std::int64_t output(std::uint32_t q) const { return out_[q]; }
    void set_output(std::uint32_t q, std::int64_t v) { out_[q] = v; }
    bool accepting(std::uint32_t q) const { return out_[q] != 0; }
    const std::vector<std::int64_t>& outputs() const { return out_; }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    std::size_t encode(const std::vector<unsigned>& digits) const;
    std::vector<unsigned> decode(std::size_t letter) const;

    /// Reads the tuple of words, left-padding every track with zeros to the
    /// longest one.
    std::int64_t evaluate(const std::vector<Digits>& words) const;
    std::uint32_t run(const std::vector<Digits>& words) const;

    /// Output values that occur on reachable states.
    std::vector<std::int64_t> output_range() const;

    friend bool operator==(const Automaton& a, const Automaton& b);

private:
    Tracks tracks_;
    std::size_t letters_ = 1;
    std::uint32_t initial_ = 0;
    std::vector<std::uint32_t> delta_;
    std::vector<std::int64_t> out_;
    std::string name_;
};

/// Drops unreachable states, merges equivalent states (Hopcroft partition
/// refinement keyed on outputs) and renumbers in breadth-first order from the
/// initial state, letters in increasing order. Equal languages/functions give
/// identical results.
Automaton minimize(const Automaton& a);

/// Synchronous product over identical tracks, output f(out_a, out_b).
Automaton product(const Automaton& a, const Automaton& b,
                  const std::function<std::int64_t(std::int64_t, std::int64_t)>& f);

Automaton intersect(const Automaton& a, const Automaton& b);
Automaton unite(const Automaton& a, const Automaton& b);
/// Flips acceptance; the caller is responsible for re-restricting to valid inputs.
Automaton complement(const Automaton& a);
Automaton map_outputs(const Automaton& a, const std::function<std::int64_t(std::int64_t)>& f);

/// Reinterprets `a` over a larger track list: track t of `a` reads track
/// `positions[t]` of `target`. Positions may repeat (diagonal) and target
/// tracks not listed are unconstrained.
Automaton lift(const Automaton& a, const Tracks& target, const std::vector<std::size_t>& positions);

/// Existential projection of one track of a DFA, with the leading-zero
/// closure on the initial subset so that padding invariance survives.
/// Throws StateBudgetExceeded past `max_states` subsets.
Automaton project(const Automaton& a, std::size_t track, std::size_t max_states = 20'000'000);

/// True iff no reachable state is accepting.
bool is_empty(const Automaton& a);
/// Shortest accepted tuple (breadth first), or empty optional-like flag.
bool shortest_accepted(const Automaton& a, std::vector<std::vector<unsigned>>& witness);

} // namespace kabel
