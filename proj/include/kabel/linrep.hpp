#pragma once

#include "kabel/automaton.hpp"
#include "kabel/numeration.hpp"
#include "kabel/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace kabel {

/// Sparse square matrix, row-major: rows[i] lists (column, value).
struct SparseMatrix {
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows;
};

/// value(u) = λ · μ(u₁) ⋯ μ(u_t) · γ over tuple letters of `tracks`.
struct LinRep {
    Tracks tracks;
    std::vector<Rational> lambda, gamma;
    std::vector<SparseMatrix> mu; // one per tuple letter

    std::size_t dim() const { return lambda.size(); }
    std::size_t letters() const { return mu.size(); }

    Rational evaluate_letters(const std::vector<std::size_t>& letters) const;
    /// Left-pads every track to the longest word.
    Rational evaluate(const std::vector<Digits>& words) const;
};

LinRep zero_linrep(const Tracks& tracks);

/// Counts, for each assignment of the kept tracks, the assignments of the
/// other tracks accepted by `dfa`. The result is normalized so that λμ(0) = λ;
/// throws CapExceeded when the count is not padding invariant (unbounded).
/// Without normalization λ is the initial state's indicator, which is only
/// correct on inputs padded enough for the counted tracks.
LinRep path_count(const Automaton& dfa, const std::vector<std::size_t>& keep, bool normalize = true);

LinRep add(const LinRep& a, const LinRep& b);
LinRep scale(const LinRep& a, const Rational& c);
LinRep subtract(const LinRep& a, const LinRep& b);
/// Track t of the result reads track `perm[t]` of `a`.
LinRep permute_tracks(const LinRep& a, const std::vector<std::size_t>& perm);

/// Minimal-dimension representation (reachable then observable subspace),
/// exact rational arithmetic.
LinRep reduce(const LinRep& a);

struct SemigroupOptions {
    std::size_t max_states = 2'000'000;
    std::int64_t max_entry = std::int64_t(1) << 32;
};

/// Minimal DFAO computing an integer-valued representation. States are the
/// vectors (value(w·s))_s for a basis of suffixes s, so distinct states have
/// distinct futures. Throws CapExceeded when the caps are hit (unbounded or
/// too large).
Automaton semigroup_trick(const LinRep& a, const SemigroupOptions& opt = {});

/// Values at rep(0), ..., rep(count-1) of a single-track representation.
std::vector<Rational> first_values(const LinRep& a, const Numeration& n, std::size_t count);

} // namespace kabel
