#pragma once

#include "kabel/words.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace kabel {

/// Θ_k: distinct length-k factors in order of first occurrence; block letter
/// ℓ (0-based here, displayed 1-based) stands for theta[ℓ].
struct BlockCoding {
    std::size_t k = 1;
    std::vector<Word> theta;
    std::vector<Letter> pi; // first letter of each block

    Letter letter_of(const Word& block) const;
};

struct SlidingBlock {
    Word coded;
    BlockCoding coding;
};

/// B_k of a finite prefix. Throws WindowTooLong when k > |prefix|.
SlidingBlock sliding_block(const Word& prefix, std::size_t k);

struct BlockSubstitution {
    Substitution base;
    Letter seed = 0;
    BlockCoding coding;
    Substitution tau_k; // over block letters 0..p(k)-1, prolongable on 0
};

struct BlockOptions {
    std::size_t max_prefix = 50'000'000;
    std::size_t verify_length = 10'000;
};

/// τ_k: the image of block ℓ = u is the list of the first |τ(u[0])| length-k
/// factors of τ(u). The result is checked against the sliding-block code of
/// the base fixed point. Throws NotPrimitive, NotProlongable, CapExceeded.
BlockSubstitution block_substitution(const Substitution& s, Letter a, std::size_t k, const BlockOptions& opt = {});

/// DSL of τ_k with block letters shown 1-based (comma separated).
std::string to_dsl_one_based(const Substitution& s);

/// V_k[ℓ] = V[π_k(ℓ)] for a rational eigenpair M_τ V = αV (column
/// convention). Throws NotAnEigenpair when the pair is not exact, or when the
/// lifted vector fails M_{τ_k} V_k = α V_k.
std::vector<Rational> lift_eigenvector(const BlockSubstitution& b, const std::vector<Rational>& v, const Rational& alpha);

struct CharPolyRelation {
    IntPoly p_tau, p_tau2, p_tauk;
    int shift = -1;            // m with P_τk = X^m P_τ2, or -1
    bool tau_divides = false;  // P_τ | P_τk
};
CharPolyRelation char_poly_relation(const Substitution& s, Letter a, std::size_t k);

} // namespace kabel
