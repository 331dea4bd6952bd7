#pragma once

#include "kabel/words.hpp"

#include <cstdint>
#include <vector>

namespace kabel {

/// Brute-force complexity functions over a finite prefix. Every function also
/// evaluates the first half of the prefix and throws PrefixTooShort unless both
/// agree for all n ≤ n_max.
std::vector<std::uint64_t> brute_factor_complexity(const Word& prefix, std::size_t n_max);
std::vector<std::uint64_t> brute_kabelian(const Word& prefix, std::size_t k, std::size_t n_max);
std::vector<std::uint64_t> brute_exact_kabelian(const Word& prefix, std::size_t k, std::size_t n_max);

/// Prefix of τ^ω(a) long enough for the oracles up to n_max in practice
/// (stability is still checked by each oracle).
Word oracle_prefix(const Substitution& s, Letter a, std::size_t n_max);

/// Largest ||u|_w − |v|_w| over blocks w of length k and factors u, v of the
/// same length n ≤ n_max, with a witness. Values are lower bounds for the
/// infinite word.
struct BalanceWitness {
    std::uint64_t value = 0;
    Word block;
    std::size_t n = 0, pos_u = 0, pos_v = 0; // u = prefix[pos_u..+n), v = prefix[pos_v..+n)
};
struct BalanceReport {
    std::vector<std::uint64_t> per_n; // max over w, u, v for each n
    BalanceWitness best;
};
BalanceReport brute_balance(const Word& prefix, std::size_t k, std::size_t n_max);

/// Per block: whether some equal-length factor pair exceeds C, searched on
/// the prefix. "No" only means none was found on this prefix.
enum class Unbalanced { Yes, No, Mixed };
struct TotallyUnbalancedReport {
    Unbalanced verdict = Unbalanced::No;
    std::vector<Word> blocks;                 // all length-k factors, first-occurrence order
    std::vector<bool> unbalanced;             // per block
    std::vector<BalanceWitness> witnesses;    // per block (value 0 when none)
};
TotallyUnbalancedReport brute_totally_unbalanced(const Word& prefix, std::size_t k, std::uint64_t C, std::size_t n_max);

/// Number of occurrences of each length-k factor (indexed like the blocks of
/// brute_totally_unbalanced) in u; overlapping occurrences count.
std::vector<std::uint64_t> block_counts(const Word& u, const std::vector<Word>& blocks);

/// u ~_k v by definition: equal occurrence counts of every word of length ≤ k.
bool kabelian_equivalent(const Word& u, const Word& v, std::size_t k);
/// u ~_k v via equal length-(k−1) prefixes (or suffixes) and equal counts of
/// length-k blocks; words shorter than k must be equal.
bool kabelian_equivalent_prefix_blocks(const Word& u, const Word& v, std::size_t k, bool use_suffix = false);
/// u ~_{=k} v: equal counts of every word of length exactly k.
bool exact_kabelian_equivalent(const Word& u, const Word& v, std::size_t k);

/// Distinct factors of length k in first-occurrence order.
std::vector<Word> factors_of_length(const Word& prefix, std::size_t k);

} // namespace kabel
