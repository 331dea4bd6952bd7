#include "kabel/oracle.hpp"

#include "kabel/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kabel {

namespace {

// Suffix array by prefix doubling, with Kasai LCP (lcp[r] = lcp(sa[r-1], sa[r])).
struct SuffixArray {
    std::vector<std::uint32_t> sa, lcp;

    explicit SuffixArray(const Word& s) {
        const std::size_t n = s.size();
        sa.resize(n);
        std::vector<std::uint32_t> rank(n), tmp(n);
        std::iota(sa.begin(), sa.end(), 0);
        for (std::size_t i = 0; i < n; ++i) rank[i] = s[i];
        for (std::size_t k = 1;; k <<= 1) {
            auto key = [&](std::uint32_t i) {
                return std::make_pair(rank[i], i + k < n ? static_cast<std::int64_t>(rank[i + k]) : -1);
            };
            std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
            tmp[sa[0]] = 0;
            for (std::size_t r = 1; r < n; ++r) tmp[sa[r]] = tmp[sa[r - 1]] + (key(sa[r - 1]) < key(sa[r]) ? 1 : 0);
            rank = tmp;
            if (n == 0 || rank[sa[n - 1]] == n - 1) break;
        }
        lcp.assign(n, 0);
        std::size_t h = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (rank[i] == 0) {
                h = 0;
                continue;
            }
            const std::size_t j = sa[rank[i] - 1];
            while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
            lcp[rank[i]] = static_cast<std::uint32_t>(h);
            if (h) --h;
        }
    }

    // One representative start position per distinct factor of length n.
    std::vector<std::uint32_t> distinct(std::size_t n, std::size_t len) const {
        std::vector<std::uint32_t> out;
        bool have = false;
        std::uint32_t run = 0; // min lcp since the last kept suffix
        for (std::size_t r = 0; r < sa.size(); ++r) {
            if (r) run = std::min(run, lcp[r]);
            if (sa[r] + n > len) continue;
            if (!have || run < n) out.push_back(sa[r]);
            have = true;
            run = UINT32_MAX;
        }
        return out;
    }
};

// Coding of positions by their length-k block (index into first-occurrence
// order) and prefix sums per block.
struct BlockIndex {
    std::vector<Word> blocks;
    std::vector<std::uint32_t> code; // code[i] = block at i, for i + k ≤ len
    std::vector<std::vector<std::uint32_t>> sums; // sums[b][i] = #{j < i : code[j] = b}

    BlockIndex(const Word& s, std::size_t k) {
        std::map<Word, std::uint32_t> ids;
        if (s.size() >= k)
            for (std::size_t i = 0; i + k <= s.size(); ++i) {
                Word w(s.begin() + static_cast<long>(i), s.begin() + static_cast<long>(i + k));
                auto it = ids.find(w);
                if (it == ids.end()) {
                    it = ids.emplace(w, static_cast<std::uint32_t>(blocks.size())).first;
                    blocks.push_back(w);
                }
                code.push_back(it->second);
            }
        sums.assign(blocks.size(), std::vector<std::uint32_t>(code.size() + 1, 0));
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (std::size_t i = 0; i < code.size(); ++i) sums[b][i + 1] = sums[b][i] + (code[i] == b ? 1 : 0);
    }
    // Occurrences of block b inside the factor [i, i+n), n ≥ k.
    std::uint32_t count(std::size_t b, std::size_t i, std::size_t n, std::size_t k) const {
        return sums[b][i + n - k + 1] - sums[b][i];
    }
};

enum class Kind { Factor, Abelian, Exact };

std::vector<std::uint64_t> classes(const Word& s, std::size_t len, std::size_t k, std::size_t n_max, Kind kind) {
    Word w(s.begin(), s.begin() + static_cast<long>(len));
    SuffixArray sa(w);
    const std::size_t kk = std::max<std::size_t>(k, 1);
    BlockIndex blocks(w, kk);
    // Id of each position's length-(k-1) prefix.
    std::vector<std::uint32_t> head(len, 0);
    if (kind == Kind::Abelian && k > 1) {
        std::map<Word, std::uint32_t> ids;
        for (std::size_t i = 0; i + k - 1 <= len; ++i) {
            Word h(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + k - 1));
            head[i] = ids.emplace(h, static_cast<std::uint32_t>(ids.size())).first->second;
        }
    }
    std::vector<std::uint64_t> out;
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > len) throw Error(Errc::PrefixTooShort, "prefix shorter than the requested length");
        auto reps = sa.distinct(n, len);
        if (n == 0) {
            out.push_back(1);
            continue;
        }
        if (kind == Kind::Factor || (kind == Kind::Abelian && n < k)) {
            out.push_back(reps.size());
            continue;
        }
        if (kind == Kind::Exact && n < k) {
            out.push_back(1);
            continue;
        }
        std::vector<std::vector<std::uint32_t>> keys;
        keys.reserve(reps.size());
        for (auto i : reps) {
            std::vector<std::uint32_t> key;
            key.reserve(blocks.blocks.size() + 1);
            if (kind == Kind::Abelian) key.push_back(head[i]);
            for (std::size_t b = 0; b < blocks.blocks.size(); ++b) key.push_back(blocks.count(b, i, n, kk));
            keys.push_back(std::move(key));
        }
        std::sort(keys.begin(), keys.end());
        out.push_back(static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin()));
    }
    return out;
}

std::vector<std::uint64_t> stable(const Word& prefix, std::size_t k, std::size_t n_max, Kind kind) {
    const std::size_t half = prefix.size() / 2;
    if (half < n_max + k) throw Error(Errc::PrefixTooShort, "prefix too short for the stability check");
    auto full = classes(prefix, prefix.size(), k, n_max, kind);
    auto part = classes(prefix, half, k, n_max, kind);
    for (std::size_t n = 0; n <= n_max; ++n)
        if (full[n] != part[n])
            throw Error(Errc::PrefixTooShort, "factor classes of length " + std::to_string(n) + " not stable under doubling");
    return full;
}

} // namespace

std::vector<std::uint64_t> brute_factor_complexity(const Word& prefix, std::size_t n_max) {
    return stable(prefix, 0, n_max, Kind::Factor);
}

std::vector<std::uint64_t> brute_kabelian(const Word& prefix, std::size_t k, std::size_t n_max) {
    if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
    return stable(prefix, k, n_max, Kind::Abelian);
}

std::vector<std::uint64_t> brute_exact_kabelian(const Word& prefix, std::size_t k, std::size_t n_max) {
    if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
    return stable(prefix, k, n_max, Kind::Exact);
}

Word oracle_prefix(const Substitution& s, Letter a, std::size_t n_max) {
    return fixed_point_prefix(s, a, 64 * (n_max + 16));
}

std::vector<Word> factors_of_length(const Word& prefix, std::size_t k) { return BlockIndex(prefix, k).blocks; }

std::vector<std::uint64_t> block_counts(const Word& u, const std::vector<Word>& blocks) {
    std::vector<std::uint64_t> out;
    for (const auto& w : blocks) out.push_back(occurrences(u, w));
    return out;
}

namespace {

// For each block, max and min of its count over all factors of each length.
template <class F>
void scan_balance(const Word& prefix, std::size_t k, std::size_t n_max, F&& visit) {
    BlockIndex bi(prefix, k);
    const std::size_t len = prefix.size();
    for (std::size_t n = k; n <= n_max && n <= len; ++n)
        for (std::size_t b = 0; b < bi.blocks.size(); ++b) {
            std::uint32_t hi = 0, lo = UINT32_MAX;
            std::size_t at_hi = 0, at_lo = 0;
            for (std::size_t i = 0; i + n <= len; ++i) {
                const auto c = bi.count(b, i, n, k);
                if (c > hi || i == 0) {
                    hi = c;
                    at_hi = i;
                }
                if (c < lo) {
                    lo = c;
                    at_lo = i;
                }
            }
            visit(n, b, bi.blocks[b], hi - lo, at_hi, at_lo);
        }
}

} // namespace

BalanceReport brute_balance(const Word& prefix, std::size_t k, std::size_t n_max) {
    if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
    if (prefix.size() < n_max + k) throw Error(Errc::PrefixTooShort, "prefix shorter than the requested length");
    BalanceReport r;
    r.per_n.assign(n_max + 1, 0);
    scan_balance(prefix, k, n_max, [&](std::size_t n, std::size_t, const Word& w, std::uint64_t v, std::size_t hi, std::size_t lo) {
        r.per_n[n] = std::max(r.per_n[n], v);
        if (v > r.best.value) r.best = {v, w, n, hi, lo};
    });
    return r;
}

TotallyUnbalancedReport brute_totally_unbalanced(const Word& prefix, std::size_t k, std::uint64_t C, std::size_t n_max) {
    if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
    TotallyUnbalancedReport r;
    r.blocks = factors_of_length(prefix, k);
    r.unbalanced.assign(r.blocks.size(), false);
    r.witnesses.resize(r.blocks.size());
    scan_balance(prefix, k, std::min(n_max, prefix.size()),
                 [&](std::size_t n, std::size_t b, const Word& w, std::uint64_t v, std::size_t hi, std::size_t lo) {
                     if (v > C && !r.unbalanced[b]) {
                         r.unbalanced[b] = true;
                         r.witnesses[b] = {v, w, n, hi, lo};
                     }
                 });
    const auto yes = static_cast<std::size_t>(std::count(r.unbalanced.begin(), r.unbalanced.end(), true));
    r.verdict = yes == r.blocks.size() ? Unbalanced::Yes : yes == 0 ? Unbalanced::No : Unbalanced::Mixed;
    return r;
}

namespace {

std::map<Word, std::uint64_t> factor_counts(const Word& u, std::size_t k) {
    std::map<Word, std::uint64_t> m;
    for (std::size_t i = 0; i + k <= u.size(); ++i) ++m[Word(u.begin() + static_cast<long>(i), u.begin() + static_cast<long>(i + k))];
    return m;
}

} // namespace

bool exact_kabelian_equivalent(const Word& u, const Word& v, std::size_t k) {
    return u.size() == v.size() && factor_counts(u, k) == factor_counts(v, k);
}

bool kabelian_equivalent(const Word& u, const Word& v, std::size_t k) {
    if (u.size() != v.size()) return false;
    for (std::size_t m = 1; m <= k; ++m)
        if (factor_counts(u, m) != factor_counts(v, m)) return false;
    return true;
}

bool kabelian_equivalent_prefix_blocks(const Word& u, const Word& v, std::size_t k, bool use_suffix) {
    if (u.size() != v.size()) return false;
    if (u.size() < k) return u == v;
    const auto h = static_cast<long>(k - 1);
    const bool ends = use_suffix ? std::equal(u.end() - h, u.end(), v.end() - h) : std::equal(u.begin(), u.begin() + h, v.begin());
    return ends && factor_counts(u, k) == factor_counts(v, k);
}

} // namespace kabel
