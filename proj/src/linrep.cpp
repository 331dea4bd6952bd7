#include "kabel/linrep.hpp"

#include "kabel/error.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace kabel {

namespace {

std::vector<Rational> times(const std::vector<Rational>& row, const SparseMatrix& m) {
    std::vector<Rational> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (sgn(row[i]) == 0) continue;
        for (const auto& [j, v] : m.rows[i]) out[j] += row[i] * v;
    }
    return out;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

} // namespace

Rational LinRep::evaluate_letters(const std::vector<std::size_t>& letters) const {
    std::vector<Rational> row = lambda;
    for (auto l : letters) row = times(row, mu.at(l));
    return dot(row, gamma);
}

Rational LinRep::evaluate(const std::vector<Digits>& words) const {
    if (words.size() != tracks.size()) throw Error(Errc::TrackMismatch, "wrong number of input words");
    std::size_t len = 0;
    for (const auto& w : words) len = std::max(len, w.size());
    std::vector<std::size_t> letters(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        std::size_t l = 0;
        for (std::size_t t = 0; t < words.size(); ++t) {
            const std::size_t pad = len - words[t].size();
            const unsigned d = i < pad ? 0u : words[t][i - pad];
            if (d >= tracks[t].radix) throw Error(Errc::InvalidArgument, "digit out of range");
            l = l * tracks[t].radix + d;
        }
        letters[i] = l;
    }
    return evaluate_letters(letters);
}

LinRep zero_linrep(const Tracks& tracks) {
    LinRep r;
    r.tracks = tracks;
    r.mu.resize(letter_count(tracks));
    return r;
}

LinRep path_count(const Automaton& dfa, const std::vector<std::size_t>& keep, bool normalize) {
    const std::size_t T = dfa.track_count();
    for (auto k : keep)
        if (k >= T) throw Error(Errc::InvalidArgument, "kept track out of range");
    LinRep r;
    for (auto k : keep) r.tracks.push_back(dfa.tracks()[k]);
    const std::size_t L = letter_count(r.tracks);
    r.mu.resize(L);

    // Co-accessible states.
    const std::uint32_t n = dfa.size();
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::uint32_t q = 0; q < n; ++q)
        for (std::size_t l = 0; l < dfa.letters(); ++l) rev[dfa.next(q, l)].push_back(q);
    std::vector<std::int64_t> index(n, -1);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t q = 0; q < n; ++q)
        if (dfa.accepting(q)) {
            index[q] = 0;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        auto q = stack.back();
        stack.pop_back();
        for (auto p : rev[q])
            if (index[p] < 0) {
                index[p] = 0;
                stack.push_back(p);
            }
    }
    std::vector<std::uint32_t> states;
    for (std::uint32_t q = 0; q < n; ++q)
        if (index[q] == 0) {
            index[q] = static_cast<std::int64_t>(states.size());
            states.push_back(q);
        }
    const std::size_t d = states.size();
    if (d == 0 || index[dfa.initial()] < 0) return zero_linrep(r.tracks);

    // Kept letter of each automaton letter.
    std::vector<std::size_t> kept(dfa.letters());
    for (std::size_t l = 0; l < dfa.letters(); ++l) {
        auto digits = dfa.decode(l);
        std::size_t a = 0;
        for (auto k : keep) a = a * dfa.tracks()[k].radix + digits[k];
        kept[l] = a;
    }
    std::vector<std::map<std::uint32_t, long>> acc(L);
    for (auto& m : r.mu) m.rows.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (auto& m : acc) m.clear();
        const auto* row = dfa.row(states[i]);
        for (std::size_t l = 0; l < dfa.letters(); ++l) {
            const auto j = index[row[l]];
            if (j >= 0) ++acc[kept[l]][static_cast<std::uint32_t>(j)];
        }
        for (std::size_t a = 0; a < L; ++a)
            for (const auto& [j, c] : acc[a]) r.mu[a].rows[i].emplace_back(j, Rational(c));
    }
    r.lambda.assign(d, 0);
    r.lambda[static_cast<std::size_t>(index[dfa.initial()])] = 1;
    r.gamma.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i) r.gamma[i] = dfa.accepting(states[i]) ? 1 : 0;

    // Leading zeros on the kept tracks let the counted tracks be longer.
    for (std::size_t it = 0; normalize; ++it) {
        auto next = times(r.lambda, r.mu[0]);
        if (next == r.lambda) break;
        if (it > 4 * d + 64)
            throw Error(Errc::CapExceeded, "path count is not stable under padding (unbounded count)");
        r.lambda = std::move(next);
    }
    return r;
}

LinRep add(const LinRep& a, const LinRep& b) {
    if (a.tracks != b.tracks) throw Error(Errc::TrackMismatch, "sum of representations over different tracks");
    LinRep r;
    r.tracks = a.tracks;
    const std::size_t da = a.dim(), db = b.dim();
    r.lambda = a.lambda;
    r.lambda.insert(r.lambda.end(), b.lambda.begin(), b.lambda.end());
    r.gamma = a.gamma;
    r.gamma.insert(r.gamma.end(), b.gamma.begin(), b.gamma.end());
    r.mu.resize(a.letters());
    for (std::size_t l = 0; l < a.letters(); ++l) {
        r.mu[l].rows = a.mu[l].rows;
        r.mu[l].rows.resize(da + db);
        for (std::size_t i = 0; i < db; ++i)
            for (const auto& [j, v] : b.mu[l].rows[i]) r.mu[l].rows[da + i].emplace_back(static_cast<std::uint32_t>(da + j), v);
    }
    return r;
}

LinRep scale(const LinRep& a, const Rational& c) {
    LinRep r = a;
    for (auto& g : r.gamma) g *= c;
    return r;
}

LinRep subtract(const LinRep& a, const LinRep& b) { return add(a, scale(b, -1)); }

LinRep permute_tracks(const LinRep& a, const std::vector<std::size_t>& perm) {
    if (perm.size() != a.tracks.size()) throw Error(Errc::ArityMismatch, "permutation size");
    LinRep r;
    for (auto p : perm) r.tracks.push_back(a.tracks.at(p));
    r.lambda = a.lambda;
    r.gamma = a.gamma;
    r.mu.resize(a.letters());
    Automaton helper(a.tracks), target(r.tracks);
    for (std::size_t l = 0; l < r.mu.size(); ++l) {
        auto digits = target.decode(l);
        std::vector<unsigned> src(a.tracks.size(), 0);
        for (std::size_t t = 0; t < perm.size(); ++t) src[perm[t]] = digits[t];
        r.mu[l] = a.mu[helper.encode(src)];
    }
    return r;
}

namespace {

// Incremental exact row echelon basis; rows are kept fully reduced on pivots.
struct RationalBasis {
    std::vector<std::vector<Rational>> rows; // echelon form, pivot entry 1
    std::vector<std::size_t> pivots;

    // Returns true and inserts when v is independent.
    bool insert(std::vector<Rational> v) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational c = v[pivots[i]];
            if (sgn(c) == 0) continue;
            for (std::size_t k = 0; k < v.size(); ++k)
                if (sgn(rows[i][k]) != 0) v[k] -= c * rows[i][k];
        }
        std::size_t p = 0;
        while (p < v.size() && sgn(v[p]) == 0) ++p;
        if (p == v.size()) return false;
        const Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (auto& row : rows) {
            const Rational c = row[p];
            if (sgn(c) == 0) continue;
            for (std::size_t k = 0; k < v.size(); ++k)
                if (sgn(v[k]) != 0) row[k] -= c * v[k];
        }
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    }
    // Coordinates of v in the echelon rows (v assumed in the span).
    std::vector<Rational> coords(const std::vector<Rational>& v) const {
        std::vector<Rational> c(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) c[i] = v[pivots[i]];
        return c;
    }
};

// Restricts to the span of the reachable rows λμ(w).
LinRep forward_reduce(const LinRep& a) {
    RationalBasis b;
    std::vector<std::vector<Rational>> queue;
    if (b.insert(a.lambda)) queue.push_back(a.lambda);
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (const auto& m : a.mu) {
            auto v = times(queue[h], m);
            if (b.insert(v)) queue.push_back(std::move(v));
        }
    LinRep r;
    r.tracks = a.tracks;
    const std::size_t n = b.rows.size();
    r.mu.resize(a.letters());
    if (n == 0) return r;
    r.lambda = b.coords(a.lambda);
    r.gamma.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.gamma[i] = dot(b.rows[i], a.gamma);
    for (std::size_t l = 0; l < a.letters(); ++l) {
        r.mu[l].rows.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto c = b.coords(times(b.rows[i], a.mu[l]));
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(c[j]) != 0) r.mu[l].rows[i].emplace_back(static_cast<std::uint32_t>(j), c[j]);
        }
    }
    return r;
}

LinRep transpose(const LinRep& a) {
    LinRep r;
    r.tracks = a.tracks;
    r.lambda = a.gamma;
    r.gamma = a.lambda;
    r.mu.resize(a.letters());
    for (std::size_t l = 0; l < a.letters(); ++l) {
        r.mu[l].rows.resize(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (const auto& [j, v] : a.mu[l].rows[i]) r.mu[l].rows[j].emplace_back(static_cast<std::uint32_t>(i), v);
    }
    return r;
}

} // namespace

LinRep reduce(const LinRep& a) {
    // Reversal of words is handled by transposing: the transposed representation
    // read on reversed words computes the same values.
    return transpose(forward_reduce(transpose(forward_reduce(a))));
}

// ---------------------------------------------------------------- semigroup trick

namespace {

constexpr std::uint64_t P1 = (std::uint64_t(1) << 61) - 1;
constexpr std::uint64_t P2 = 2305843009213693921ull; // largest prime below P1

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

std::uint64_t reduce_rational(const Rational& q, std::uint64_t p) {
    Integer num = q.get_num() % Integer(static_cast<unsigned long>(p));
    if (num < 0) num += static_cast<unsigned long>(p);
    Integer den = q.get_den() % Integer(static_cast<unsigned long>(p));
    if (den == 0) throw Error(Errc::CapExceeded, "denominator divisible by the working prime");
    return mulmod(num.get_ui(), inverse(den.get_ui(), p), p);
}

std::uint64_t to_mod(std::int64_t v, std::uint64_t p) {
    return v >= 0 ? static_cast<std::uint64_t>(v) % p : p - (static_cast<std::uint64_t>(-v) % p);
}
std::int64_t lift(std::uint64_t v, std::uint64_t p) {
    return v > p / 2 ? -static_cast<std::int64_t>(p - v) : static_cast<std::int64_t>(v);
}

// Sparse coefficient list of μ(a)·v_j in the suffix basis.
using Coeffs = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

struct SuffixBasis {
    std::vector<std::vector<Coeffs>> alpha; // [letter][j]
    std::vector<std::vector<std::uint64_t>> initial_cols; // λ·v_j per j (just one row)
    std::size_t size = 0;
};

// Builds the suffix basis v_j = μ(s_j)γ (s_0 = ε) modulo p and the
// coefficients of every μ(a)v_j in it.
SuffixBasis suffix_basis(const LinRep& a, std::uint64_t p, std::size_t cap, std::vector<std::uint64_t>& lambda_coords) {
    const std::size_t d = a.dim();
    const std::size_t L = a.letters();
    // Column-side products need μ(a)·v: precompute rows mod p.
    std::vector<std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>>> mu(L);
    for (std::size_t l = 0; l < L; ++l) {
        mu[l].resize(d);
        for (std::size_t i = 0; i < d; ++i)
            for (const auto& [j, v] : a.mu[l].rows[i]) mu[l][i].emplace_back(j, reduce_rational(v, p));
    }
    std::vector<std::uint64_t> lam(d);
    for (std::size_t i = 0; i < d; ++i) lam[i] = reduce_rational(a.lambda[i], p);

    std::vector<std::vector<std::uint64_t>> basis;   // v_j
    std::vector<std::vector<std::uint64_t>> ech;     // echelon rows, pivot 1
    std::vector<std::size_t> piv;
    std::vector<std::vector<std::uint64_t>> tr;      // ech_i = Σ tr_i[k] v_k

    // Reduces w; returns coefficients (dense over current basis) and residual.
    auto reduce_vec = [&](std::vector<std::uint64_t>& w, std::vector<std::uint64_t>& coef) {
        coef.assign(basis.size(), 0);
        for (std::size_t i = 0; i < ech.size(); ++i) {
            const std::uint64_t c = w[piv[i]];
            if (!c) continue;
            const auto& e = ech[i];
            const std::uint64_t nc = p - c;
            for (std::size_t k = piv[i]; k < d; ++k)
                if (e[k]) w[k] = (w[k] + mulmod(nc, e[k], p)) % p;
            const auto& t = tr[i];
            for (std::size_t k = 0; k < t.size(); ++k)
                if (t[k]) coef[k] = (coef[k] + mulmod(c, t[k], p)) % p;
        }
    };
    auto try_add = [&](std::vector<std::uint64_t> v) -> std::int64_t {
        std::vector<std::uint64_t> w = v, coef;
        reduce_vec(w, coef);
        std::size_t pv = 0;
        while (pv < d && !w[pv]) ++pv;
        if (pv == d) return -1;
        if (basis.size() >= cap) throw Error(Errc::CapExceeded, "suffix basis exceeds the dimension cap");
        const std::uint64_t inv = inverse(w[pv], p);
        for (auto& x : w) x = mulmod(x, inv, p);
        // ech_new = (v - Σ coef_k v_k) / pivot
        std::vector<std::uint64_t> t(basis.size() + 1, 0);
        for (std::size_t k = 0; k < coef.size(); ++k) t[k] = coef[k] ? mulmod(p - coef[k], inv, p) : 0;
        t[basis.size()] = inv;
        basis.push_back(std::move(v));
        ech.push_back(std::move(w));
        piv.push_back(pv);
        tr.push_back(std::move(t));
        return static_cast<std::int64_t>(basis.size() - 1);
    };

    SuffixBasis sb;
    std::vector<std::uint64_t> g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = reduce_rational(a.gamma[i], p);
    sb.alpha.assign(L, {});
    if (try_add(g) < 0) {
        lambda_coords.clear();
        return sb;
    }
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t l = 0; l < L; ++l) {
            std::vector<std::uint64_t> w(d, 0);
            const auto& vj = basis[j];
            for (std::size_t i = 0; i < d; ++i)
                for (const auto& [c, v] : mu[l][i])
                    if (vj[c]) w[i] = (w[i] + mulmod(v, vj[c], p)) % p;
            std::vector<std::uint64_t> copy = w, coef;
            reduce_vec(copy, coef);
            bool zero = true;
            for (auto x : copy)
                if (x) {
                    zero = false;
                    break;
                }
            Coeffs cs;
            if (zero) {
                for (std::size_t k = 0; k < coef.size(); ++k)
                    if (coef[k]) cs.emplace_back(static_cast<std::uint32_t>(k), coef[k]);
            } else {
                auto idx = try_add(std::move(w));
                cs.emplace_back(static_cast<std::uint32_t>(idx), 1);
            }
            sb.alpha[l].push_back(std::move(cs));
        }
    }
    sb.size = basis.size();
    lambda_coords.assign(sb.size, 0);
    for (std::size_t j = 0; j < sb.size; ++j) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < d; ++i)
            if (lam[i] && basis[j][i]) s = (s + mulmod(lam[i], basis[j][i], p)) % p;
        lambda_coords[j] = s;
    }
    return sb;
}

struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ static_cast<std::uint64_t>(x)) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};

} // namespace

Automaton semigroup_trick(const LinRep& a, const SemigroupOptions& opt) {
    Automaton out(a.tracks);
    std::vector<std::uint64_t> lam1, lam2;
    const std::size_t cap = 1'000'000;
    SuffixBasis b1 = suffix_basis(a, P1, cap, lam1);
    SuffixBasis b2 = suffix_basis(a, P2, cap, lam2);
    if (b1.size != b2.size) throw Error(Errc::CapExceeded, "suffix basis rank differs between primes");
    const std::size_t r = b1.size;
    const std::size_t L = a.letters();
    if (r == 0) {
        out.add_state(0);
        for (std::size_t l = 0; l < L; ++l) out.set_transition(0, l, 0);
        return out;
    }
    auto lift_checked = [&](std::uint64_t x1, std::uint64_t x2) {
        const auto v1 = lift(x1, P1), v2 = lift(x2, P2);
        if (v1 != v2 || v1 > opt.max_entry || v1 < -opt.max_entry)
            throw Error(Errc::CapExceeded, "representation is not bounded within the entry cap");
        return v1;
    };
    std::vector<std::int64_t> init(r);
    for (std::size_t j = 0; j < r; ++j) init[j] = lift_checked(lam1[j], lam2[j]);

    std::unordered_map<std::vector<std::int64_t>, std::uint32_t, VecHash> ids;
    std::vector<std::vector<std::int64_t>> states;
    auto get = [&](std::vector<std::int64_t>&& v) {
        auto it = ids.find(v);
        if (it != ids.end()) return it->second;
        if (states.size() >= opt.max_states)
            throw Error(Errc::CapExceeded, "semigroup exploration exceeds " + std::to_string(opt.max_states) + " states");
        auto id = out.add_state(v[0]);
        ids.emplace(v, id);
        states.push_back(std::move(v));
        return id;
    };
    out.set_initial(get(std::move(init)));
    std::vector<std::uint64_t> m1(r), m2(r);
    std::vector<std::int64_t> next(r);
    for (std::size_t h = 0; h < states.size(); ++h) {
        for (std::size_t i = 0; i < r; ++i) {
            m1[i] = to_mod(states[h][i], P1);
            m2[i] = to_mod(states[h][i], P2);
        }
        for (std::size_t l = 0; l < L; ++l) {
            for (std::size_t j = 0; j < r; ++j) {
                const auto& c1 = b1.alpha[l][j];
                const auto& c2 = b2.alpha[l][j];
                if (c1.size() == 1 && c1[0].second == 1 && c2.size() == 1 && c2[0].second == 1 && c1[0].first == c2[0].first) {
                    next[j] = states[h][c1[0].first];
                    continue;
                }
                unsigned __int128 s1 = 0, s2 = 0;
                for (const auto& [k, v] : c1) {
                    s1 += static_cast<unsigned __int128>(v) * m1[k];
                    if (s1 >> 125) s1 %= P1;
                }
                for (const auto& [k, v] : c2) {
                    s2 += static_cast<unsigned __int128>(v) * m2[k];
                    if (s2 >> 125) s2 %= P2;
                }
                next[j] = lift_checked(static_cast<std::uint64_t>(s1 % P1), static_cast<std::uint64_t>(s2 % P2));
            }
            const auto to = get(std::vector<std::int64_t>(next));
            out.set_transition(static_cast<std::uint32_t>(h), l, to);
        }
    }
    return minimize(out);
}

std::vector<Rational> first_values(const LinRep& a, const Numeration& n, std::size_t count) {
    if (a.tracks.size() != 1) throw Error(Errc::TrackMismatch, "first_values needs a single-track representation");
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(a.evaluate({n.rep(k)}));
    return out;
}

} // namespace kabel
