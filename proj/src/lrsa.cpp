#include "kabel/lrsa.hpp"

#include "kabel/error.hpp"

#include <cmath>
#include <complex>
#include <unordered_map>

namespace kabel {

Integer LinRecSeq::term(std::size_t n) const { return terms(n + 1)[n]; }

std::vector<Integer> LinRecSeq::terms(std::size_t count) const {
    const std::size_t d = static_cast<std::size_t>(poly.degree());
    std::vector<Integer> t(initial.begin(), initial.end());
    t.resize(std::max(count, d));
    for (std::size_t n = d; n < count; ++n) {
        Integer s = 0;
        for (std::size_t i = 0; i < d; ++i) s -= poly[static_cast<int>(i)] * t[n - d + i];
        t[n] = s;
    }
    t.resize(count);
    return t;
}

LinRecSeq Lrsa::edge_sequence(std::uint32_t q, std::size_t letter) const {
    LinRecSeq s;
    s.poly = poly;
    for (auto v : edge[q * letters + letter]) s.initial.emplace_back(static_cast<long>(v));
    return s;
}

namespace {

// First `count` terms of a sequence satisfying the recurrence of `p`, given
// its first deg(p) terms; overflow is reported.
std::vector<std::int64_t> extend(const IntPoly& p, const std::vector<std::int64_t>& init, std::size_t count) {
    const std::size_t d = static_cast<std::size_t>(p.degree());
    std::vector<std::int64_t> coef(d);
    for (std::size_t i = 0; i < d; ++i) coef[i] = p[static_cast<int>(i)].get_si();
    std::vector<std::int64_t> t(init);
    t.resize(std::max(count, d));
    for (std::size_t n = d; n < count; ++n) {
        __int128 s = 0;
        for (std::size_t i = 0; i < d; ++i) s -= static_cast<__int128>(coef[i]) * t[n - d + i];
        if (s > INT64_MAX / 4 || s < -INT64_MAX / 4) throw Error(Errc::CapExceeded, "edge sequence overflow");
        t[n] = static_cast<std::int64_t>(s);
    }
    t.resize(count);
    return t;
}

Lrsa from_numeration(const Numeration& num, int count_letter) {
    const Substitution& s = num.substitution();
    const std::size_t k = s.size();
    auto inc = incidence(s);
    Lrsa a;
    a.tracks = {{num.name(), num.radix()}};
    a.poly = inc.char_poly;
    a.states = static_cast<std::uint32_t>(k);
    a.letters = num.radix();
    a.initial = num.seed();
    a.delta.assign(k * a.letters, -1);
    a.edge.assign(k * a.letters, {});
    const std::size_t d = a.dim();
    std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = inc.matrix[i][j].get_si();
    for (std::size_t q = 0; q < k; ++q) {
        const Word& img = s.image(static_cast<Letter>(q));
        for (std::size_t i = 0; i < img.size(); ++i) {
            a.delta[q * a.letters + i] = img[i];
            // Parikh vector of the prefix, then iterate v ← v·M.
            std::vector<std::int64_t> v(k, 0);
            for (std::size_t t = 0; t < i; ++t) ++v[img[t]];
            std::vector<std::int64_t> terms;
            for (std::size_t n = 0; n < d; ++n) {
                std::int64_t val = 0;
                for (std::size_t j = 0; j < k; ++j)
                    if (count_letter < 0 || static_cast<int>(j) == count_letter) val += v[j];
                terms.push_back(val);
                std::vector<std::int64_t> w(k, 0);
                for (std::size_t x = 0; x < k; ++x)
                    if (v[x])
                        for (std::size_t y = 0; y < k; ++y) w[y] += v[x] * m[x][y];
                v = std::move(w);
            }
            a.edge[q * a.letters + i] = std::move(terms);
        }
    }
    return a;
}

} // namespace

Integer Lrsa::series(const std::vector<Digits>& words) const {
    if (words.size() != tracks.size()) throw Error(Errc::TrackMismatch, "wrong number of input words");
    std::size_t len = 0;
    for (const auto& w : words) len = std::max(len, w.size());
    const std::size_t d = dim();
    std::vector<Integer> r(d, Integer(0));
    std::uint32_t q = initial;
    for (std::size_t i = 0; i < len; ++i) {
        std::size_t letter = 0;
        for (std::size_t t = 0; t < words.size(); ++t) {
            const std::size_t pad = len - words[t].size();
            letter = letter * tracks[t].radix + (i < pad ? 0u : words[t][i - pad]);
        }
        const auto to = delta[q * letters + letter];
        if (to < 0) return 0;
        Integer next = 0;
        for (std::size_t j = 0; j < d; ++j) next -= poly[static_cast<int>(j)] * r[j];
        for (std::size_t j = 0; j + 1 < d; ++j) r[j] = r[j + 1];
        if (d) r[d - 1] = next;
        const auto& e = edge[q * letters + letter];
        for (std::size_t j = 0; j < d; ++j) r[j] += static_cast<long>(e[j]);
        q = static_cast<std::uint32_t>(to);
    }
    return d ? r[0] : Integer(0);
}

Lrsa addressing_lrsa(const Numeration& n) { return from_numeration(n, -1); }

Lrsa parikh_lrsa(const Numeration& n, Letter b) {
    if (b >= n.substitution().size()) throw Error(Errc::InvalidArgument, "letter outside the alphabet");
    return from_numeration(n, b);
}

Lrsa combine(const std::vector<SignedLrsa>& ops, bool synchronized) {
    if (ops.empty()) throw Error(Errc::InvalidArgument, "empty combination");
    Lrsa r;
    r.poly = ops[0].lrsa->poly;
    for (std::size_t i = 1; i < ops.size(); ++i) r.poly = lcm(r.poly, ops[i].lrsa->poly);
    const std::size_t D = r.dim();
    if (synchronized) {
        for (const auto& o : ops) r.tracks.insert(r.tracks.end(), o.lrsa->tracks.begin(), o.lrsa->tracks.end());
    } else {
        r.tracks = ops[0].lrsa->tracks;
        for (const auto& o : ops)
            if (o.lrsa->tracks != r.tracks) throw Error(Errc::TrackMismatch, "unsynchronized sum needs equal tracks");
    }
    r.letters = letter_count(r.tracks);

    // Extended edge sequences of each operand in the common space.
    std::vector<std::vector<std::vector<std::int64_t>>> ext(ops.size());
    for (std::size_t c = 0; c < ops.size(); ++c) {
        const Lrsa& a = *ops[c].lrsa;
        ext[c].resize(a.edge.size());
        for (std::size_t t = 0; t < a.edge.size(); ++t)
            if (!a.edge[t].empty()) ext[c][t] = extend(a.poly, a.edge[t], D);
    }

    // Component letter for each combined letter.
    std::vector<std::vector<std::size_t>> comp(r.letters, std::vector<std::size_t>(ops.size()));
    for (std::size_t L = 0; L < r.letters; ++L) {
        if (!synchronized) {
            for (std::size_t c = 0; c < ops.size(); ++c) comp[L][c] = L;
            continue;
        }
        std::size_t rest = L;
        for (std::size_t c = ops.size(); c-- > 0;) {
            comp[L][c] = rest % ops[c].lrsa->letters;
            rest /= ops[c].lrsa->letters;
        }
    }

    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::vector<std::uint32_t>> tuples;
    auto key_of = [](const std::vector<std::uint32_t>& v) {
        return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(std::uint32_t));
    };
    auto get = [&](std::vector<std::uint32_t> v) {
        auto k = key_of(v);
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        auto id = static_cast<std::uint32_t>(tuples.size());
        ids.emplace(std::move(k), id);
        tuples.push_back(std::move(v));
        r.delta.resize(tuples.size() * r.letters, -1);
        r.edge.resize(tuples.size() * r.letters);
        return id;
    };
    std::vector<std::uint32_t> init;
    for (const auto& o : ops) init.push_back(o.lrsa->initial);
    get(init);
    for (std::size_t h = 0; h < tuples.size(); ++h) {
        for (std::size_t L = 0; L < r.letters; ++L) {
            std::vector<std::uint32_t> to(ops.size());
            std::vector<std::int64_t> e(D, 0);
            bool ok = true;
            for (std::size_t c = 0; c < ops.size() && ok; ++c) {
                const Lrsa& a = *ops[c].lrsa;
                const std::size_t t = tuples[h][c] * a.letters + comp[L][c];
                if (a.delta[t] < 0) {
                    ok = false;
                    break;
                }
                to[c] = static_cast<std::uint32_t>(a.delta[t]);
                for (std::size_t j = 0; j < D; ++j) e[j] += ops[c].coefficient * ext[c][t][j];
            }
            if (!ok) continue;
            const auto id = get(std::move(to));
            r.delta[h * r.letters + L] = static_cast<std::int32_t>(id);
            r.edge[h * r.letters + L] = std::move(e);
        }
    }
    r.states = static_cast<std::uint32_t>(tuples.size());
    r.initial = 0;
    return r;
}

namespace {

using cld = std::complex<long double>;

// Solves V c = b for a small complex system by Gaussian elimination.
std::vector<cld> solve(std::vector<std::vector<cld>> V, std::vector<cld> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(V[r][c]) > std::abs(V[piv][c])) piv = r;
        std::swap(V[c], V[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            cld f = V[r][c] / V[c][c];
            for (std::size_t k = c; k < n; ++k) V[r][k] -= f * V[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t c = 0; c < n; ++c) b[c] /= V[c][c];
    return b;
}

struct Bound {
    long double theta;
    std::vector<long double> w; // P(X)/(X-θ) coefficients
    long double dp;             // P'(θ)
    long double limit;          // prune when |c(R)| exceeds this
};

Bound pruning_bound(const Lrsa& a, const SpectralClass& sc, double safety) {
    const std::size_t D = a.dim();
    const int m = sc.shift;
    const auto roots = isolate_roots(sc.pisot_min_poly);
    const std::size_t q = roots.size();
    std::size_t dom = 0;
    for (std::size_t i = 0; i < q; ++i)
        if (std::abs(roots[i].center) > std::abs(roots[dom].center)) dom = i;
    Bound b;
    b.theta = sc.theta;

    // Vandermonde on terms m..m+q-1.
    std::vector<std::vector<cld>> V(q, std::vector<cld>(q));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) V[i][j] = std::pow(roots[j].center, static_cast<long double>(m + i));

    long double ce = 0;
    std::vector<long double> gmax(static_cast<std::size_t>(m), 0), cmax(q, 0);
    for (std::uint32_t s = 0; s < a.states; ++s)
        for (std::size_t L = 0; L < a.letters; ++L) {
            const auto& e0 = a.edge[s * a.letters + L];
            if (e0.empty()) continue;
            auto e = extend(a.poly, e0, static_cast<std::size_t>(m) + q);
            std::vector<cld> rhs(q);
            for (std::size_t i = 0; i < q; ++i) rhs[i] = static_cast<long double>(e[static_cast<std::size_t>(m) + i]);
            auto c = solve(V, rhs);
            ce = std::max(ce, std::abs(c[dom]));
            for (std::size_t i = 0; i < q; ++i) cmax[i] = std::max(cmax[i], std::abs(c[i]));
            for (int j = 0; j < m; ++j) {
                long double g = static_cast<long double>(e[static_cast<std::size_t>(j)]) -
                                (c[dom] * std::pow(roots[dom].center, static_cast<long double>(j))).real();
                gmax[static_cast<std::size_t>(j)] = std::max(gmax[static_cast<std::size_t>(j)], std::fabs(g));
            }
        }
    long double K = 0;
    for (auto g : gmax) K += g;
    for (std::size_t i = 0; i < q; ++i) {
        if (i == dom) continue;
        const long double rho = std::abs(roots[i].center);
        K += cmax[i] * std::pow(rho, static_cast<long double>(m)) / (1 - rho);
    }
    b.limit = static_cast<long double>(safety) * (K + ce / (b.theta - 1)) + 1;

    // Synthetic division of P by (X - θ).
    b.w.assign(D, 0);
    if (D) {
        b.w[D - 1] = 1;
        for (std::size_t j = D - 1; j > 0; --j) b.w[j - 1] = a.poly[static_cast<int>(j)].get_d() + b.theta * b.w[j];
    }
    b.dp = a.poly.derivative().eval(b.theta);
    return b;
}

struct VecKeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

Automaton zero_set_dfa(const Lrsa& a, const SupportOptions& opt) {
    const auto sc = classify_spectrum(a.poly);
    if (!sc.ultimately_pisot())
        throw Error(Errc::NotUltimatelyPisot, "recurrence polynomial " + a.poly.to_string() + " is not ultimately Pisot");
    const Bound bound = pruning_bound(a, sc, opt.safety);
    const std::size_t D = a.dim();
    std::vector<std::int64_t> p(D);
    for (std::size_t i = 0; i < D; ++i) p[i] = a.poly[static_cast<int>(i)].get_si();

    Automaton out(a.tracks);
    const std::uint32_t dead = out.add_state(0);
    std::unordered_map<std::vector<std::int64_t>, std::uint32_t, VecKeyHash> ids;
    std::vector<std::vector<std::int64_t>> keys;
    auto get = [&](std::vector<std::int64_t>&& k) {
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        const bool acc = k[1 + 0] == 0 || D == 0;
        auto id = out.add_state(acc ? 1 : 0);
        if (out.size() > opt.max_states)
            throw Error(Errc::StateBudgetExceeded, "support exploration exceeded " + std::to_string(opt.max_states) + " states");
        ids.emplace(k, id);
        keys.push_back(std::move(k));
        return id;
    };
    for (std::size_t L = 0; L < a.letters; ++L) out.set_transition(dead, L, dead);
    {
        std::vector<std::int64_t> k(1 + D, 0);
        k[0] = a.initial;
        out.set_initial(get(std::move(k)));
    }
    const __int128 cap = static_cast<__int128>(1) << 60;
    std::vector<std::int64_t> next(1 + D);
    for (std::size_t h = 0; h < keys.size(); ++h) {
        const std::uint32_t sid = static_cast<std::uint32_t>(h + 1);
        const auto q = static_cast<std::uint32_t>(keys[h][0]);
        // shift(R): drop the first term and append the recurrence term.
        __int128 rec = 0;
        for (std::size_t j = 0; j < D; ++j) rec -= static_cast<__int128>(p[j]) * keys[h][1 + j];
        for (std::size_t L = 0; L < a.letters; ++L) {
            const auto to = a.delta[q * a.letters + L];
            if (to < 0) {
                out.set_transition(sid, L, dead);
                continue;
            }
            const auto& e = a.edge[q * a.letters + L];
            next[0] = to;
            long double c = 0, mag = 0;
            for (std::size_t j = 0; j < D; ++j) {
                __int128 v = (j + 1 < D ? static_cast<__int128>(keys[h][2 + j]) : rec) + e[j];
                if (v > cap || v < -cap) throw Error(Errc::StateBudgetExceeded, "remainder exceeded the norm cap");
                next[1 + j] = static_cast<std::int64_t>(v);
                c += bound.w[j] * static_cast<long double>(next[1 + j]);
                mag += std::fabs(bound.w[j] * static_cast<long double>(next[1 + j]));
            }
            c /= bound.dp;
            const long double err = 1e-12L * mag / bound.dp;
            if (std::fabs(c) - err > bound.limit) {
                out.set_transition(sid, L, dead);
                continue;
            }
            out.set_transition(sid, L, get(std::vector<std::int64_t>(next)));
        }
    }
    return minimize(out);
}

Automaton support_dfa(const Lrsa& a, const SupportOptions& opt) {
    Automaton z = zero_set_dfa(a, opt);
    // Domain of the series: all transitions defined.
    Automaton dom(a.tracks);
    for (std::uint32_t q = 0; q < a.states; ++q) dom.add_state(1);
    const auto dead = dom.add_state(0);
    for (std::uint32_t q = 0; q < a.states; ++q)
        for (std::size_t L = 0; L < a.letters; ++L) {
            auto t = a.delta[q * a.letters + L];
            dom.set_transition(q, L, t < 0 ? dead : static_cast<std::uint32_t>(t));
        }
    for (std::size_t L = 0; L < a.letters; ++L) dom.set_transition(dead, L, dead);
    dom.set_initial(a.initial);
    return minimize(product(dom, z, [](auto x, auto y) -> std::int64_t { return x != 0 && y == 0; }));
}

Automaton adder(const Numeration& n) {
    const Lrsa s = addressing_lrsa(n);
    Automaton a = zero_set_dfa(combine({{1, &s}, {1, &s}, {-1, &s}}));
    a.set_name("add_" + n.name());
    return a;
}

Automaton converter(const Numeration& n1, const Numeration& n2) {
    const Lrsa s1 = addressing_lrsa(n1), s2 = addressing_lrsa(n2);
    const auto c1 = classify_spectrum(s1.poly), c2 = classify_spectrum(s2.poly);
    if (!c1.ultimately_pisot() || !c2.ultimately_pisot())
        throw Error(Errc::NotUltimatelyPisot, "converter needs ultimately Pisot systems");
    if (!(c1.pisot_min_poly == c2.pisot_min_poly))
        throw Error(Errc::RootMismatch, "Pisot polynomials differ: " + c1.pisot_min_poly.to_string() + " vs " +
                                            c2.pisot_min_poly.to_string());
    Automaton a = zero_set_dfa(combine({{1, &s1}, {-1, &s2}}));
    a.set_name("conv_" + n1.name() + "_" + n2.name());
    return a;
}

Automaton parikh_sync(const Numeration& n, Letter b) {
    const Lrsa pb = parikh_lrsa(n, b), s = addressing_lrsa(n);
    Automaton a = zero_set_dfa(combine({{1, &pb}, {-1, &s}}));
    a.set_name(n.name() + "p" + std::to_string(b));
    return a;
}

} // namespace kabel
