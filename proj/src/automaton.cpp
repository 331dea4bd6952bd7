#include "kabel/automaton.hpp"

#include "kabel/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>

namespace kabel {

std::size_t letter_count(const Tracks& tracks) {
    std::size_t n = 1;
    for (const auto& t : tracks) {
        if (t.radix == 0) throw Error(Errc::InvalidArgument, "track with empty digit alphabet");
        n *= t.radix;
        if (n > (std::size_t{1} << 24)) throw Error(Errc::CapExceeded, "too many tuple letters");
    }
    return n;
}

Automaton::Automaton(Tracks tracks) : tracks_(std::move(tracks)), letters_(letter_count(tracks_)) {}

std::uint32_t Automaton::add_state(std::int64_t output) {
    out_.push_back(output);
    delta_.resize(out_.size() * letters_, 0);
    return static_cast<std::uint32_t>(out_.size() - 1);
}

std::size_t Automaton::encode(const std::vector<unsigned>& digits) const {
    if (digits.size() != tracks_.size()) throw Error(Errc::TrackMismatch, "digit tuple has the wrong arity");
    std::size_t l = 0;
    for (std::size_t t = 0; t < tracks_.size(); ++t) {
        if (digits[t] >= tracks_[t].radix) throw Error(Errc::InvalidArgument, "digit out of range");
        l = l * tracks_[t].radix + digits[t];
    }
    return l;
}

std::vector<unsigned> Automaton::decode(std::size_t letter) const {
    std::vector<unsigned> d(tracks_.size());
    for (std::size_t t = tracks_.size(); t-- > 0;) {
        d[t] = static_cast<unsigned>(letter % tracks_[t].radix);
        letter /= tracks_[t].radix;
    }
    return d;
}

std::uint32_t Automaton::run(const std::vector<Digits>& words) const {
    if (words.size() != tracks_.size()) throw Error(Errc::TrackMismatch, "wrong number of input words");
    std::size_t len = 0;
    for (const auto& w : words) len = std::max(len, w.size());
    std::uint32_t q = initial_;
    std::vector<unsigned> digits(tracks_.size());
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t t = 0; t < words.size(); ++t) {
            const std::size_t pad = len - words[t].size();
            digits[t] = i < pad ? 0u : words[t][i - pad];
        }
        q = next(q, encode(digits));
    }
    return q;
}

std::int64_t Automaton::evaluate(const std::vector<Digits>& words) const { return out_[run(words)]; }

std::vector<std::int64_t> Automaton::output_range() const {
    std::vector<char> seen(size(), 0);
    std::vector<std::uint32_t> stack{initial_};
    seen[initial_] = 1;
    std::set<std::int64_t> vals;
    while (!stack.empty()) {
        auto q = stack.back();
        stack.pop_back();
        vals.insert(out_[q]);
        for (std::size_t l = 0; l < letters_; ++l) {
            auto t = next(q, l);
            if (!seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return {vals.begin(), vals.end()};
}

bool operator==(const Automaton& a, const Automaton& b) {
    return a.tracks_ == b.tracks_ && a.initial_ == b.initial_ && a.delta_ == b.delta_ && a.out_ == b.out_;
}

namespace {

// Refinable partition with marking, after Valmari and Lehtinen.
struct Partition {
    std::vector<std::uint32_t> elems, loc, blk, first, end, mid;
    std::vector<std::uint32_t> touched;

    explicit Partition(std::uint32_t n) : elems(n), loc(n), blk(n, 0) {}

    void mark(std::uint32_t e) {
        const std::uint32_t b = blk[e];
        const std::uint32_t i = loc[e];
        const std::uint32_t m = mid[b];
        if (i < m) return;
        const std::uint32_t other = elems[m];
        elems[m] = e;
        loc[e] = m;
        elems[i] = other;
        loc[other] = i;
        if (mid[b]++ == first[b]) touched.push_back(b);
    }

    // Splits b into marked and unmarked parts, keeping the larger part under
    // id b. Returns the new block id or -1.
    long split(std::uint32_t b) {
        if (mid[b] == end[b]) {
            mid[b] = first[b];
            return -1;
        }
        const std::uint32_t nb = static_cast<std::uint32_t>(first.size());
        const std::uint32_t marked = mid[b] - first[b];
        const std::uint32_t unmarked = end[b] - mid[b];
        if (marked <= unmarked) {
            first.push_back(first[b]);
            end.push_back(mid[b]);
            first[b] = mid[b];
        } else {
            first.push_back(mid[b]);
            end.push_back(end[b]);
            end[b] = mid[b];
        }
        mid.push_back(first.back());
        mid[b] = first[b];
        for (std::uint32_t i = first[nb]; i < end[nb]; ++i) blk[elems[i]] = nb;
        return nb;
    }
};

} // namespace

Automaton minimize(const Automaton& a) {
    const std::size_t L = a.letters();
    // Reachable states.
    std::vector<std::uint32_t> id(a.size(), UINT32_MAX), order;
    order.push_back(a.initial());
    id[a.initial()] = 0;
    for (std::size_t h = 0; h < order.size(); ++h) {
        const auto* r = a.row(order[h]);
        for (std::size_t l = 0; l < L; ++l)
            if (id[r[l]] == UINT32_MAX) {
                id[r[l]] = static_cast<std::uint32_t>(order.size());
                order.push_back(r[l]);
            }
    }
    const std::uint32_t n = static_cast<std::uint32_t>(order.size());
    std::vector<std::uint32_t> delta(static_cast<std::size_t>(n) * L);
    for (std::uint32_t q = 0; q < n; ++q) {
        const auto* r = a.row(order[q]);
        for (std::size_t l = 0; l < L; ++l) delta[q * L + l] = id[r[l]];
    }

    // Initial partition by output.
    Partition P(n);
    {
        std::vector<std::uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](auto x, auto y) { return a.output(order[x]) < a.output(order[y]); });
        for (std::uint32_t i = 0; i < n; ++i) {
            const auto e = idx[i];
            if (i == 0 || a.output(order[e]) != a.output(order[idx[i - 1]])) {
                P.first.push_back(i);
                P.end.push_back(i);
                P.mid.push_back(i);
            }
            const auto b = static_cast<std::uint32_t>(P.first.size() - 1);
            P.elems[i] = e;
            P.loc[e] = i;
            P.blk[e] = b;
            P.end[b] = i + 1;
        }
    }

    // Reverse transitions grouped by (letter, target).
    std::vector<std::uint32_t> off(static_cast<std::size_t>(n) * L + 1, 0), src(static_cast<std::size_t>(n) * L);
    for (std::uint32_t q = 0; q < n; ++q)
        for (std::size_t l = 0; l < L; ++l) ++off[l * n + delta[q * L + l] + 1];
    for (std::size_t i = 1; i < off.size(); ++i) off[i] += off[i - 1];
    {
        std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
        for (std::uint32_t q = 0; q < n; ++q)
            for (std::size_t l = 0; l < L; ++l) src[fill[l * n + delta[q * L + l]]++] = q;
    }

    std::vector<std::uint32_t> work;
    std::vector<char> inwork;
    for (std::uint32_t b = 0; b < P.first.size(); ++b) {
        work.push_back(b);
        inwork.push_back(1);
    }
    std::vector<std::uint32_t> splitter;
    while (!work.empty()) {
        const std::uint32_t B = work.back();
        work.pop_back();
        inwork[B] = 0;
        splitter.assign(P.elems.begin() + P.first[B], P.elems.begin() + P.end[B]);
        for (std::size_t l = 0; l < L; ++l) {
            for (auto q : splitter) {
                const std::size_t k = l * n + q;
                for (std::uint32_t i = off[k]; i < off[k + 1]; ++i) P.mark(src[i]);
            }
            for (auto b : P.touched) {
                long nb = P.split(b);
                if (nb < 0) continue;
                inwork.push_back(0);
                const auto nbu = static_cast<std::uint32_t>(nb);
                if (inwork[b]) {
                    work.push_back(nbu);
                    inwork[nbu] = 1;
                } else {
                    const auto smaller = (P.end[b] - P.first[b] <= P.end[nbu] - P.first[nbu]) ? b : nbu;
                    work.push_back(smaller);
                    inwork[smaller] = 1;
                }
            }
            P.touched.clear();
        }
    }

    // Quotient, renumbered breadth first from the initial block.
    const std::size_t nb = P.first.size();
    std::vector<std::uint32_t> bid(nb, UINT32_MAX), border;
    Automaton m(a.tracks());
    m.set_name(a.name());
    bid[P.blk[0]] = 0;
    border.push_back(P.blk[0]);
    for (std::size_t h = 0; h < border.size(); ++h) {
        const auto rep = P.elems[P.first[border[h]]];
        for (std::size_t l = 0; l < L; ++l) {
            const auto tb = P.blk[delta[rep * L + l]];
            if (bid[tb] == UINT32_MAX) {
                bid[tb] = static_cast<std::uint32_t>(border.size());
                border.push_back(tb);
            }
        }
    }
    for (auto b : border) m.add_state(a.output(order[P.elems[P.first[b]]]));
    for (std::uint32_t s = 0; s < border.size(); ++s) {
        const auto rep = P.elems[P.first[border[s]]];
        for (std::size_t l = 0; l < L; ++l) m.set_transition(s, l, bid[P.blk[delta[rep * L + l]]]);
    }
    m.set_initial(0);
    return m;
}

Automaton product(const Automaton& a, const Automaton& b,
                  const std::function<std::int64_t(std::int64_t, std::int64_t)>& f) {
    if (a.tracks() != b.tracks()) throw Error(Errc::TrackMismatch, "product of automata over different tracks");
    const std::size_t L = a.letters();
    Automaton m(a.tracks());
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    std::vector<std::uint64_t> pairs;
    auto key = [](std::uint32_t x, std::uint32_t y) { return (static_cast<std::uint64_t>(x) << 32) | y; };
    auto get = [&](std::uint32_t x, std::uint32_t y) {
        auto k = key(x, y);
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        auto s = m.add_state(f(a.output(x), b.output(y)));
        ids.emplace(k, s);
        pairs.push_back(k);
        return s;
    };
    get(a.initial(), b.initial());
    for (std::size_t h = 0; h < pairs.size(); ++h) {
        const auto x = static_cast<std::uint32_t>(pairs[h] >> 32);
        const auto y = static_cast<std::uint32_t>(pairs[h] & 0xffffffffu);
        const auto* ra = a.row(x);
        const auto* rb = b.row(y);
        for (std::size_t l = 0; l < L; ++l) {
            const auto t = get(ra[l], rb[l]);
            m.set_transition(static_cast<std::uint32_t>(h), l, t);
        }
    }
    m.set_initial(0);
    return m;
}

Automaton intersect(const Automaton& a, const Automaton& b) {
    return minimize(product(a, b, [](auto x, auto y) -> std::int64_t { return x != 0 && y != 0; }));
}

Automaton unite(const Automaton& a, const Automaton& b) {
    return minimize(product(a, b, [](auto x, auto y) -> std::int64_t { return x != 0 || y != 0; }));
}

Automaton complement(const Automaton& a) {
    return map_outputs(a, [](std::int64_t v) -> std::int64_t { return v == 0; });
}

Automaton map_outputs(const Automaton& a, const std::function<std::int64_t(std::int64_t)>& f) {
    Automaton m = a;
    for (std::uint32_t q = 0; q < m.size(); ++q) m.set_output(q, f(a.output(q)));
    return m;
}

Automaton lift(const Automaton& a, const Tracks& target, const std::vector<std::size_t>& positions) {
    if (positions.size() != a.track_count()) throw Error(Errc::ArityMismatch, "lift needs one position per track");
    for (std::size_t t = 0; t < positions.size(); ++t) {
        if (positions[t] >= target.size()) throw Error(Errc::TrackMismatch, "lift position out of range");
        if (target[positions[t]].radix != a.tracks()[t].radix)
            throw Error(Errc::TrackMismatch, "lift joins tracks with different digit alphabets");
    }
    const std::size_t L = letter_count(target);
    std::vector<std::size_t> stride(target.size(), 1);
    for (std::size_t t = target.size(); t-- > 1;) stride[t - 1] = stride[t] * target[t].radix;
    std::vector<std::uint32_t> map(L);
    for (std::size_t T = 0; T < L; ++T) {
        std::size_t s = 0;
        for (std::size_t t = 0; t < positions.size(); ++t) {
            const auto p = positions[t];
            s = s * a.tracks()[t].radix + (T / stride[p]) % target[p].radix;
        }
        map[T] = static_cast<std::uint32_t>(s);
    }
    Automaton m(target);
    m.set_name(a.name());
    for (std::uint32_t q = 0; q < a.size(); ++q) m.add_state(a.output(q));
    for (std::uint32_t q = 0; q < a.size(); ++q) {
        const auto* r = a.row(q);
        for (std::size_t T = 0; T < L; ++T) m.set_transition(q, T, r[map[T]]);
    }
    m.set_initial(a.initial());
    return m;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

Automaton project(const Automaton& a0, std::size_t track, std::size_t max_states) {
    if (track >= a0.track_count()) throw Error(Errc::TrackMismatch, "projected track out of range");
    const Automaton a = minimize(a0);
    const std::size_t L = a.letters();
    Tracks small = a.tracks();
    const unsigned r = small[track].radix;
    small.erase(small.begin() + static_cast<std::ptrdiff_t>(track));
    const std::size_t SL = letter_count(small);

    std::size_t below = 1;
    for (std::size_t t = track + 1; t < a.track_count(); ++t) below *= a.tracks()[t].radix;
    // Big letters extending each small letter.
    std::vector<std::uint32_t> ext(SL * r);
    for (std::size_t s = 0; s < SL; ++s) {
        const std::size_t hi = s / below, lo = s % below;
        for (unsigned d = 0; d < r; ++d) ext[s * r + d] = static_cast<std::uint32_t>((hi * r + d) * below + lo);
    }

    // Co-accessible states; the others never help a subset accept.
    const std::uint32_t n = a.size();
    std::vector<char> live(n, 0);
    {
        std::vector<std::vector<std::uint32_t>> rev(n);
        for (std::uint32_t q = 0; q < n; ++q)
            for (std::size_t l = 0; l < L; ++l) rev[a.next(q, l)].push_back(q);
        std::vector<std::uint32_t> st;
        for (std::uint32_t q = 0; q < n; ++q)
            if (a.accepting(q)) {
                live[q] = 1;
                st.push_back(q);
            }
        while (!st.empty()) {
            auto q = st.back();
            st.pop_back();
            for (auto p : rev[q])
                if (!live[p]) {
                    live[p] = 1;
                    st.push_back(p);
                }
        }
    }

    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t epoch = 0;
    std::vector<std::uint32_t> init;
    {
        // Leading-zero closure: everything reachable from the initial state by
        // letters that are zero on every remaining track.
        std::vector<std::uint32_t> st{a.initial()};
        std::vector<char> seen(n, 0);
        seen[a.initial()] = 1;
        while (!st.empty()) {
            auto q = st.back();
            st.pop_back();
            if (live[q]) init.push_back(q);
            for (unsigned d = 0; d < r; ++d) {
                auto t = a.next(q, ext[d]);
                if (!seen[t]) {
                    seen[t] = 1;
                    st.push_back(t);
                }
            }
        }
        std::sort(init.begin(), init.end());
    }

    Automaton m(small);
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> ids;
    std::vector<std::vector<std::uint32_t>> subsets;
    auto get = [&](const std::vector<std::uint32_t>& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        bool acc = false;
        for (auto q : s) acc |= a.accepting(q);
        auto id = m.add_state(acc ? 1 : 0);
        if (m.size() > max_states) throw Error(Errc::StateBudgetExceeded, "projection exceeded the subset budget");
        ids.emplace(s, id);
        subsets.push_back(s);
        return id;
    };
    get(init);
    std::vector<std::uint32_t> buf;
    for (std::size_t h = 0; h < subsets.size(); ++h) {
        for (std::size_t s = 0; s < SL; ++s) {
            ++epoch;
            buf.clear();
            for (auto q : subsets[h]) {
                const auto* row = a.row(q);
                for (unsigned d = 0; d < r; ++d) {
                    auto t = row[ext[s * r + d]];
                    if (live[t] && stamp[t] != epoch) {
                        stamp[t] = epoch;
                        buf.push_back(t);
                    }
                }
            }
            std::sort(buf.begin(), buf.end());
            auto to = get(buf);
            m.set_transition(static_cast<std::uint32_t>(h), s, to);
        }
    }
    m.set_initial(0);
    return minimize(m);
}

bool is_empty(const Automaton& a) {
    std::vector<std::vector<unsigned>> w;
    return !shortest_accepted(a, w);
}

bool shortest_accepted(const Automaton& a, std::vector<std::vector<unsigned>>& witness) {
    std::vector<std::uint32_t> parent(a.size(), UINT32_MAX), via(a.size(), 0);
    std::deque<std::uint32_t> q{a.initial()};
    parent[a.initial()] = a.initial();
    while (!q.empty()) {
        auto s = q.front();
        q.pop_front();
        if (a.accepting(s)) {
            witness.clear();
            for (auto c = s; c != a.initial(); c = parent[c]) witness.push_back(a.decode(via[c]));
            std::reverse(witness.begin(), witness.end());
            return true;
        }
        for (std::size_t l = 0; l < a.letters(); ++l) {
            auto t = a.next(s, l);
            if (parent[t] == UINT32_MAX) {
                parent[t] = s;
                via[t] = static_cast<std::uint32_t>(l);
                q.push_back(t);
            }
        }
    }
    return false;
}

} // namespace kabel
