#include "kabel/automaton.hpp"
#include "kabel/numeration.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace kabel;

namespace {

Automaton random_dfa(std::mt19937& rng, std::uint32_t n, unsigned radix) {
    Automaton a({{"b", radix}});
    for (std::uint32_t i = 0; i < n; ++i) a.add_state(rng() % 2);
    for (std::uint32_t i = 0; i < n; ++i)
        for (unsigned l = 0; l < radix; ++l) a.set_transition(i, l, rng() % n);
    return a;
}

std::vector<Digits> all_words(unsigned radix, std::size_t maxlen) {
    std::vector<Digits> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].size() < maxlen)
            for (unsigned d = 0; d < radix; ++d) {
                auto w = out[i];
                w.push_back(static_cast<std::uint16_t>(d));
                out.push_back(w);
            }
    return out;
}

} // namespace

TEST_CASE("minimize preserves behaviour and is idempotent") {
    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        auto a = random_dfa(rng, 1 + rng() % 12, 2);
        auto m = minimize(a);
        CHECK(minimize(m) == m);
        CHECK(m.size() <= a.size());
        for (const auto& w : all_words(2, 8)) REQUIRE(a.evaluate({w}) == m.evaluate({w}));
    }
}

TEST_CASE("boolean algebra") {
    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
        auto a = random_dfa(rng, 6, 3), b = random_dfa(rng, 5, 3);
        CHECK(is_empty(intersect(a, complement(a))));
        auto u = unite(a, b), i = intersect(a, b);
        for (const auto& w : all_words(3, 5)) {
            const bool x = a.evaluate({w}), y = b.evaluate({w});
            REQUIRE(u.evaluate({w}) == (x || y));
            REQUIRE(i.evaluate({w}) == (x && y));
        }
    }
}

TEST_CASE("projection handles padding") {
    // Pairs (x, y) with y = x + 1 in base 2, projected on x: every x.
    // Accept (x, 2x): each y digit is the next x digit, the last y digit is 0.
    // State s_e expects the current x digit to be e.
    Automaton succ({{"b2", 2}, {"b2", 2}});
    const auto s0 = succ.add_state(1), s1 = succ.add_state(0), dead = succ.add_state(0);
    for (unsigned e = 0; e < 2; ++e)
        for (unsigned x = 0; x < 2; ++x)
            for (unsigned y = 0; y < 2; ++y)
                succ.set_transition(e ? s1 : s0, succ.encode({x, y}), x != e ? dead : (y ? s1 : s0));
    for (unsigned l = 0; l < 4; ++l) succ.set_transition(dead, l, dead);
    succ.set_initial(s0);
    for (unsigned x = 0; x < 64; ++x) {
        auto b = Numeration::integer_base(2, "b2");
        CHECK(succ.evaluate({b.rep(x), b.rep(2 * x)}) == 1);
    }
    auto px = project(succ, 1);
    CHECK(px.track_count() == 1);
    // x with a leading 1 needs y one digit longer: only reachable via padding.
    for (const auto& w : all_words(2, 7)) REQUIRE(px.evaluate({w}) == 1);
}

TEST_CASE("lift reorders tracks") {
    std::mt19937 rng(3);
    auto a = random_dfa(rng, 5, 2);
    auto l = lift(a, {{"b", 2}, {"b", 2}}, {1});
    for (const auto& u : all_words(2, 4))
        for (const auto& v : all_words(2, 4)) {
            if (u.size() != v.size()) continue;
            REQUIRE(l.evaluate({u, v}) == a.evaluate({v}));
        }
}
