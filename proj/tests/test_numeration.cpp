#include "kabel/automaton.hpp"
#include "kabel/error.hpp"
#include "kabel/numeration.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kabel;

namespace {

Numeration fib() { return Numeration::dumont_thomas(Substitution::parse("01/0"), 0, "fib"); }
Numeration trib() { return Numeration::dumont_thomas(Substitution::parse("01/02/0"), 0, "trib"); }
Numeration nara() { return Numeration::dumont_thomas(Substitution::parse("01/2/0"), 0, "nara"); }

// Independent Zeckendorf representation: greedy over 1,2,3,5,8,...
Digits zeckendorf(std::uint64_t n) {
    std::vector<std::uint64_t> f{1, 2};
    while (f.back() <= n) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
    Digits d;
    bool started = false;
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] <= n) {
            n -= f[i];
            d.push_back(1);
            started = true;
        } else if (started) {
            d.push_back(0);
        }
    }
    return d;
}

} // namespace

TEST_CASE("Fibonacci representations match Zeckendorf") {
    auto n = fib();
    CHECK(n.rep(0).empty());
    CHECK(n.rep(1) == Digits{1});
    CHECK(n.rep(2) == Digits{1, 0});
    CHECK(n.rep(4) == Digits{1, 0, 1});
    CHECK(n.val(Digits{0, 0, 1, 0, 1}) == 4);
    for (std::uint64_t k = 0; k < 3000; ++k) CHECK(n.rep(k) == zeckendorf(k));
}

TEST_CASE("Tribonacci representations enumerate the no-111 language") {
    auto n = trib();
    std::vector<Digits> lang;
    for (std::size_t len = 0; len <= 12; ++len)
        for (unsigned m = 0; m < (1u << len); ++m) {
            if (len && !(m >> (len - 1))) continue;
            Digits d;
            for (std::size_t b = len; b-- > 0;) d.push_back((m >> b) & 1);
            bool ok = true;
            for (std::size_t i = 0; i + 2 < d.size(); ++i) ok &= !(d[i] && d[i + 1] && d[i + 2]);
            if (ok) lang.push_back(d);
        }
    CHECK(n.rep(7) == Digits{1, 0, 0, 0});
    for (std::size_t k = 0; k < lang.size(); ++k) REQUIRE(n.rep(k) == lang[k]);
}

TEST_CASE("val inverts rep and representations are radix ordered") {
    for (auto n : {fib(), trib(), nara(), Numeration::integer_base(3, "b3")}) {
        Digits prev;
        for (std::uint64_t k = 0; k <= 10000; ++k) {
            auto r = n.rep(k);
            REQUIRE(n.valid(r));
            REQUIRE(n.val(r) == k);
            if (k) {
                bool less = prev.size() < r.size() || (prev.size() == r.size() && prev < r);
                REQUIRE(less);
            }
            prev = r;
        }
    }
}

TEST_CASE("invalid words are rejected") {
    auto n = fib();
    CHECK_FALSE(n.valid(Digits{1, 1}));
    CHECK_THROWS_AS(n.val(Digits{1, 1}), Error);
    CHECK(n.valid(Digits{0, 0, 1}));
    CHECK(n.padded_rep(4, 6) == Digits{0, 0, 0, 1, 0, 1});
}

TEST_CASE("word DFAO reads the fixed point") {
    for (auto n : {fib(), trib(), nara()}) {
        auto dfao = n.word_dfao();
        auto x = fixed_point_prefix(n.substitution(), 0, 2000);
        for (std::uint64_t k = 0; k < 2000; ++k) REQUIRE(dfao.evaluate({n.rep(k)}) == x[k]);
        CHECK(dfao.evaluate({Digits{1, 1, 1}}) == (n.valid(Digits{1, 1, 1}) ? dfao.evaluate({Digits{1, 1, 1}}) : -1));
    }
}

TEST_CASE("validity DFA accepts exactly the padded representations") {
    auto n = nara();
    auto v = n.validity_dfa();
    // Every word of length 8 over {0,1}: accepted iff valid.
    for (unsigned m = 0; m < 256; ++m) {
        Digits d;
        for (int b = 7; b >= 0; --b) d.push_back((m >> b) & 1);
        CHECK(v.accepting(v.run({d})) == n.valid(d));
    }
}

TEST_CASE("integer base") {
    auto b = Numeration::integer_base(10, "dec");
    CHECK(b.rep(1234) == Digits{1, 2, 3, 4});
    CHECK(b.is_integer_base());
    CHECK(b.parse_digits("0042") == Digits{0, 0, 4, 2});
}

TEST_CASE("Narayana word DFAO spells the fixed point") {
    auto n = nara();
    auto dfao = n.word_dfao();
    std::string got;
    for (std::uint64_t i = 0; i < 20; ++i) got += std::to_string(dfao.evaluate({n.rep(i)}));
    CHECK(got == "01200101201200120010");
}
