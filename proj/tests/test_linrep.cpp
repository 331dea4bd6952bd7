#include "kabel/error.hpp"
#include "kabel/linrep.hpp"
#include "kabel/logic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace kabel;

namespace {

Environment fib_env() {
    Environment env;
    env.add_numeration(Numeration::dumont_thomas(Substitution::parse("01/0"), 0, "fib"));
    env.set_word("F", env.numeration("fib").word_dfao());
    return env;
}

LinRep count_over(Environment& env, const std::string& formula, const std::vector<std::string>& order, std::size_t kept) {
    auto a = arrange(compile(formula, env), order, env);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < kept; ++i) keep.push_back(i);
    return path_count(a, keep);
}

LinRep random_rep(std::mt19937& rng, std::size_t d) {
    LinRep r;
    r.tracks = {{"b2", 2}};
    r.lambda.resize(d);
    r.gamma.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        r.lambda[i] = static_cast<long>(rng() % 5) - 2;
        r.gamma[i] = Rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3);
    }
    r.mu.resize(2);
    for (auto& m : r.mu) {
        m.rows.resize(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (rng() % 3 == 0) m.rows[i].emplace_back(static_cast<std::uint32_t>(j), Rational(static_cast<long>(rng() % 5) - 2));
    }
    return r;
}

Digits random_word(std::mt19937& rng) {
    Digits w(rng() % 9);
    for (auto& x : w) x = rng() % 2;
    return w;
}

} // namespace

TEST_CASE("path count of the empty relation is zero") {
    Automaton empty({{"b2", 2}, {"b2", 2}});
    empty.add_state(0);
    for (std::size_t l = 0; l < 4; ++l) empty.set_transition(0, l, 0);
    auto r = path_count(empty, {0});
    CHECK(r.dim() == 0);
    CHECK(r.evaluate({Digits{1, 0, 1}}) == 0);
}

TEST_CASE("counting j < n gives n") {
    auto env = fib_env();
    auto r = count_over(env, "j<n", {"n", "j"}, 1);
    const auto& n = env.numeration("fib");
    for (std::uint64_t k = 0; k < 200; ++k) REQUIRE(r.evaluate({n.rep(k)}) == Rational(static_cast<long>(k)));
}

TEST_CASE("path count agrees with brute counting") {
    auto env = fib_env();
    const auto& n = env.numeration("fib");
    auto x = fixed_point_prefix(n.substitution(), 0, 400);
    auto r = count_over(env, "i+j<=m & F[i]=@1 & F[j]=@0", {"m", "i", "j"}, 1);
    for (std::uint64_t m = 0; m < 120; ++m) {
        long brute = 0;
        for (std::uint64_t i = 0; i <= m; ++i)
            for (std::uint64_t j = 0; i + j <= m; ++j) brute += x[i] == 1 && x[j] == 0;
        REQUIRE(r.evaluate({n.rep(m)}) == Rational(brute));
    }
}

TEST_CASE("arithmetic on representations") {
    std::mt19937 rng(5);
    auto a = random_rep(rng, 4), b = random_rep(rng, 3);
    b.tracks = a.tracks;
    auto s = add(a, b), t = scale(a, 2), z = subtract(a, a);
    for (int i = 0; i < 100; ++i) {
        auto w = random_word(rng);
        REQUIRE(s.evaluate({w}) == a.evaluate({w}) + b.evaluate({w}));
        REQUIRE(t.evaluate({w}) == 2 * a.evaluate({w}));
    }
    CHECK(reduce(z).dim() == 0);
    CHECK(reduce(zero_linrep(a.tracks)).dim() == 0);
}

TEST_CASE("reduction preserves values") {
    std::mt19937 rng(9);
    for (int t = 0; t < 5; ++t) {
        auto a = random_rep(rng, 6);
        // Pad with unreachable, unobservable dimensions.
        LinRep padded = a;
        padded.lambda.resize(9, 0);
        padded.gamma.resize(9, 0);
        for (auto& m : padded.mu) {
            m.rows.resize(9);
            for (std::size_t i = 6; i < 9; ++i) m.rows[i].emplace_back(static_cast<std::uint32_t>(i % 6), Rational(1));
        }
        auto r = reduce(padded);
        CHECK(r.dim() <= 6);
        for (int i = 0; i < 1000; ++i) {
            auto w = random_word(rng);
            REQUIRE(r.evaluate({w}) == a.evaluate({w}));
        }
    }
}

TEST_CASE("permuting tracks") {
    auto env = fib_env();
    auto a = arrange(compile("i<j & n<=i", env), {"i", "j", "n"}, env);
    auto r = path_count(a, {0, 1});
    auto p = permute_tracks(r, {1, 0});
    const auto& n = env.numeration("fib");
    for (std::uint64_t i = 0; i < 15; ++i)
        for (std::uint64_t j = 0; j < 15; ++j) REQUIRE(p.evaluate({n.rep(i), n.rep(j)}) == r.evaluate({n.rep(j), n.rep(i)}));
}

TEST_CASE("semigroup trick") {
    auto env = fib_env();
    const auto& n = env.numeration("fib");
    SECTION("constant") {
        LinRep one;
        one.tracks = {{"fib", 2}};
        one.lambda = {1};
        one.gamma = {1};
        one.mu.resize(2);
        for (auto& m : one.mu) m.rows = {{{0, Rational(1)}}};
        auto d = semigroup_trick(one);
        CHECK(d.size() == 1);
        CHECK(d.output(0) == 1);
    }
    SECTION("unbounded") {
        auto r = count_over(env, "j<n", {"n", "j"}, 1);
        CHECK_THROWS_AS(semigroup_trick(r, {10'000, std::int64_t(1) << 32}), Error);
    }
    SECTION("bounded difference") {
        // #{i<m : x[i]=1} - #{1<=i<=m : x[i]=1} = -x[m] since x[0]=0.
        auto a = count_over(env, "i<m & F[i]=@1", {"m", "i"}, 1);
        auto b = count_over(env, "i>=1 & i<=m & F[i]=@1", {"m", "i"}, 1);
        auto d = semigroup_trick(subtract(a, b));
        auto x = fixed_point_prefix(n.substitution(), 0, 10000);
        for (std::uint64_t m = 0; m < 10000; ++m) REQUIRE(d.evaluate({n.rep(m)}) == -static_cast<std::int64_t>(x[m]));
        // Minimal: same as the minimized word automaton with negated outputs on valid inputs.
        CHECK(d.output_range() == std::vector<std::int64_t>{-1, 0});
    }
}

TEST_CASE("first values") {
    auto env = fib_env();
    auto r = count_over(env, "j<=n", {"n", "j"}, 1);
    auto v = first_values(r, env.numeration("fib"), 6);
    CHECK(v == std::vector<Rational>{1, 2, 3, 4, 5, 6});
}
