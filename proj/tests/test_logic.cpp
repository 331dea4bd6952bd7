#include "kabel/error.hpp"
#include "kabel/logic.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kabel;

namespace {

Environment fib_env() {
    Environment env;
    env.add_numeration(Numeration::dumont_thomas(Substitution::parse("01/0"), 0, "fib"));
    env.set_word("F", env.numeration("fib").word_dfao());
    return env;
}

bool accepts(const Predicate& p, Environment& env, const std::vector<std::uint64_t>& values) {
    std::vector<Digits> w;
    for (std::size_t t = 0; t < values.size(); ++t) w.push_back(env.numeration(p.automaton.tracks()[t].numeration).rep(values[t]));
    return p.automaton.evaluate(w) != 0;
}

} // namespace

TEST_CASE("x=x accepts every valid representation") {
    auto env = fib_env();
    auto p = compile("x=x", env);
    REQUIRE(p.variables == std::vector<std::string>{"x"});
    const auto& n = env.numeration("fib");
    for (std::uint64_t x = 0; x < 300; ++x) CHECK(accepts(p, env, {x}));
    CHECK(p.automaton.evaluate({Digits{1, 1}}) == 0);
    CHECK(p.automaton.evaluate({n.padded_rep(5, 9)}) == 1);
}

TEST_CASE("arithmetic atoms match integer semantics") {
    auto env = fib_env();
    auto sum = compile("x+y=z", env);
    auto diff = compile("z=x-y", env);
    auto lt = compile("x<y+1", env);
    auto twice = compile("y=2*x", env);
    auto konst = compile("x=7", env);
    for (std::uint64_t x = 0; x < 30; ++x)
        for (std::uint64_t y = 0; y < 30; ++y) {
            for (std::uint64_t z = 0; z < 60; z += 1) {
                REQUIRE(accepts(sum, env, {x, y, z}) == (x + y == z));
                REQUIRE(accepts(diff, env, {x, y, z}) == (x == y + z));
            }
            REQUIRE(accepts(lt, env, {x, y}) == (x < y + 1));
            REQUIRE(accepts(twice, env, {x, y}) == (y == 2 * x));
        }
    for (std::uint64_t x = 0; x < 30; ++x) CHECK(accepts(konst, env, {x}) == (x == 7));
}

TEST_CASE("closed formulas evaluate to truth values") {
    auto env = fib_env();
    CHECK(compile("Ax Ey y=x+1", env).value());
    CHECK_FALSE(compile("Ex x<0", env).value());
    CHECK(compile("Ax x>=0", env).value());
    CHECK_FALSE(compile("Ax Ay x<=y", env).value());
    // Fibonacci word has no factor 11.
    CHECK(compile("Ax ~(F[x]=@1 & F[x+1]=@1)", env).value());
}

TEST_CASE("forall is the dual of exists") {
    auto env = fib_env();
    auto a = compile("Ay y<x => F[y]=@0", env);
    auto b = compile("~Ey ~(y<x => F[y]=@0)", env);
    CHECK(a.automaton == b.automaton);
}

TEST_CASE("feq predicate against the fixed point") {
    auto env = fib_env();
    auto feq = feq_predicate(env.word("F"), "fib", env);
    env.define("feq", feq);
    const auto& n = env.numeration("fib");
    auto x = fixed_point_prefix(n.substitution(), 0, 200);
    for (std::uint64_t i = 0; i < 30; ++i)
        for (std::uint64_t j = 0; j < 30; ++j)
            for (std::uint64_t m = 0; m < 30; ++m) {
                bool same = std::equal(x.begin() + i, x.begin() + i + m, x.begin() + j);
                REQUIRE((feq.evaluate({n.rep(i), n.rep(j), n.rep(m)}) != 0) == same);
            }
    CHECK(feq.evaluate({n.rep(0), n.rep(3), n.rep(2)}) == 1);

    // First occurrences: counting them gives the factor complexity n+1.
    auto first = compile("Aj $feq(i,j,n) => i<=j", env);
    REQUIRE(first.variables == std::vector<std::string>{"i", "n"});
    for (std::uint64_t m = 0; m < 20; ++m) {
        int count = 0;
        for (std::uint64_t i = 0; i < 80; ++i) count += accepts(first, env, {i, m});
        CHECK(count == static_cast<int>(m + 1));
    }
}

TEST_CASE("Tribonacci feq") {
    Environment env;
    env.add_numeration(Numeration::dumont_thomas(Substitution::parse("01/02/0"), 0, "tri"));
    auto feq = feq_predicate(env.numeration("tri").word_dfao(), "tri", env);
    const auto& n = env.numeration("tri");
    CHECK(feq.evaluate({n.rep(0), n.rep(1), n.rep(1)}) == 0);
    CHECK(feq.evaluate({n.rep(0), n.rep(2), n.rep(1)}) == 1);
}

TEST_CASE("relation calls and errors") {
    auto env = fib_env();
    env.define("succ", arrange(compile("y=x+1", env), {"x", "y"}, env));
    auto p = compile("$succ(a,b) & $succ(b,c)", env);
    for (std::uint64_t a = 0; a < 20; ++a)
        for (std::uint64_t c = 0; c < 25; ++c) CHECK(accepts(compile("Eb $succ(a,b) & $succ(b,c)", env), env, {a, c}) == (c == a + 2));
    CHECK(p.variables.size() == 3);
    CHECK_THROWS_AS(compile("$nope(x)", env), Error);
    CHECK_THROWS_AS(compile("$succ(x)", env), Error);
    CHECK_THROWS_AS(compile("x <", env), Error);
    env.add_numeration(Numeration::integer_base(2, "b2"));
    try {
        compile("?msd_b2 $succ(x,y)", env);
        FAIL("expected a numeration mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MixedNumerationWithoutConverter);
    }
    CHECK(compile("?msd_b2 $succ(?msd_fib x, ?msd_fib y)", env).variables.size() == 2);
}

TEST_CASE("DFAO value predicate") {
    Automaton c({{"fib", 2}});
    c.add_state(4);
    c.set_transition(0, 0, 0);
    c.set_transition(0, 1, 0);
    auto all = dfao_value_predicate(c, 4);
    CHECK(all.size() == 1);
    CHECK(all.accepting(0));
    try {
        dfao_value_predicate(c, 2);
        FAIL("expected ValueNotInRange");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ValueNotInRange);
    }
}

TEST_CASE("compiled predicates are padding invariant") {
    auto env = fib_env();
    auto p = compile("Ey x+y=z & F[y]=@1", env);
    const auto& n = env.numeration("fib");
    for (std::uint64_t x = 0; x < 20; ++x)
        for (std::uint64_t z = 0; z < 30; ++z) {
            auto a = p.automaton.evaluate({n.rep(x), n.rep(z)});
            auto b = p.automaton.evaluate({n.padded_rep(x, 12), n.padded_rep(z, 12)});
            REQUIRE(a == b);
        }
}
