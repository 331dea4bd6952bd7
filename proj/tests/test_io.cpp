#include "kabel/error.hpp"
#include "kabel/io.hpp"
#include "kabel/logic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace kabel;

namespace {

Environment fib_env() {
    Environment env;
    env.add_numeration(Numeration::dumont_thomas(Substitution::parse("01/0"), 0, "fib"));
    return env;
}

template <class T, class W, class R>
T round_trip(const T& x, W write, R read) {
    std::stringstream ss;
    write(ss, x);
    return read(ss);
}

} // namespace

TEST_CASE("native automaton format round-trips exactly") {
    auto env = fib_env();
    auto rel = compile("x+y=z", env).automaton;
    auto back = round_trip(rel, write_automaton, read_automaton);
    CHECK(back == rel);
    CHECK(back.tracks() == rel.tracks());

    auto word = env.numeration("fib").word_dfao();
    CHECK(round_trip(word, write_automaton, read_automaton) == word);

    // Re-export is byte identical.
    std::stringstream a, b;
    write_automaton(a, rel);
    write_automaton(b, round_trip(rel, write_automaton, read_automaton));
    CHECK(a.str() == b.str());
}

TEST_CASE("native format header") {
    auto env = fib_env();
    std::stringstream ss;
    write_automaton(ss, compile("x<y", env).automaton);
    const auto text = ss.str();
    CHECK(text.rfind("tracks 2\nalphabet 0..1\nnumeration fib\nalphabet 0..1\nnumeration fib\n", 0) == 0);
    CHECK(text.find("trans 0 (0,1) -> ") != std::string::npos);
}

TEST_CASE("malformed automata are rejected") {
    std::istringstream missing("tracks 1\nalphabet 0..1\nstate 0\ntrans 0 (0) -> 0\n");
    CHECK_THROWS_AS(read_automaton(missing), Error);
    std::istringstream digit("tracks 1\nalphabet 0..1\nstate 0\ntrans 0 (2) -> 0\n");
    CHECK_THROWS_AS(read_automaton(digit), Error);
    std::istringstream ok("tracks 1\nalphabet 0..1\nstate 0 output -3\ntrans 0 (0) -> 0\ntrans 0 (1) -> 0\n");
    auto a = read_automaton(ok);
    CHECK(a.output(0) == -3);
}

TEST_CASE("linear representation format round-trips exactly") {
    auto env = fib_env();
    auto r = path_count(compile("i<n", env).automaton, {1});
    r.lambda[0] = Rational(-7, 3);
    auto back = round_trip(r, write_linrep, read_linrep);
    CHECK(back.tracks == r.tracks);
    CHECK(back.lambda == r.lambda);
    CHECK(back.gamma == r.gamma);
    REQUIRE(back.mu.size() == r.mu.size());
    for (std::size_t l = 0; l < r.mu.size(); ++l) CHECK(back.mu[l].rows == r.mu[l].rows);
    std::stringstream ss;
    write_linrep(ss, r);
    CHECK(ss.str().find("-7/3") != std::string::npos);
}

TEST_CASE("dot, grid and csv emitters") {
    auto env = fib_env();
    std::stringstream dot;
    write_dot(dot, env.numeration("fib").word_dfao());
    CHECK(dot.str().rfind("digraph", 0) == 0);
    CHECK(dot.str().find("start -> q") != std::string::npos);

    std::stringstream grid;
    write_grid(grid, {{1, 2}, {3, -4}});
    CHECK(grid.str() == "1 2\n3 -4\n");
    std::stringstream csv;
    write_csv(csv, {"n", "rho"}, {{0, 1}, {1, 2}});
    CHECK(csv.str() == "n,rho\n0,1\n1,2\n");

    CHECK(parse_format("dot") == Format::Dot);
    try {
        parse_format("svg");
        FAIL("expected UnknownFormat");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownFormat);
    }
}
