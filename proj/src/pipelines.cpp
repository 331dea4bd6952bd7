#include "kabel/pipelines.hpp"

#include "kabel/error.hpp"
#include "kabel/io.hpp"
#include "kabel/lrsa.hpp"
#include "kabel/oracle.hpp"
#include "kabel/spectrum.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

namespace kabel {

namespace {

class Checkpoint {
public:
    explicit Checkpoint(std::string dir) : dir_(std::move(dir)) {
        if (!dir_.empty()) std::filesystem::create_directories(dir_);
    }

    template <class Make>
    Automaton automaton(const std::string& name, Make make) const {
        if (dir_.empty()) return make();
        const auto path = dir_ + "/" + name + ".aut";
        if (std::filesystem::exists(path)) return load_automaton(path);
        Automaton a = make();
        save_automaton(path, a);
        return a;
    }

    template <class Make>
    LinRep linrep(const std::string& name, Make make) const {
        if (dir_.empty()) return make();
        const auto path = dir_ + "/" + name + ".rep";
        if (std::filesystem::exists(path)) return load_linrep(path);
        LinRep r = make();
        save_linrep(path, r);
        return r;
    }

private:
    std::string dir_;
};

void say(const Progress& p, const std::string& msg) {
    if (p) p(msg);
}

std::string delta_at(const std::string& d, const std::string& n) {
    return d + "[i][j1][j2][k][" + n + "]";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::int64_t max_abs(const std::vector<std::int64_t>& values) {
    std::int64_t m = 0;
    for (auto v : values) m = std::max(m, v < 0 ? -v : v);
    return m;
}

} // namespace

Method1Result method1(const Substitution& s, Letter a, const Method1Options& opt) {
    Method1Result r;
    r.system = opt.system;
    const std::string& sys = r.system;
    const std::string msd = "?msd_" + sys + " ";
    Environment& env = r.env;
    env.add_numeration(Numeration::dumont_thomas(s, a, sys));
    const Checkpoint cp(opt.checkpoint_dir);

    r.feq = cp.automaton(r.feq_name(), [&] { return feq_predicate(env.numeration(sys).word_dfao(), sys, env); });
    env.define(r.feq_name(), r.feq);
    say(opt.progress, r.feq_name() + ": " + std::to_string(r.feq.size()) + " states");

    r.occ = cp.automaton("occ_" + sys, [&] {
        return arrange(compile(msd + "j1<=u & u<=j1+n & $" + r.feq_name() + "(i,u,k) & j2=j2", env),
                       {"i", "j1", "j2", "k", "n", "u"}, env);
    });
    env.define("occ_" + sys, r.occ);
    say(opt.progress, "occ_" + sys + ": " + std::to_string(r.occ.size()) + " states");

    const LinRep count = path_count(r.occ, {0, 1, 2, 3, 4});
    r.occ_dimension = count.dim();
    say(opt.progress, "occurrence count representation: dimension " + std::to_string(count.dim()));
    r.delta = cp.automaton(r.delta_name(), [&] {
        return semigroup_trick(subtract(count, permute_tracks(count, {0, 2, 1, 3, 4})), opt.caps);
    });
    r.bound = max_abs(r.delta.output_range());
    env.set_word(r.delta_name(), r.delta);
    say(opt.progress, r.delta_name() + ": " + std::to_string(r.delta.size()) + " states, bound " + std::to_string(r.bound));
    if (!opt.complexity) return r;

    r.same = cp.automaton("same" + sys, [&] { return compile(msd + delta_at(r.delta_name(), "n") + "=@0", env).automaton; });
    env.define("same" + sys, r.same);
    say(opt.progress, "same" + sys + ": " + std::to_string(r.same.size()) + " states");

    r.abexeq = cp.automaton("abeqex" + sys, [&] { return compile(msd + "Ai $same" + sys + "(i,j1,j2,k,n)", env).automaton; });
    env.define("abeqex" + sys, r.abexeq);
    say(opt.progress, "abeqex" + sys + ": " + std::to_string(r.abexeq.size()) + " states");

    r.abeq = cp.automaton("abeq" + sys, [&] {
        return compile(msd + "(n<k & $" + r.feq_name() + "(i,j,n)) | (n>=k & $" + r.feq_name() + "(i,j,k-1) & $abeqex" +
                           sys + "(i,j,k,n-k))",
                       env)
            .automaton;
    });
    env.define("abeq" + sys, r.abeq);
    say(opt.progress, "abeq" + sys + ": " + std::to_string(r.abeq.size()) + " states");

    r.abfirst = cp.automaton("abfirst" + sys, [&] {
        return compile(msd + "k>0 & ~Ej j<i & $abeq" + sys + "(i,j,k,n)", env).automaton;
    });
    env.define("abfirst" + sys, r.abfirst);
    say(opt.progress, "abfirst" + sys + ": " + std::to_string(r.abfirst.size()) + " states");

    r.complexity2d = cp.linrep("complexity" + sys, [&] { return reduce(path_count(r.abfirst, {1, 2})); });
    say(opt.progress, "two-dimensional complexity: dimension " + std::to_string(r.complexity2d.dim()));

    for (std::size_t K = 1; K <= opt.k_max; ++K) {
        r.per_k[K] = cp.automaton("abcomp" + sys + std::to_string(K), [&] { return complexity_for_k(r, K, opt.caps); });
        say(opt.progress, "k=" + std::to_string(K) + ": " + std::to_string(r.per_k[K].size()) + " states");
    }
    return r;
}

Automaton complexity_for_k(Method1Result& r, std::size_t K, const SemigroupOptions& caps) {
    auto p = compile("?msd_" + r.system + " $abfirst" + r.system + "(i," + std::to_string(K) + ",n)", r.env);
    return semigroup_trick(path_count(p.automaton, {1}), caps);
}

CertifyResult certify_delta(const Automaton& delta, const std::string& numeration, const std::string& feq_name,
                            Environment& env) {
    if (delta.track_count() != 5) throw Error(Errc::ArityMismatch, "Δ takes five arguments");
    const std::string D = "_delta", msd = "?msd_" + numeration + " ";
    env.set_word(D, delta);
    const auto range = delta.output_range();
    auto in_range = [&](std::int64_t v) { return std::find(range.begin(), range.end(), v) != range.end(); };

    // constant / increase / decrease between n and n+1.
    auto steps = [&](int diff) {
        std::vector<std::string> parts;
        for (auto v : range)
            if (in_range(v + diff))
                parts.push_back("(" + delta_at(D, "n") + "=@" + std::to_string(v) + " & " + delta_at(D, "n+1") +
                                "=@" + std::to_string(v + diff) + ")");
        if (parts.empty()) return compile(msd + "i<0 & j1=j1 & j2=j2 & k=k & n=n", env).automaton;
        return compile(msd + join(parts, " | "), env).automaton;
    };
    env.define("_constant", steps(0));
    env.define("_increase", steps(1));
    env.define("_decrease", steps(-1));

    const std::string f = "$" + feq_name;
    const std::string args = "(i,j1,j2,k,n)";
    const std::vector<std::pair<std::string, std::string>> checks = {
        {"init", delta_at(D, "0") + "=@-1 | " + delta_at(D, "0") + "=@0 | " + delta_at(D, "0") + "=@1"},
        {"initXX", "(" + f + "(i,j1,k) <=> " + f + "(i,j2,k)) <=> " + delta_at(D, "0") + "=@0"},
        {"initTF", "(" + f + "(i,j1,k) & ~" + f + "(i,j2,k)) <=> " + delta_at(D, "0") + "=@1"},
        {"initFT", "(~" + f + "(i,j1,k) & " + f + "(i,j2,k)) <=> " + delta_at(D, "0") + "=@-1"},
        {"nxt", "$_constant" + args + " | $_increase" + args + " | $_decrease" + args},
        {"nxtXX", "(" + f + "(i,j1+n+1,k) <=> " + f + "(i,j2+n+1,k)) <=> $_constant" + args},
        {"nxtTF", "(" + f + "(i,j1+n+1,k) & ~" + f + "(i,j2+n+1,k)) <=> $_increase" + args},
        {"nxtFT", "(~" + f + "(i,j1+n+1,k) & " + f + "(i,j2+n+1,k)) <=> $_decrease" + args},
    };
    CertifyResult result;
    for (const auto& [name, body] : checks) {
        auto bad = compile(msd + "~(" + body + ")", env);
        std::vector<std::vector<unsigned>> letters;
        if (!shortest_accepted(bad.automaton, letters)) continue;
        result.ok = false;
        result.failed = name;
        result.variables = bad.variables;
        const auto& num = env.numeration(numeration);
        for (std::size_t t = 0; t < bad.variables.size(); ++t) {
            Digits d;
            for (const auto& l : letters) d.push_back(l[t]);
            result.witness.push_back(num.val(d));
        }
        break;
    }
    return result;
}

std::optional<std::uint64_t> parikh_collinear_alpha(const Substitution& s) {
    const auto m = incidence(s).matrix;
    for (std::size_t i = 1; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            for (std::size_t l = 0; l < m.size(); ++l)
                if (m[0][j] * m[i][l] != m[0][l] * m[i][j]) return std::nullopt;
    Integer alpha = 0;
    for (std::size_t a = 0; a < m.size(); ++a) alpha += m[a][a];
    return static_cast<std::uint64_t>(to_ll(alpha));
}

Automaton convert_dfao(const Automaton& dfao, const Numeration& from, const Numeration& to, std::int64_t invalid) {
    if (dfao.track_count() != 1) throw Error(Errc::ArityMismatch, "conversion takes a one-track DFAO");
    const Automaton conv = converter(to, from);
    Automaton result(Tracks{conv.tracks()[0]});
    result.add_state(invalid);
    for (std::size_t l = 0; l < result.letters(); ++l) result.set_transition(0, l, 0);
    for (auto v : dfao.output_range()) {
        if (v == invalid) continue;
        auto hit = lift(map_outputs(dfao, [v](std::int64_t o) -> std::int64_t { return o == v; }), conv.tracks(), {1});
        auto image = project(intersect(conv, hit), 1);
        result = product(result, image, [v](std::int64_t x, std::int64_t y) { return y ? v : x; });
    }
    return minimize(result);
}

Method2Result method2_kabelian(const Substitution& s, Letter a, std::size_t k, const Method2Options& opt) {
    if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
    if (k >= 2) {
        const auto b2 = block_substitution(s, a, 2);
        const auto sc = classify_spectrum(incidence(b2.tau_k).char_poly);
        if (!sc.ultimately_pisot())
            throw Error(Errc::Tau2NotUltimatelyPisot,
                        "characteristic polynomial of τ_2 is " + incidence(b2.tau_k).char_poly.to_string());
    }
    Method2Result r;
    r.k = k;
    r.block = block_substitution(s, a, k);
    const std::string sys = opt.system, bsys = sys + "b" + std::to_string(k);
    const std::string msd = "?msd_" + bsys + " ";
    Environment env;
    env.add_numeration(Numeration::dumont_thomas(r.block.tau_k, 0, bsys));
    env.add_numeration(Numeration::dumont_thomas(s, a, sys));
    r.block_numeration = env.numeration(bsys);
    say(opt.progress, "τ_" + std::to_string(k) + ": " + to_dsl_one_based(r.block.tau_k));

    const auto& pi = r.block.coding.pi;
    env.set_word("_X", map_outputs(r.block_numeration.word_dfao(), [&](std::int64_t o) -> std::int64_t {
        return o < 0 ? o : pi[static_cast<std::size_t>(o)];
    }));

    // Border condition: only prefixes shorter than k are compared, so factor
    // equality is a finite conjunction of letter comparisons.
    std::vector<std::string> short_cases;
    Automaton prefix = compile(msd + "i=i & j=j", env).automaton;
    for (std::size_t m = 0; m < k; ++m) {
        const std::string id = std::to_string(m);
        if (m > 0)
            prefix = minimize(intersect(
                prefix, compile(msd + "_X[i+" + std::to_string(m - 1) + "]=_X[j+" + std::to_string(m - 1) + "]", env)
                            .automaton));
        env.define("_pre" + id, prefix);
        short_cases.push_back("(n=" + id + " & $_pre" + id + "(i,j))");
    }
    env.define("_feqb", compile(msd + join(short_cases, " | "), env).automaton);

    // Equal block counts of B_k[i..i+n) and B_k[j..j+n), each count taken
    // relative to its minimum over all length-n factors so that the witness
    // stays bounded. The last letter's count follows from the others.
    const std::size_t letters = r.block.coding.theta.size();
    env.define("_add", env.adder(bsys));
    const Lrsa S = addressing_lrsa(r.block_numeration);
    Automaton pv = compile(msd + "i=i & j=j & n=n", env).automaton;
    for (std::size_t c = 0; c < letters; ++c) {
        r.parikh_syncs.push_back(parikh_sync(r.block_numeration, static_cast<Letter>(c)));
        if (c + 1 == letters) break;
        const std::string id = std::to_string(c);
        const Lrsa P = parikh_lrsa(r.block_numeration, static_cast<Letter>(c));
        env.define("_span", zero_set_dfa(combine({{-1, &P}, {1, &P}, {-1, &S}}))); // z = P(t) − P(i)
        env.define("_fac" + id, compile(msd + "Et $_add(i,n,t) & $_span(i,t,z)", env).automaton);
        env.define("_min" + id, compile(msd + "Ei $_fac" + id + "(i,n,x) & Aj,y $_fac" + id + "(j,n,y) => y>=x", env).automaton);
        env.define("_diff" + id,
                   compile(msd + "Ex,y $_min" + id + "(n,x) & $_fac" + id + "(i,n,y) & $_add(z,x,y)", env).automaton);
        pv = minimize(intersect(pv, compile(msd + "Ez $_diff" + id + "(i,n,z) & $_diff" + id + "(j,n,z)", env).automaton));
    }
    env.define("_pv", pv);
    say(opt.progress, "block-count equality: " + std::to_string(pv.size()) + " states");

    const std::string K = std::to_string(k), K1 = std::to_string(k - 1);
    r.abeq = compile(msd + "(n<" + K + " & $_feqb(i,j,n)) | (n>=" + K + " & $_pre" + K1 + "(i,j) & $_pv(i,j," + (k == 1 ? std::string("n") : "n-" + K1) +
                         "))",
                     env)
                 .automaton;
    env.define("_abeq", r.abeq);
    say(opt.progress, "abeq: " + std::to_string(r.abeq.size()) + " states");
    const auto first = compile(msd + "~Ej j<i & $_abeq(i,j,n)", env);
    r.complexity = semigroup_trick(path_count(first.automaton, {1}), opt.caps);
    say(opt.progress, "complexity DFAO: " + std::to_string(r.complexity.size()) + " states");

    r.converter = converter(env.numeration(sys), r.block_numeration);
    r.converted = convert_dfao(r.complexity, r.block_numeration, env.numeration(sys));
    say(opt.progress, "converted DFAO: " + std::to_string(r.converted.size()) + " states");
    return r;
}

Automaton method2_abelian(const Substitution& s, Letter a, const Method2Options& opt) {
    return method2_kabelian(s, a, 1, opt).converted;
}

std::vector<std::uint32_t> observable_states(const Automaton& dfao, const Numeration& numeration) {
    const Automaton valid = numeration.validity_dfa();
    const std::size_t m = dfao.track_count();
    using Node = std::vector<std::uint32_t>; // DFAO state, then one validity state per track
    Node start(m + 1, valid.initial());
    start[0] = dfao.initial();
    std::set<Node> visited{start};
    std::vector<Node> stack{start};
    std::vector<bool> seen(dfao.size());
    std::vector<std::uint32_t> out;
    while (!stack.empty()) {
        Node cur = std::move(stack.back());
        stack.pop_back();
        bool ok = true;
        for (std::size_t t = 1; t <= m; ++t) ok = ok && valid.accepting(cur[t]);
        if (ok && !seen[cur[0]]) {
            seen[cur[0]] = true;
            out.push_back(cur[0]);
        }
        for (std::size_t l = 0; l < dfao.letters(); ++l) {
            const auto digits = dfao.decode(l);
            Node next(m + 1);
            next[0] = dfao.next(cur[0], l);
            bool alive = true;
            for (std::size_t t = 0; t < m && alive; ++t) {
                next[t + 1] = valid.next(cur[t + 1], digits[t]);
                alive = valid.accepting(next[t + 1]);
            }
            // Valid languages are prefix closed, so a dead track stays dead.
            if (alive && visited.insert(next).second) stack.push_back(std::move(next));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BalancednessReport balancedness_report(Method1Result& r, std::size_t k_max) {
    BalancednessReport rep;
    Environment& env = r.env;
    const std::string msd = "?msd_" + r.system + " ";
    const std::string D = r.delta_name();
    const auto& num = env.numeration(r.system);
    rep.bound = r.bound;
    rep.tight.assign(k_max + 1, 0);
    std::map<std::int64_t, Automaton> reached;
    for (std::int64_t v = 1; v <= rep.bound; ++v) {
        reached[v] = compile(msd + "Ei,j1,j2,n " + delta_at(D, "n") + "=@" + std::to_string(v), env).automaton;
        for (std::size_t K = 0; K <= k_max; ++K)
            if (reached[v].evaluate({num.rep(K)})) rep.tight[K] = v;
    }
    // Candidate from the flags on k < 1024, then one exact check for all k.
    auto least_threshold = [&](const Automaton& set, const std::string& rel,
                               const std::string& shape) -> std::optional<std::size_t> {
        std::size_t K = 0;
        for (std::size_t k = 0; k < 1024; ++k)
            if (!set.evaluate({num.rep(k)})) K = k + 1;
        env.define(rel, set);
        std::string f = shape;
        for (std::size_t p; (p = f.find("#K")) != std::string::npos;) f.replace(p, 2, std::to_string(K));
        for (std::size_t p; (p = f.find("#R")) != std::string::npos;) f.replace(p, 2, rel);
        if (compile(msd + f, env).value()) return K;
        return std::nullopt;
    };
    if (rep.bound > 0) {
        rep.tight_from = least_threshold(reached[rep.bound], "_tight", "Ak k>=#K => $#R(k)");
        for (std::size_t k = 0; k < 1024; ++k)
            if (!reached[rep.bound].evaluate({num.rep(k)})) rep.below_bound.push_back(k);
        rep.below_bound_infinite = compile(msd + "An Ek k>n & ~$_tight(k)", env).value();
    }
    for (std::int64_t C = 1; C < rep.bound; ++C) {
        auto unb = compile(msd + "Ai Ej1,j2,n " + delta_at(D, "n") + ">@" + std::to_string(C), env).automaton;
        auto& flags = rep.totally_unbalanced[C];
        for (std::size_t K = 0; K <= k_max; ++K) flags.push_back(unb.evaluate({num.rep(K)}) != 0);
        rep.never_unbalanced[C] = is_empty(unb);
        rep.unbalanced_from[C] = least_threshold(unb, "_unb", "Ak $#R(k) <=> k>=#K");
    }
    return rep;
}

BalancednessReport balancedness_report(const Word& prefix, std::size_t k_max, std::size_t n_max) {
    BalancednessReport rep;
    rep.exact = false;
    rep.tight.assign(k_max + 1, 0);
    for (std::size_t k = 1; k <= k_max; ++k) {
        rep.tight[k] = static_cast<std::int64_t>(brute_balance(prefix, k, n_max).best.value);
        rep.bound = std::max(rep.bound, rep.tight[k]);
    }
    for (std::int64_t C = 1; C < rep.bound; ++C) {
        auto& flags = rep.totally_unbalanced[C];
        flags.push_back(false);
        for (std::size_t k = 1; k <= k_max; ++k)
            flags.push_back(brute_totally_unbalanced(prefix, k, static_cast<std::uint64_t>(C), n_max).verdict ==
                            Unbalanced::Yes);
    }
    return rep;
}

std::pair<Automaton, Automaton> difference_dfaos(Method1Result& r, const SemigroupOptions& caps) {
    const std::string msd = "?msd_" + r.system + " ", first = "$abfirst" + r.system;
    const LinRep base = path_count(r.abfirst, {1, 2});
    auto shifted = [&](const std::string& args) {
        return path_count(compile(msd + first + args, r.env).automaton, {1, 2});
    };
    Automaton dk = semigroup_trick(subtract(shifted("(i,k+1,n)"), base), caps);
    Automaton dn = semigroup_trick(subtract(shifted("(i,k,n+1)"), base), caps);
    return {std::move(dk), std::move(dn)};
}

std::vector<std::vector<std::int64_t>> grid_values(const Automaton& dfao, const Numeration& n, std::size_t rows,
                                                   std::size_t cols) {
    std::vector<std::vector<std::int64_t>> grid(rows, std::vector<std::int64_t>(cols));
    for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t c = 0; c < cols; ++c) grid[k][c] = dfao.evaluate({n.rep(k), n.rep(c)});
    return grid;
}

} // namespace kabel
