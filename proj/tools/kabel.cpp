#include "kabel/blockcode.hpp"
#include "kabel/error.hpp"
#include "kabel/io.hpp"
#include "kabel/logic.hpp"
#include "kabel/lrsa.hpp"
#include "kabel/oracle.hpp"
#include "kabel/pipelines.hpp"
#include "kabel/spectrum.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace kabel;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string out_dir;
    std::size_t threads = 1;
    std::uint64_t seed = 20240611;
    bool verbose = false;
    std::size_t max_states = SemigroupOptions{}.max_states;
};

Common common;

std::string output_dir() {
    fs::create_directories(common.out_dir);
    return common.out_dir;
}

std::string path_in_out(const std::string& file) { return (fs::path(output_dir()) / file).string(); }

SemigroupOptions caps() {
    SemigroupOptions c;
    c.max_states = common.max_states;
    return c;
}

Progress progress() {
    if (!common.verbose) return {};
    auto t0 = std::chrono::steady_clock::now();
    return [t0](const std::string& m) {
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "[" << s << "s] " << m << '\n';
    };
}

Numeration make_numeration(const std::string& spec, Letter seed, const std::string& name) {
    if (spec.rfind("base", 0) == 0) return Numeration::integer_base(static_cast<unsigned>(std::stoul(spec.substr(4))), name);
    return Numeration::dumont_thomas(Substitution::parse(spec), seed, name);
}

std::string value_set(const std::vector<std::int64_t>& values) {
    std::set<std::int64_t> s(values.begin(), values.end());
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto it = s.begin(); it != s.end();) {
        auto run_end = it;
        while (std::next(run_end) != s.end() && *std::next(run_end) == *run_end + 1) ++run_end;
        if (!first) os << ',';
        first = false;
        if (*run_end - *it >= 2) os << *it << ".." << *run_end;
        else if (run_end != it) os << *it << ',' << *run_end;
        else os << *it;
        it = std::next(run_end);
    }
    os << '}';
    return os.str();
}

std::vector<std::int64_t> dfao_values(const Automaton& a, const Numeration& n, std::size_t count) {
    std::vector<std::int64_t> v;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.push_back(a.evaluate({n.rep(i)}));
    return v;
}

void write_values_csv(const std::string& path, const std::string& column, const std::vector<std::int64_t>& v) {
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t n = 0; n < v.size(); ++n) rows.push_back({static_cast<std::int64_t>(n), v[n]});
    std::ofstream f(path);
    write_csv(f, {"n", column}, rows);
}

std::string opt_string(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "none"; }

// ---- subcommands -----------------------------------------------------------

int cmd_analyze(const std::string& dsl, Letter a, std::size_t k) {
    auto s = Substitution::parse(dsl);
    auto inc = incidence(s);
    std::cout << "substitution " << s.to_dsl() << '\n';
    std::cout << "prolongable on " << a << ": " << (is_prolongable(s, a) ? "yes" : "no") << '\n';
    std::cout << "primitive: " << (is_primitive(s) ? "yes" : "no") << '\n';
    std::cout << "incidence matrix:\n";
    for (const auto& row : inc.matrix) {
        std::cout << ' ';
        for (const auto& e : row) std::cout << ' ' << e;
        std::cout << '\n';
    }
    std::cout << "characteristic polynomial: " << inc.char_poly.to_string() << '\n';
    std::cout << "spectrum: " << classify_spectrum(inc.char_poly).describe() << '\n';
    if (auto alpha = parikh_collinear_alpha(s)) std::cout << "Parikh-collinear, alpha = " << *alpha << '\n';
    if (k >= 2) {
        auto rel = char_poly_relation(s, a, k);
        std::cout << "P_tau" << k << ": " << rel.p_tauk.to_string() << '\n';
        std::cout << "P_tau2: " << rel.p_tau2.to_string() << " (" << classify_spectrum(rel.p_tau2).describe() << ")\n";
        std::cout << "P_tau divides P_tau" << k << ": " << (rel.tau_divides ? "yes" : "no") << '\n';
        if (rel.shift >= 0) std::cout << "P_tau" << k << " = X^" << rel.shift << " P_tau2\n";
    }
    return 0;
}

int cmd_numeration(const std::string& spec, Letter a, const std::string& name, std::size_t count,
                   const std::vector<std::string>& values) {
    auto n = make_numeration(spec, a, name);
    for (std::size_t i = 0; i < count; ++i) std::cout << i << ' ' << n.to_string(n.rep(i)) << '\n';
    for (const auto& v : values) std::cout << v << " -> " << n.val(n.parse_digits(v)) << '\n';
    auto valid = n.validity_dfa();
    valid.set_name("msd_" + name);
    save_automaton(path_in_out("msd_" + name + ".aut"), valid);
    auto word = n.word_dfao();
    save_automaton(path_in_out(name + ".aut"), word);
    std::cout << "validity DFA: " << valid.size() << " states; word DFAO: " << word.size() << " states\n";
    return 0;
}

int cmd_adder(const std::string& spec, Letter a, const std::string& name) {
    auto n = make_numeration(spec, a, name);
    auto add = adder(n);
    save_automaton(path_in_out("adder_" + name + ".aut"), add);
    std::cout << "adder_" << name << ": " << add.size() << " states\n";
    return 0;
}

int cmd_convert(const std::string& from_spec, const std::string& to_spec, Letter a, const std::string& from_name,
                const std::string& to_name, const std::string& dfao_file) {
    auto from = make_numeration(from_spec, a, from_name);
    auto to = make_numeration(to_spec, a, to_name);
    auto conv = converter(from, to);
    save_automaton(path_in_out("conv_" + from_name + "_" + to_name + ".aut"), conv);
    std::cout << "conv_" << from_name << "_" << to_name << ": " << conv.size() << " states\n";
    if (!dfao_file.empty()) {
        auto d = convert_dfao(load_automaton(dfao_file), from, to);
        const auto out = path_in_out(fs::path(dfao_file).stem().string() + "_" + to_name + ".aut");
        save_automaton(out, d);
        std::cout << "converted DFAO: " << d.size() << " states -> " << out << '\n';
    }
    return 0;
}

int cmd_method1(const std::string& dsl, Letter a, const std::string& name, std::size_t k_max, bool report) {
    auto s = Substitution::parse(dsl);
    Method1Options o;
    o.system = name;
    o.caps = caps();
    o.k_max = k_max;
    o.checkpoint_dir = output_dir();
    o.progress = progress();
    Method1Result r = method1(s, a, o);
    std::cout << "uniform bound " << r.bound << "; Δ minimal states " << r.delta.size() << '\n';
    std::cout << "occurrence representation dimension " << r.occ_dimension << "; 2D complexity dimension "
              << r.complexity2d.dim() << '\n';
    const auto& num = r.env.numeration(name);
    for (const auto& [k, d] : r.per_k) {
        auto v = dfao_values(d, num, 2001);
        std::cout << "k=" << k << ": " << d.size() << " states, values " << value_set(v) << '\n';
        write_values_csv(path_in_out("complexity" + name + "_k" + std::to_string(k) + ".csv"), "rho", v);
    }
    if (report) {
        auto rep = balancedness_report(r, k_max);
        std::cout << "C_k:";
        for (auto c : rep.tight) std::cout << ' ' << c;
        std::cout << "\nC_k = " << rep.bound << " for k >= " << opt_string(rep.tight_from) << '\n';
        if (!rep.tight_from) {
            std::cout << "C_k < " << rep.bound << " for k in {";
            for (std::size_t i = 0; i < rep.below_bound.size(); ++i) std::cout << (i ? "," : "") << rep.below_bound[i];
            std::cout << (rep.below_bound_infinite ? ",...} (infinitely many)\n" : "} (k < 1024)\n");
        }
        for (const auto& [C, flags] : rep.totally_unbalanced) {
            std::cout << "totally (k," << C << ")-unbalanced: ";
            if (rep.never_unbalanced.at(C)) std::cout << "never\n";
            else std::cout << "exactly for k >= " << opt_string(rep.unbalanced_from.at(C)) << '\n';
        }
    }
    return 0;
}

int cmd_method2(const std::string& dsl, Letter a, const std::string& name, std::size_t k, bool abelian,
                std::size_t n_max, std::size_t check) {
    auto s = Substitution::parse(dsl);
    Method2Options o;
    o.system = name;
    o.caps = caps();
    o.progress = progress();
    auto num = Numeration::dumont_thomas(s, a, name);
    Automaton d;
    if (abelian) {
        d = method2_abelian(s, a, o);
        k = 1;
    } else {
        auto r = method2_kabelian(s, a, k, o);
        save_automaton(path_in_out("conv_" + name + "_" + r.block_numeration.name() + ".aut"), r.converter);
        save_automaton(path_in_out("abeq" + r.block_numeration.name() + ".aut"), r.abeq);
        d = r.converted;
    }
    const std::string base = "complexity" + name + "_k" + std::to_string(k);
    save_automaton(path_in_out(base + ".aut"), d);
    auto v = dfao_values(d, num, n_max + 1);
    write_values_csv(path_in_out(base + ".csv"), "rho", v);
    std::cout << "k=" << k << ": " << d.size() << " states, values over n <= " << n_max << ": " << value_set(v) << '\n';
    if (auto alpha = parikh_collinear_alpha(s); alpha && abelian) {
        auto b = convert_dfao(d, num, Numeration::integer_base(static_cast<unsigned>(*alpha), "base" + std::to_string(*alpha)));
        save_automaton(path_in_out(base + "_base" + std::to_string(*alpha) + ".aut"), b);
        std::cout << "base " << *alpha << ": " << b.size() << " states\n";
    }
    if (check > 0) {
        auto oracle = brute_kabelian(oracle_prefix(s, a, check), k, check);
        std::size_t bad = 0;
        for (std::size_t n = 0; n <= check; ++n) bad += d.evaluate({num.rep(n)}) != static_cast<std::int64_t>(oracle[n]);
        std::cout << "oracle check n <= " << check << ": " << (bad == 0 ? "match" : std::to_string(bad) + " mismatches")
                  << '\n';
        if (bad) return 1;
    }
    return 0;
}

int cmd_oracle(const std::string& dsl, Letter a, const std::vector<std::size_t>& ks, std::size_t n_max, bool balance) {
    auto s = Substitution::parse(dsl);
    auto x = oracle_prefix(s, a, n_max);
    std::vector<std::string> header{"n"};
    std::vector<std::vector<std::uint64_t>> cols;
    for (auto k : ks) {
        header.push_back("rho" + std::to_string(k));
        cols.push_back(brute_kabelian(x, k, n_max));
    }
    header.push_back("p");
    cols.push_back(brute_factor_complexity(x, n_max));
    if (balance)
        for (auto k : ks) {
            header.push_back("balance" + std::to_string(k));
            cols.push_back(brute_balance(x, k, n_max).per_n);
        }
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t n = 0; n <= n_max; ++n) {
        std::vector<std::int64_t> row{static_cast<std::int64_t>(n)};
        for (const auto& c : cols) row.push_back(static_cast<std::int64_t>(c[n]));
        rows.push_back(std::move(row));
    }
    write_csv(std::cout, header, rows);
    return 0;
}

int cmd_certify(const std::string& delta_file, const std::string& dsl, Letter a, const std::string& name,
                std::size_t mutations) {
    auto s = Substitution::parse(dsl);
    Environment env;
    env.add_numeration(Numeration::dumont_thomas(s, a, name));
    env.default_numeration = name;
    const auto& num = env.numeration(name);
    env.define("feq_" + name, feq_predicate(num.word_dfao(), name, env));
    auto delta = load_automaton(delta_file);
    auto show = [](const CertifyResult& r) {
        if (r.ok) return std::string("certified");
        std::string s = "failed " + r.failed + " at";
        for (std::size_t i = 0; i < r.variables.size(); ++i)
            s += " " + r.variables[i] + "=" + std::to_string(r.witness[i]);
        return s;
    };
    auto res = certify_delta(delta, name, "feq_" + name, env);
    std::cout << show(res) << '\n';
    if (!res.ok) return 1;
    // Fault injection: change one output on a state reachable by a valid input.
    std::mt19937_64 rng(common.seed);
    const auto observable = observable_states(delta, num);
    std::size_t caught = 0;
    for (std::size_t m = 0; m < mutations && !observable.empty(); ++m) {
        Automaton bad = delta;
        const auto q = observable[rng() % observable.size()];
        bad.set_output(q, bad.output(q) + (rng() % 2 ? 1 : -1));
        auto r = certify_delta(bad, name, "feq_" + name, env);
        std::cout << "mutation " << m << " (state " << q << "): " << show(r) << '\n';
        caught += !r.ok;
    }
    if (mutations) std::cout << caught << "/" << mutations << " mutations rejected\n";
    return caught == mutations ? 0 : 1;
}

int cmd_export(const std::string& file, const std::string& format, const std::string& dsl, Letter a,
               std::size_t rows, std::size_t cols, const std::string& out) {
    const Format f = parse_format(format);
    std::ofstream file_out;
    std::ostream* os = &std::cout;
    if (!out.empty()) {
        file_out.open(out);
        os = &file_out;
    }
    if (fs::path(file).extension() == ".rep") {
        auto r = load_linrep(file);
        if (f == Format::Native) {
            write_linrep(*os, r);
            return 0;
        }
        if (f != Format::Csv || dsl.empty() || r.tracks.size() != 1)
            throw Error(Errc::UnknownFormat, "representations export as native, or csv of one track with --dsl");
        auto num = Numeration::dumont_thomas(Substitution::parse(dsl), a, r.tracks[0].numeration);
        auto v = first_values(r, num, cols);
        std::vector<std::vector<std::int64_t>> rows_out;
        for (std::size_t n = 0; n < v.size(); ++n)
            rows_out.push_back({static_cast<std::int64_t>(n), static_cast<std::int64_t>(v[n].get_num().get_si())});
        write_csv(*os, {"n", "value"}, rows_out);
        return 0;
    }
    auto d = load_automaton(file);
    switch (f) {
    case Format::Native: write_automaton(*os, d); return 0;
    case Format::Dot: write_dot(*os, d); return 0;
    default: break;
    }
    if (dsl.empty()) throw Error(Errc::InvalidArgument, "csv and grid export need --dsl for the numeration");
    auto num = Numeration::dumont_thomas(Substitution::parse(dsl), a, d.tracks().at(0).numeration);
    if (f == Format::Grid) {
        if (d.track_count() != 2) throw Error(Errc::TrackMismatch, "grid export needs a two-track DFAO over (k, n)");
        write_grid(*os, grid_values(d, num, rows, cols));
        return 0;
    }
    if (d.track_count() != 1) throw Error(Errc::TrackMismatch, "csv export needs a one-track DFAO");
    std::vector<std::vector<std::int64_t>> rows_out;
    for (std::size_t n = 0; n < cols; ++n) rows_out.push_back({static_cast<std::int64_t>(n), d.evaluate({num.rep(n)})});
    write_csv(*os, {"n", "value"}, rows_out);
    return 0;
}

int cmd_blocksub(const std::string& dsl, Letter a, std::size_t k, bool zero_based) {
    auto b = block_substitution(Substitution::parse(dsl), a, k);
    std::cout << (zero_based ? b.tau_k.to_dsl() : to_dsl_one_based(b.tau_k)) << '\n';
    for (std::size_t l = 0; l < b.coding.theta.size(); ++l)
        std::cout << (zero_based ? l : l + 1) << " = " << word_to_string(b.coding.theta[l], b.base.size()) << '\n';
    return 0;
}

// ---- replay ----------------------------------------------------------------

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string unquote(std::string s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_words(const std::string& s, std::size_t count, std::string& rest) {
    std::istringstream is(s);
    std::vector<std::string> w(count);
    for (auto& x : w)
        if (!(is >> x)) throw Error(Errc::ParseError, "expected " + std::to_string(count) + " words in '" + s + "'");
    std::string tail;
    std::getline(is, tail);
    rest = trim(tail);
    return w;
}

/// Script lines (`#` starts a comment):
///   numeration <name> <dsl | baseB> [seed]
///   word <name> <numeration>             word DFAO of the fixed point
///   feq <name> <word> <numeration>       factor equality relation
///   def <name>[(v1,...)] <formula>       relation, tracks in the given order
///   eval <name> <formula>                print the verdict or the size
///   load word|rel <name> <file>
///   save <name> <file>
int cmd_replay(const std::string& script) {
    std::ifstream in(script);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open " + script);
    Environment env;
    std::string line;
    std::size_t line_no = 0;
    auto prog = progress();
    while (std::getline(in, line)) {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        std::string cmd, rest;
        cmd = split_words(line, 1, rest)[0];
        try {
            if (cmd == "numeration") {
                auto w = split_words(rest, 2, rest);
                const Letter seed = rest.empty() ? 0 : static_cast<Letter>(std::stoul(rest));
                env.add_numeration(make_numeration(w[1], seed, w[0]));
                if (env.default_numeration.empty()) env.default_numeration = w[0];
                std::cout << "numeration " << w[0] << '\n';
            } else if (cmd == "word") {
                auto w = split_words(rest, 2, rest);
                env.set_word(w[0], env.numeration(w[1]).word_dfao());
                std::cout << "word " << w[0] << ": " << env.word(w[0]).size() << " states\n";
            } else if (cmd == "feq") {
                auto w = split_words(rest, 3, rest);
                env.define(w[0], feq_predicate(env.word(w[1]), w[2], env));
                std::cout << w[0] << ": " << env.relation(w[0]).size() << " states\n";
            } else if (cmd == "def" || cmd == "eval") {
                auto head = split_words(rest, 1, rest)[0];
                std::vector<std::string> order;
                if (auto p = head.find('('); p != std::string::npos) {
                    std::string vars = head.substr(p + 1);
                    head.resize(p);
                    while (vars.find(')') == std::string::npos) {
                        auto more = split_words(rest, 1, rest)[0];
                        vars += more;
                    }
                    vars.resize(vars.find(')'));
                    std::stringstream vs(vars);
                    for (std::string v; std::getline(vs, v, ',');)
                        if (!trim(v).empty()) order.push_back(trim(v));
                }
                if (prog) prog("compiling " + head);
                Predicate p = compile(unquote(rest), env);
                if (p.closed()) {
                    std::cout << head << ": " << (p.value() ? "TRUE" : "FALSE") << '\n';
                    continue;
                }
                Automaton rel = order.empty() ? p.automaton : arrange(p, order, env);
                std::cout << head << ": " << rel.size() << " states over (";
                const auto& vars = order.empty() ? p.variables : order;
                for (std::size_t i = 0; i < vars.size(); ++i) std::cout << (i ? "," : "") << vars[i];
                std::cout << ")\n";
                if (cmd == "def") env.define(head, std::move(rel));
            } else if (cmd == "load") {
                auto w = split_words(rest, 3, rest);
                auto aut = load_automaton(w[2]);
                if (w[0] == "word") env.set_word(w[1], std::move(aut));
                else if (w[0] == "rel") env.define(w[1], std::move(aut));
                else throw Error(Errc::ParseError, "load expects 'word' or 'rel'");
                std::cout << "loaded " << w[1] << '\n';
            } else if (cmd == "save") {
                auto w = split_words(rest, 2, rest);
                save_automaton(w[1], env.has_relation(w[0]) ? env.relation(w[0]) : env.word(w[0]));
                std::cout << "saved " << w[0] << '\n';
            } else {
                throw Error(Errc::ParseError, "unknown command '" + cmd + "'");
            }
        } catch (const Error& e) {
            throw Error(e.code(), script + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return 0;
}

int diagnose(const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
    case Errc::CapExceeded:
        std::cerr << "hint: the balance representation did not close within the caps; "
                     "try `kabel method2 <dsl> --k K` for each k of interest\n";
        return 2;
    case Errc::NotUltimatelyPisot:
    case Errc::Tau2NotUltimatelyPisot:
        std::cerr << "hint: the numeration is not ultimately Pisot, so the relations are not regular\n";
        return 2;
    default: return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"abelian and k-abelian complexity of substitutive words"};
    app.require_subcommand(1);
    app.fallthrough();
    if (const char* env = std::getenv("KABEL_OUTPUT_DIR")) common.out_dir = env;
    else common.out_dir = "kabel-out";
    app.add_option("--out", common.out_dir, "artifact directory (default $KABEL_OUTPUT_DIR or ./kabel-out)");
    app.add_option("--threads", common.threads, "worker cap (the pipelines currently run sequentially)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", common.seed, "seed for randomized checks");
    app.add_option("--max-states", common.max_states, "cap on semigroup exploration")->check(CLI::PositiveNumber);
    app.add_flag("-v,--verbose", common.verbose, "progress on stderr");

    std::string dsl, dsl2, name = "x", name2 = "y", file, format = "native", out_file, dfao_file, method;
    unsigned seed_letter = 0;
    std::size_t k = 1, k_max = 6, n_max = 200, count = 20, check = 0, rows = 16, cols = 64, mutations = 0;
    std::vector<std::size_t> ks{1};
    std::vector<std::string> values;
    bool abelian = false, zero_based = false, report = true, balance = false, m1 = false, m2 = false, orc = false;

    auto add_dsl = [&](CLI::App* c) {
        c->add_option("dsl", dsl, "substitution, e.g. 01/2/0")->required();
        c->add_option("-a,--letter", seed_letter, "seed letter of the fixed point");
    };

    auto* analyze = app.add_subcommand("analyze", "incidence matrix and spectral report");
    add_dsl(analyze);
    analyze->add_option("--k", k, "also compare P_tau with P_tau_k");

    auto* numeration = app.add_subcommand("numeration", "representations and validity DFA");
    numeration->add_option("spec", dsl, "substitution DSL or baseB")->required();
    numeration->add_option("-a,--letter", seed_letter);
    numeration->add_option("--name", name);
    numeration->add_option("--count", count, "print rep(0..count-1)");
    numeration->add_option("--val", values, "evaluate representations");

    auto* add_cmd = app.add_subcommand("adder", "addition automaton");
    add_cmd->add_option("spec", dsl)->required();
    add_cmd->add_option("-a,--letter", seed_letter);
    add_cmd->add_option("--name", name);

    auto* conv = app.add_subcommand("convert", "converter between two numerations");
    conv->add_option("from", dsl, "substitution DSL or baseB")->required();
    conv->add_option("to", dsl2, "substitution DSL or baseB")->required();
    conv->add_option("-a,--letter", seed_letter);
    conv->add_option("--from-name", name);
    conv->add_option("--to-name", name2);
    conv->add_option("--dfao", dfao_file, "one-track DFAO to re-express")->check(CLI::ExistingFile);

    auto* method1_cmd = app.add_subcommand("method1", "two-dimensional k-abelian complexity via balance functions");
    add_dsl(method1_cmd);
    method1_cmd->add_option("--name", name);
    method1_cmd->add_option("--k-max", k_max);
    method1_cmd->add_flag("!--no-report", report, "skip the balancedness report");

    auto* method2_cmd = app.add_subcommand("method2", "k-abelian complexity for one k via the block substitution");
    add_dsl(method2_cmd);
    method2_cmd->add_option("--name", name);
    method2_cmd->add_option("--k", k)->check(CLI::PositiveNumber);
    method2_cmd->add_flag("--abelian", abelian, "abelian complexity in the numeration of the substitution itself");
    method2_cmd->add_option("--n-max", n_max, "values written to the CSV");
    method2_cmd->add_option("--check", check, "compare with the oracle for n <= N");

    auto* run = app.add_subcommand("run", "run a job: --method1, --method2 or --oracle");
    add_dsl(run);
    run->add_option("--name", name);
    auto* g = run->add_option_group("method")->require_option(1);
    g->add_flag("--method1", m1);
    g->add_flag("--method2", m2);
    g->add_flag("--oracle", orc);
    run->add_option("--k", k)->check(CLI::PositiveNumber);
    run->add_option("--k-max", k_max);
    run->add_option("--n-max", n_max);
    run->add_option("--check", check);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force complexity table (CSV on stdout)");
    add_dsl(oracle_cmd);
    oracle_cmd->add_option("--k", ks, "one or more k")->expected(1, -1);
    oracle_cmd->add_option("--n-max", n_max);
    oracle_cmd->add_flag("--balance", balance, "add balance maxima columns");

    auto* certify = app.add_subcommand("certify", "inductive check of a balance DFAO");
    certify->add_option("delta", file, "DFAO over (i,j1,j2,k,n)")->required()->check(CLI::ExistingFile);
    add_dsl(certify);
    certify->add_option("--name", name, "numeration name used in the DFAO's tracks");
    certify->add_option("--mutations", mutations, "also check N random single-output mutations");

    auto* export_cmd = app.add_subcommand("export", "convert an artifact to another format");
    export_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);
    export_cmd->add_option("--format", format, "native, dot, csv or grid");
    export_cmd->add_option("--dsl", dsl, "numeration for csv/grid values");
    export_cmd->add_option("-a,--letter", seed_letter);
    export_cmd->add_option("--rows", rows);
    export_cmd->add_option("--cols", cols);
    export_cmd->add_option("-o,--output", out_file);

    auto* replay = app.add_subcommand("replay", "execute a script of definitions");
    replay->add_option("script", file)->required()->check(CLI::ExistingFile);

    auto* blocksub = app.add_subcommand("blocksub", "print the block substitution tau_k");
    add_dsl(blocksub);
    blocksub->add_option("--k", k)->check(CLI::PositiveNumber);
    blocksub->add_flag("--zero-based", zero_based);

    CLI11_PARSE(app, argc, argv);

    const auto a = static_cast<Letter>(seed_letter);
    try {
        if (*analyze) return cmd_analyze(dsl, a, k);
        if (*numeration) return cmd_numeration(dsl, a, name, count, values);
        if (*add_cmd) return cmd_adder(dsl, a, name);
        if (*conv) return cmd_convert(dsl, dsl2, a, name, name2, dfao_file);
        if (*method1_cmd) return cmd_method1(dsl, a, name, k_max, report);
        if (*method2_cmd) return cmd_method2(dsl, a, name, k, abelian, n_max, check);
        if (*run) {
            if (m1) return cmd_method1(dsl, a, name, k_max, true);
            if (m2) return cmd_method2(dsl, a, name, k, false, n_max, check);
            ks.assign(1, k);
            return cmd_oracle(dsl, a, ks, n_max, true);
        }
        if (*oracle_cmd) return cmd_oracle(dsl, a, ks, n_max, balance);
        if (*certify) return cmd_certify(file, dsl, a, name, mutations);
        if (*export_cmd) return cmd_export(file, format, dsl, a, rows, cols, out_file);
        if (*replay) return cmd_replay(file);
        if (*blocksub) return cmd_blocksub(dsl, a, k, zero_based);
    } catch (const Error& e) {
        return diagnose(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
