#include "kabel/io.hpp"

#include "kabel/error.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kabel {

namespace {

void write_tracks(std::ostream& os, const Tracks& tracks) {
    os << "tracks " << tracks.size() << '\n';
    for (const auto& t : tracks) {
        os << "alphabet 0.." << t.radix - 1 << '\n';
        if (!t.numeration.empty()) os << "numeration " << t.numeration << '\n';
    }
}

std::string tuple_text(const std::vector<unsigned>& digits) {
    std::string s = "(";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(digits[i]);
    }
    return s + ")";
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

class LineReader {
public:
    explicit LineReader(std::istream& is) : is_(is) {}

    // Next non-empty line split into words; false at end of input.
    bool next(std::vector<std::string>& words) {
        std::string line;
        while (std::getline(is_, line)) {
            ++number_;
            std::istringstream ss(line);
            words.clear();
            for (std::string w; ss >> w;) words.push_back(w);
            if (!words.empty() && words[0][0] != '#') return true;
        }
        return false;
    }
    void push_back(std::vector<std::string> words) { pending_ = std::move(words); }
    bool take(std::vector<std::string>& words) {
        if (!pending_.empty()) {
            words = std::move(pending_);
            pending_.clear();
            return true;
        }
        return next(words);
    }
    std::size_t number() const { return number_; }

private:
    std::istream& is_;
    std::size_t number_ = 0;
    std::vector<std::string> pending_;
};

std::uint64_t parse_uint(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used != s.size()) bad(line, "bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        bad(line, "bad number '" + s + "'");
    }
}

std::int64_t parse_int(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        auto v = std::stoll(s, &used);
        if (used != s.size()) bad(line, "bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        bad(line, "bad number '" + s + "'");
    }
}

Tracks read_tracks(LineReader& in) {
    std::vector<std::string> w;
    if (!in.take(w) || w.size() != 2 || w[0] != "tracks") bad(in.number(), "expected 'tracks m'");
    const auto m = parse_uint(w[1], in.number());
    Tracks tracks;
    while (in.take(w)) {
        if (w[0] == "alphabet" && tracks.size() < m) {
            if (w.size() != 2 || w[1].rfind("0..", 0) != 0) bad(in.number(), "expected 'alphabet 0..d-1'");
            tracks.push_back(Track{"", static_cast<unsigned>(parse_uint(w[1].substr(3), in.number()) + 1)});
        } else if (w[0] == "numeration" && !tracks.empty() && w.size() == 2) {
            tracks.back().numeration = w[1];
        } else {
            in.push_back(std::move(w));
            break;
        }
    }
    if (tracks.size() != m) bad(in.number(), "expected " + std::to_string(m) + " alphabet lines");
    return tracks;
}

std::vector<unsigned> parse_tuple(const std::string& s, std::size_t line) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') bad(line, "expected a digit tuple");
    std::vector<unsigned> out;
    std::string inner = s.substr(1, s.size() - 2);
    if (inner.empty()) return out;
    std::istringstream ss(inner);
    for (std::string d; std::getline(ss, d, ',');) out.push_back(static_cast<unsigned>(parse_uint(d, line)));
    return out;
}

std::size_t tuple_letter(const Tracks& tracks, const std::vector<unsigned>& digits, std::size_t line) {
    if (digits.size() != tracks.size()) bad(line, "tuple arity differs from the track count");
    std::size_t letter = 0;
    for (std::size_t t = 0; t < tracks.size(); ++t) {
        if (digits[t] >= tracks[t].radix) bad(line, "digit outside the alphabet");
        letter = letter * tracks[t].radix + digits[t];
    }
    return letter;
}

} // namespace

void write_automaton(std::ostream& os, const Automaton& a) {
    write_tracks(os, a.tracks());
    os << "initial " << a.initial() << '\n';
    const bool boolean = std::all_of(a.outputs().begin(), a.outputs().end(), [](std::int64_t v) { return v == 0 || v == 1; });
    for (std::uint32_t q = 0; q < a.size(); ++q) {
        os << "state " << q;
        if (boolean) {
            if (a.output(q)) os << " accepting";
        } else {
            os << " output " << a.output(q);
        }
        os << '\n';
    }
    for (std::uint32_t q = 0; q < a.size(); ++q)
        for (std::size_t l = 0; l < a.letters(); ++l)
            os << "trans " << q << ' ' << tuple_text(a.decode(l)) << " -> " << a.next(q, l) << '\n';
}

Automaton read_automaton(std::istream& is) {
    LineReader in(is);
    Automaton a(read_tracks(in));
    std::vector<std::string> w;
    std::uint32_t initial = 0;
    std::vector<std::vector<char>> seen;
    while (in.take(w)) {
        const auto line = in.number();
        if (w[0] == "initial" && w.size() == 2) {
            initial = static_cast<std::uint32_t>(parse_uint(w[1], line));
        } else if (w[0] == "state" && w.size() >= 2) {
            const auto id = parse_uint(w[1], line);
            if (id != a.size()) bad(line, "states must be listed in order");
            std::int64_t out = 0;
            for (std::size_t i = 2; i < w.size(); ++i) {
                if (w[i] == "accepting") {
                    out = 1;
                } else if (w[i] == "output" && i + 1 < w.size()) {
                    out = parse_int(w[++i], line);
                } else {
                    bad(line, "unexpected '" + w[i] + "'");
                }
            }
            a.add_state(out);
            seen.emplace_back(a.letters(), 0);
        } else if (w[0] == "trans" && w.size() == 5 && w[3] == "->") {
            const auto from = parse_uint(w[1], line), to = parse_uint(w[4], line);
            if (from >= a.size() || to >= a.size()) bad(line, "unknown state");
            const auto letter = tuple_letter(a.tracks(), parse_tuple(w[2], line), line);
            a.set_transition(static_cast<std::uint32_t>(from), letter, static_cast<std::uint32_t>(to));
            seen[from][letter] = 1;
        } else {
            bad(line, "unexpected '" + w[0] + "'");
        }
    }
    if (a.size() == 0) throw Error(Errc::ParseError, "automaton without states");
    if (initial >= a.size()) throw Error(Errc::ParseError, "initial state out of range");
    for (const auto& row : seen)
        if (std::find(row.begin(), row.end(), 0) != row.end())
            throw Error(Errc::ParseError, "automaton is not complete");
    a.set_initial(initial);
    return a;
}

void write_linrep(std::ostream& os, const LinRep& r) {
    write_tracks(os, r.tracks);
    Automaton shape(r.tracks);
    os << "dimension " << r.dim() << '\n';
    auto vec = [&](const char* name, const std::vector<Rational>& v) {
        os << name;
        for (const auto& x : v) os << ' ' << x.get_num().get_str() << '/' << x.get_den().get_str();
        os << '\n';
    };
    vec("lambda", r.lambda);
    vec("gamma", r.gamma);
    for (std::size_t l = 0; l < r.letters(); ++l) {
        os << "mu " << tuple_text(shape.decode(l)) << '\n';
        for (std::size_t i = 0; i < r.mu[l].rows.size(); ++i) {
            if (r.mu[l].rows[i].empty()) continue;
            os << "row " << i;
            for (const auto& [j, x] : r.mu[l].rows[i]) os << ' ' << j << ':' << x.get_num().get_str() << '/' << x.get_den().get_str();
            os << '\n';
        }
    }
}

LinRep read_linrep(std::istream& is) {
    LineReader in(is);
    LinRep r;
    r.tracks = read_tracks(in);
    std::vector<std::string> w;
    if (!in.take(w) || w.size() != 2 || w[0] != "dimension") bad(in.number(), "expected 'dimension d'");
    const auto d = parse_uint(w[1], in.number());
    auto vec = [&](const char* name) {
        if (!in.take(w) || w[0] != name || w.size() != d + 1) bad(in.number(), std::string("expected ") + name);
        std::vector<Rational> v;
        for (std::size_t i = 1; i < w.size(); ++i) v.push_back(parse_rational(w[i]));
        return v;
    };
    r.lambda = vec("lambda");
    r.gamma = vec("gamma");
    const std::size_t letters = letter_count(r.tracks);
    r.mu.assign(letters, SparseMatrix{std::vector<std::vector<std::pair<std::uint32_t, Rational>>>(d)});
    std::vector<char> seen(letters, 0);
    long current = -1;
    while (in.take(w)) {
        const auto line = in.number();
        if (w[0] == "mu" && w.size() == 2) {
            current = static_cast<long>(tuple_letter(r.tracks, parse_tuple(w[1], line), line));
            seen[static_cast<std::size_t>(current)] = 1;
        } else if (w[0] == "row" && w.size() >= 2 && current >= 0) {
            const auto i = parse_uint(w[1], line);
            if (i >= d) bad(line, "row index out of range");
            auto& row = r.mu[static_cast<std::size_t>(current)].rows[i];
            for (std::size_t e = 2; e < w.size(); ++e) {
                const auto colon = w[e].find(':');
                if (colon == std::string::npos) bad(line, "expected column:value");
                const auto j = parse_uint(w[e].substr(0, colon), line);
                if (j >= d) bad(line, "column index out of range");
                row.emplace_back(static_cast<std::uint32_t>(j), parse_rational(w[e].substr(colon + 1)));
            }
        } else {
            bad(line, "unexpected '" + w[0] + "'");
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw Error(Errc::ParseError, "missing mu block");
    return r;
}

void write_dot(std::ostream& os, const Automaton& a) {
    const bool boolean = std::all_of(a.outputs().begin(), a.outputs().end(), [](std::int64_t v) { return v == 0 || v == 1; });
    os << "digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n";
    for (std::uint32_t q = 0; q < a.size(); ++q) {
        os << "  q" << q << " [";
        if (boolean) {
            os << "label=\"" << q << "\", shape=" << (a.accepting(q) ? "doublecircle" : "circle");
        } else {
            os << "label=\"" << q << "/" << a.output(q) << "\", shape=circle";
        }
        os << "];\n";
    }
    os << "  start -> q" << a.initial() << ";\n";
    for (std::uint32_t q = 0; q < a.size(); ++q) {
        // Group parallel edges into one labelled edge.
        std::vector<std::pair<std::uint32_t, std::string>> edges;
        for (std::size_t l = 0; l < a.letters(); ++l) {
            const auto to = a.next(q, l);
            auto it = std::find_if(edges.begin(), edges.end(), [&](const auto& e) { return e.first == to; });
            const auto label = a.track_count() == 1 ? std::to_string(a.decode(l)[0]) : tuple_text(a.decode(l));
            if (it == edges.end()) {
                edges.emplace_back(to, label);
            } else {
                it->second += ", " + label;
            }
        }
        for (const auto& [to, label] : edges) os << "  q" << q << " -> q" << to << " [label=\"" << label << "\"];\n";
    }
    os << "}\n";
}

void write_grid(std::ostream& os, const std::vector<std::vector<std::int64_t>>& grid) {
    for (const auto& row : grid) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
        os << '\n';
    }
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::int64_t>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

Format parse_format(const std::string& name) {
    if (name == "native") return Format::Native;
    if (name == "dot") return Format::Dot;
    if (name == "csv") return Format::Csv;
    if (name == "grid") return Format::Grid;
    throw Error(Errc::UnknownFormat, "unknown format '" + name + "'");
}

void save_automaton(const std::string& path, const Automaton& a) {
    std::ofstream os(path);
    if (!os) throw Error(Errc::InvalidArgument, "cannot write " + path);
    write_automaton(os, a);
}

Automaton load_automaton(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(Errc::InvalidArgument, "cannot read " + path);
    return read_automaton(is);
}

void save_linrep(const std::string& path, const LinRep& r) {
    std::ofstream os(path);
    if (!os) throw Error(Errc::InvalidArgument, "cannot write " + path);
    write_linrep(os, r);
}

LinRep load_linrep(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(Errc::InvalidArgument, "cannot read " + path);
    return read_linrep(is);
}

} // namespace kabel
