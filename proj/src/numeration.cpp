#include "kabel/numeration.hpp"

#include "kabel/automaton.hpp"
#include "kabel/error.hpp"

#include <limits>

namespace kabel {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max() / 4;
constexpr std::size_t kMaxLevels = 4096;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return (a >= kSaturated - b) ? kSaturated : a + b; }

} // namespace

Numeration Numeration::dumont_thomas(const Substitution& s, Letter seed, std::string name) {
    if (!is_prolongable(s, seed))
        throw Error(Errc::NotProlongable, "substitution " + s.to_dsl() + " is not prolongable on " +
                                              std::to_string(seed));
    Numeration n;
    n.name_ = std::move(name);
    n.subst_ = s;
    n.seed_ = seed;
    n.radix_ = static_cast<unsigned>(s.max_image_length());
    n.build_levels();
    return n;
}

Numeration Numeration::integer_base(unsigned base, std::string name) {
    if (base < 2) throw Error(Errc::InvalidArgument, "integer base must be at least 2");
    Numeration n = dumont_thomas(Substitution(Alphabet::digits(1), {Word(base, 0)}), 0, std::move(name));
    n.integer_base_ = true;
    return n;
}

void Numeration::build_levels() {
    const std::size_t k = subst_.size();
    levels_.assign(1, std::vector<std::uint64_t>(k, 1));
    while (levels_.size() < kMaxLevels && levels_.back()[seed_] < kSaturated) {
        std::vector<std::uint64_t> nxt(k, 0);
        for (std::size_t b = 0; b < k; ++b)
            for (Letter c : subst_.image(static_cast<Letter>(b))) nxt[b] = sat_add(nxt[b], levels_.back()[c]);
        levels_.push_back(std::move(nxt));
    }
}

int Numeration::next(Letter state, unsigned digit) const {
    const Word& img = subst_.image(state);
    return digit < img.size() ? img[digit] : -1;
}

bool Numeration::valid(const Digits& u) const {
    int q = seed_;
    for (auto d : u) {
        q = next(static_cast<Letter>(q), d);
        if (q < 0) return false;
    }
    return true;
}

Digits Numeration::rep(std::uint64_t n) const {
    std::size_t len = 0;
    while (len < levels_.size() && levels_[len][seed_] <= n) ++len;
    if (len == levels_.size()) throw Error(Errc::CapExceeded, "value " + std::to_string(n) + " too large for " + name_);
    Digits out;
    out.reserve(len);
    Letter q = seed_;
    for (std::size_t l = len; l-- > 0;) {
        const Word& img = subst_.image(q);
        unsigned d = 0;
        while (true) {
            std::uint64_t c = levels_[l][img[d]];
            if (n < c) break;
            n -= c;
            ++d;
        }
        out.push_back(static_cast<std::uint16_t>(d));
        q = img[d];
    }
    return out;
}

std::uint64_t Numeration::val(const Digits& u) const {
    if (u.size() > levels_.size())
        throw Error(Errc::CapExceeded, "representation too long for " + name_);
    std::uint64_t v = 0;
    Letter q = seed_;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const std::size_t l = u.size() - 1 - i;
        const Word& img = subst_.image(q);
        if (u[i] >= img.size())
            throw Error(Errc::InvalidRepresentation, "'" + to_string(u) + "' is not valid in " + name_);
        for (unsigned d = 0; d < u[i]; ++d) v = sat_add(v, levels_[l][img[d]]);
        q = img[u[i]];
    }
    if (v >= kSaturated) throw Error(Errc::CapExceeded, "value overflow in " + name_);
    return v;
}

Digits Numeration::padded_rep(std::uint64_t n, std::size_t length) const {
    Digits r = rep(n);
    if (r.size() > length) throw Error(Errc::InvalidArgument, "padding shorter than representation");
    Digits out(length - r.size(), 0);
    out.insert(out.end(), r.begin(), r.end());
    return out;
}

Automaton Numeration::validity_dfa() const {
    Automaton a(Tracks{{name_, radix_}});
    const std::size_t k = subst_.size();
    for (std::size_t q = 0; q < k; ++q) a.add_state(1);
    const std::uint32_t dead = a.add_state(0);
    for (std::size_t q = 0; q < k; ++q)
        for (unsigned d = 0; d < radix_; ++d) {
            int t = next(static_cast<Letter>(q), d);
            a.set_transition(static_cast<std::uint32_t>(q), d, t < 0 ? dead : static_cast<std::uint32_t>(t));
        }
    for (unsigned d = 0; d < radix_; ++d) a.set_transition(dead, d, dead);
    a.set_initial(seed_);
    return minimize(a);
}

Automaton Numeration::word_dfao() const {
    Automaton a = addressing(subst_, seed_);
    Automaton b(Tracks{{name_, radix_}});
    for (std::uint32_t q = 0; q < a.size(); ++q) b.add_state(a.output(q));
    for (std::uint32_t q = 0; q < a.size(); ++q)
        for (unsigned d = 0; d < radix_; ++d) b.set_transition(q, d, a.next(q, d));
    b.set_initial(a.initial());
    return minimize(b);
}

std::string Numeration::to_string(const Digits& u) const {
    if (u.empty()) return "0";
    std::string s;
    const bool wide = radix_ > 10;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (wide) {
            if (i) s += ',';
            s += std::to_string(u[i]);
        } else {
            s += static_cast<char>('0' + u[i]);
        }
    }
    return s;
}

Digits Numeration::parse_digits(const std::string& s) const {
    Digits d;
    if (s == "0" || s.empty()) return d;
    auto push = [&](unsigned long v) {
        if (v >= radix_) throw Error(Errc::InvalidRepresentation, "digit out of range in '" + s + "'");
        d.push_back(static_cast<std::uint16_t>(v));
    };
    if (s.find(',') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t e = s.find(',', pos);
            if (e == std::string::npos) e = s.size();
            const std::string tok = s.substr(pos, e - pos);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw Error(Errc::ParseError, "bad digit list '" + s + "'");
            push(std::stoul(tok));
            pos = e + 1;
        }
    } else {
        for (char c : s) {
            if (c < '0' || c > '9') throw Error(Errc::ParseError, "bad digit string '" + s + "'");
            push(static_cast<unsigned long>(c - '0'));
        }
    }
    return d;
}

Automaton addressing(const Substitution& s, Letter a) {
    if (!is_prolongable(s, a))
        throw Error(Errc::NotProlongable, "substitution " + s.to_dsl() + " is not prolongable on " + std::to_string(a));
    const unsigned radix = static_cast<unsigned>(s.max_image_length());
    Automaton m(Tracks{{"addr", radix}});
    const std::size_t k = s.size();
    for (std::size_t q = 0; q < k; ++q) m.add_state(static_cast<std::int64_t>(q));
    const std::uint32_t sink = m.add_state(-1);
    for (std::size_t q = 0; q < k; ++q)
        for (unsigned d = 0; d < radix; ++d) {
            const Word& img = s.image(static_cast<Letter>(q));
            m.set_transition(static_cast<std::uint32_t>(q), d, d < img.size() ? img[d] : sink);
        }
    for (unsigned d = 0; d < radix; ++d) m.set_transition(sink, d, sink);
    m.set_initial(a);
    return m;
}

} // namespace kabel
