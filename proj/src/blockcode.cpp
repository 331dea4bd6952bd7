#include "kabel/blockcode.hpp"

#include "kabel/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kabel {

Letter BlockCoding::letter_of(const Word& block) const {
    auto it = std::find(theta.begin(), theta.end(), block);
    if (it == theta.end()) throw Error(Errc::InvalidArgument, "word is not a block of this coding");
    return static_cast<Letter>(it - theta.begin());
}

SlidingBlock sliding_block(const Word& prefix, std::size_t k) {
    if (k == 0) throw Error(Errc::InvalidArgument, "window length must be positive");
    if (k > prefix.size()) throw Error(Errc::WindowTooLong, "window longer than the prefix");
    SlidingBlock r;
    r.coding.k = k;
    std::map<Word, Letter> ids;
    for (std::size_t i = 0; i + k <= prefix.size(); ++i) {
        Word w(prefix.begin() + static_cast<long>(i), prefix.begin() + static_cast<long>(i + k));
        auto it = ids.find(w);
        if (it == ids.end()) {
            it = ids.emplace(w, static_cast<Letter>(r.coding.theta.size())).first;
            r.coding.pi.push_back(w[0]);
            r.coding.theta.push_back(std::move(w));
        }
        r.coded.push_back(it->second);
    }
    return r;
}

BlockSubstitution block_substitution(const Substitution& s, Letter a, std::size_t k, const BlockOptions& opt) {
    if (k == 0) throw Error(Errc::InvalidArgument, "window length must be positive");
    if (!is_prolongable(s, a)) throw Error(Errc::NotProlongable, "substitution is not prolongable on the seed");
    if (!is_primitive(s)) throw Error(Errc::NotPrimitive, "substitution is not primitive");

    // Grow the prefix until one more application of τ finds no new factor.
    Word u = fixed_point_prefix(s, a, std::max<std::size_t>(k + 1, 16));
    std::set<Word> seen;
    auto collect = [&](const Word& w) {
        std::size_t added = 0;
        for (std::size_t i = 0; i + k <= w.size(); ++i)
            added += seen.emplace(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + k)).second;
        return added;
    };
    collect(u);
    for (;;) {
        Word next = s.apply(u);
        if (next.size() > opt.max_prefix) throw Error(Errc::CapExceeded, "factor discovery exceeded the prefix cap");
        const bool grew = collect(next) != 0;
        u = std::move(next);
        if (!grew) break;
    }

    BlockSubstitution r;
    r.base = s;
    r.seed = a;
    r.coding = sliding_block(u, k).coding;
    std::vector<Word> images;
    for (const auto& block : r.coding.theta) {
        const Word img = s.apply(block);
        const std::size_t count = s.image(block[0]).size();
        Word out;
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(r.coding.letter_of(Word(img.begin() + static_cast<long>(i), img.begin() + static_cast<long>(i + k))));
        images.push_back(std::move(out));
    }
    auto letters = Alphabet::digits(images.size());
    r.tau_k = Substitution(std::move(letters), std::move(images));

    const std::size_t n = opt.verify_length;
    auto expected = sliding_block(fixed_point_prefix(s, a, n + k - 1), k).coded;
    auto got = fixed_point_prefix(r.tau_k, 0, n);
    if (got != expected) throw Error(Errc::InvalidArgument, "block substitution does not generate the sliding-block code");
    return r;
}

std::string to_dsl_one_based(const Substitution& s) {
    std::string out;
    for (std::size_t a = 0; a < s.size(); ++a) {
        if (a) out += '/';
        const Word& img = s.image(static_cast<Letter>(a));
        for (std::size_t i = 0; i < img.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(img[i] + 1);
        }
    }
    return out;
}

namespace {

std::vector<Rational> apply_matrix(const IntMatrix& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += Rational(m[i][j]) * v[j];
    return out;
}

} // namespace

std::vector<Rational> lift_eigenvector(const BlockSubstitution& b, const std::vector<Rational>& v, const Rational& alpha) {
    const auto m = incidence(b.base).matrix;
    if (v.size() != m.size()) throw Error(Errc::NotAnEigenpair, "vector size differs from the alphabet");
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; }))
        throw Error(Errc::NotAnEigenpair, "zero vector");
    auto mv = apply_matrix(m, v);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (mv[i] != alpha * v[i]) throw Error(Errc::NotAnEigenpair, "M·V differs from α·V");
    std::vector<Rational> lifted;
    for (auto p : b.coding.pi) lifted.push_back(v[p]);
    auto mk = apply_matrix(incidence(b.tau_k).matrix, lifted);
    for (std::size_t i = 0; i < lifted.size(); ++i)
        if (mk[i] != alpha * lifted[i]) throw Error(Errc::NotAnEigenpair, "lifted vector is not an eigenvector");
    return lifted;
}

CharPolyRelation char_poly_relation(const Substitution& s, Letter a, std::size_t k) {
    CharPolyRelation r;
    r.p_tau = incidence(s).char_poly;
    r.p_tau2 = incidence(block_substitution(s, a, 2).tau_k).char_poly;
    r.p_tauk = k == 2 ? r.p_tau2 : incidence(block_substitution(s, a, k).tau_k).char_poly;
    for (int m = 0; m <= r.p_tauk.degree(); ++m)
        if (IntPoly::monomial(m) * r.p_tau2 == r.p_tauk) {
            r.shift = m;
            break;
        }
    IntPoly q;
    r.tau_divides = divide_exact(r.p_tauk, r.p_tau, q);
    return r;
}

} // namespace kabel
