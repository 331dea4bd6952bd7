#include "kabel/words.hpp"

#include "kabel/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kabel {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error(Errc::InvalidArgument, "empty alphabet");
    auto sorted = symbols_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::InvalidArgument, "duplicate alphabet symbol");
}

Alphabet Alphabet::digits(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(i));
    return Alphabet(std::move(v));
}

Letter Alphabet::index_of(std::string_view symbol) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == symbol) return static_cast<Letter>(i);
    throw Error(Errc::InvalidArgument, "unknown letter '" + std::string(symbol) + "'");
}

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
    if (images_.size() != alphabet_.size())
        throw Error(Errc::InvalidArgument, "one image per letter required");
    bool nonempty = false;
    for (const auto& w : images_) {
        nonempty |= !w.empty();
        for (Letter c : w)
            if (c >= alphabet_.size()) throw Error(Errc::InvalidArgument, "image letter outside the alphabet");
    }
    if (!nonempty) throw Error(Errc::InvalidArgument, "all images are empty");
}

Substitution Substitution::parse(std::string_view dsl) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : dsl) {
        if (ch == '/') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    const std::size_t n = fields.size();
    std::vector<Word> images;
    for (const auto& f : fields) {
        Word w;
        if (n > 10 || f.find(',') != std::string::npos) {
            std::stringstream ss(f);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
                    throw Error(Errc::ParseError, "bad letter '" + tok + "' in '" + std::string(dsl) + "'");
                w.push_back(static_cast<Letter>(std::stoul(tok)));
            }
        } else {
            for (char ch : f) {
                if (ch < '0' || ch > '9')
                    throw Error(Errc::ParseError, "bad character in '" + std::string(dsl) + "'");
                w.push_back(static_cast<Letter>(ch - '0'));
            }
        }
        for (Letter c : w)
            if (c >= n)
                throw Error(Errc::ParseError, "letter " + std::to_string(c) + " outside alphabet of size " +
                                                  std::to_string(n));
        images.push_back(std::move(w));
    }
    return Substitution(Alphabet::digits(n), std::move(images));
}

std::string Substitution::to_dsl() const {
    std::string out;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i) out += '/';
        out += word_to_string(images_[i], images_.size());
    }
    return out;
}

std::size_t Substitution::max_image_length() const {
    std::size_t m = 0;
    for (const auto& w : images_) m = std::max(m, w.size());
    return m;
}

Word Substitution::apply(const Word& u) const {
    Word r;
    for (Letter c : u) r.insert(r.end(), images_[c].begin(), images_[c].end());
    return r;
}

std::int64_t ParikhVector::total() const { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

bool is_prolongable(const Substitution& s, Letter a) {
    const Word& img = s.image(a);
    if (img.empty() || img[0] != a) return false;
    // τ^{n+1}(a) = τ^n(a)·τ^n(u); the tail dies out within |A| steps when it dies at all.
    Word tail(img.begin() + 1, img.end());
    for (std::size_t n = 0; n <= s.size() + 1; ++n) {
        if (tail.empty()) return false;
        tail = s.apply(tail);
    }
    return true;
}

Word fixed_point_prefix(const Substitution& s, Letter a, std::size_t n) {
    const Word& img = s.image(a);
    if (img.empty() || img[0] != a)
        throw Error(Errc::NotProlongable, "image of letter " + std::to_string(a) + " does not start with it");
    Word x{a};
    x.reserve(n + s.max_image_length());
    std::size_t next = 0;
    while (x.size() < n) {
        if (next >= x.size())
            throw Error(Errc::NotProlongable, "iterates stabilize at length " + std::to_string(x.size()));
        const Word& w = s.image(x[next]);
        x.insert(x.end(), w.begin() + (next == 0 ? 1 : 0), w.end());
        ++next;
    }
    x.resize(n);
    return x;
}

ParikhVector parikh(const Word& u, std::size_t alphabet_size) {
    ParikhVector p;
    p.counts.assign(alphabet_size, 0);
    for (Letter c : u) ++p.counts.at(c);
    return p;
}

std::size_t occurrences(const Word& u, const Word& w) {
    if (w.size() > u.size()) return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + w.size() <= u.size(); ++i)
        if (std::equal(w.begin(), w.end(), u.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
    return count;
}

IncidenceData incidence(const Substitution& s) {
    const std::size_t n = s.size();
    IncidenceData d;
    d.matrix.assign(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (Letter c : s.image(static_cast<Letter>(i))) d.matrix[i][c] += 1;
    d.char_poly = characteristic_polynomial(d.matrix);
    return d;
}

bool is_primitive(const Substitution& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (Letter c : s.image(static_cast<Letter>(i))) m[i][c] = 1;
    auto p = m;
    const std::size_t bound = (n - 1) * n + 1;
    for (std::size_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (auto& row : p)
            for (char v : row) positive &= v != 0;
        if (positive) return true;
        std::vector<std::vector<char>> q(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (p[i][l])
                    for (std::size_t j = 0; j < n; ++j) q[i][j] |= m[l][j];
        p = std::move(q);
    }
    return false;
}

Word word_from_string(std::string_view digits) {
    Word w;
    for (char ch : digits) {
        if (ch < '0' || ch > '9') throw Error(Errc::ParseError, "expected digits: '" + std::string(digits) + "'");
        w.push_back(static_cast<Letter>(ch - '0'));
    }
    return w;
}

std::string word_to_string(const Word& w, std::size_t alphabet_size) {
    std::string out;
    const bool wide = alphabet_size > 10;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (wide) {
            if (i) out += ',';
            out += std::to_string(w[i]);
        } else {
            out += static_cast<char>('0' + w[i]);
        }
    }
    return out;
}

} // namespace kabel
