#pragma once

#include "kabel/poly.hpp"
#include "kabel/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kabel {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

/// Ordered finite alphabet. Letter values are the order indices 0..n-1.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);
    static Alphabet digits(std::size_t n);

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbol(Letter a) const { return symbols_.at(a); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    Letter index_of(std::string_view symbol) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

class Substitution {
public:
    Substitution() = default;
    Substitution(Alphabet alphabet, std::vector<Word> images);

    /// Slash separated images over digit letters, e.g. "01/2/0". When the
    /// alphabet has more than ten letters the letters inside one image are
    /// comma separated ("0,1/2/...").
    static Substitution parse(std::string_view dsl);
    std::string to_dsl() const;

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return images_.size(); }
    const Word& image(Letter a) const { return images_.at(a); }
    const std::vector<Word>& images() const { return images_; }
    std::size_t max_image_length() const;

    Word apply(const Word& u) const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    Alphabet alphabet_;
    std::vector<Word> images_;
};

struct ParikhVector {
    std::vector<std::int64_t> counts;
    std::int64_t total() const;
    friend bool operator==(const ParikhVector&, const ParikhVector&) = default;
};

using IntMatrix = std::vector<std::vector<Integer>>;

struct IncidenceData {
    /// matrix[i][j] = |τ(a_i)|_{a_j}. Parikh vectors are row vectors:
    /// Ψ(τ(u)) = Ψ(u) · matrix.
    IntMatrix matrix;
    IntPoly char_poly;
};

/// Throws NotProlongable when τ(a) does not start with a, or when the
/// iterates stop growing before reaching length n.
Word fixed_point_prefix(const Substitution& s, Letter a, std::size_t n);
bool is_prolongable(const Substitution& s, Letter a);

ParikhVector parikh(const Word& u, std::size_t alphabet_size);
/// Overlapping occurrences of w in u.
std::size_t occurrences(const Word& u, const Word& w);

IncidenceData incidence(const Substitution& s);
bool is_primitive(const Substitution& s);

Word word_from_string(std::string_view digits);
std::string word_to_string(const Word& w, std::size_t alphabet_size = 10);

} // namespace kabel
