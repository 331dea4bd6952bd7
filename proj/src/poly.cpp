#include "kabel/poly.hpp"

#include "kabel/error.hpp"

#include <sstream>

namespace kabel {

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
    for (long long v : coeffs) c_.emplace_back(static_cast<long>(v));
    trim();
}

IntPoly IntPoly::monomial(int degree, Integer c) {
    std::vector<Integer> v(static_cast<std::size_t>(degree) + 1, Integer(0));
    v.back() = std::move(c);
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return c_[static_cast<std::size_t>(i)];
}

Rational IntPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

long double IntPoly::eval(long double x) const {
    long double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + static_cast<long double>(it->get_d());
    return acc;
}

IntPoly IntPoly::derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(d));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(r));
}

int IntPoly::zero_multiplicity() const {
    int m = 0;
    while (m < static_cast<int>(c_.size()) && c_[static_cast<std::size_t>(m)] == 0) ++m;
    return m;
}

IntPoly IntPoly::shift_down(int m) const {
    if (m > static_cast<int>(c_.size())) return {};
    return IntPoly(std::vector<Integer>(c_.begin() + m, c_.end()));
}

std::string IntPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i > 0) {
            os << "X";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::string IntPoly::to_coeff_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? " " : "") << c_[i].get_str();
    return os.str();
}

namespace {

using QPoly = std::vector<Rational>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const IntPoly& p) {
    QPoly q;
    for (const auto& c : p.coeffs()) q.emplace_back(c);
    return q;
}

QPoly qrem(QPoly a, const QPoly& b) {
    qtrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        qtrim(a);
    }
    return a;
}

} // namespace

bool divide_exact(const IntPoly& num, const IntPoly& monic_den, IntPoly& quotient) {
    if (!monic_den.is_monic()) throw Error(Errc::InvalidArgument, "divisor must be monic");
    std::vector<Integer> a = num.coeffs();
    const auto& b = monic_den.coeffs();
    if (a.size() < b.size()) {
        if (num.is_zero()) {
            quotient = {};
            return true;
        }
        return false;
    }
    std::vector<Integer> q(a.size() - b.size() + 1, Integer(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer f = a[k + b.size() - 1];
        q[k] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= f * b[i];
    }
    for (const auto& r : a)
        if (r != 0) return false;
    quotient = IntPoly(std::move(q));
    return true;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    QPoly x = to_q(a), y = to_q(b);
    qtrim(x);
    qtrim(y);
    while (!y.empty()) {
        QPoly r = qrem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (x.empty()) return {};
    // primitive integer multiple with positive leading coefficient
    Integer den = common_denominator(x);
    std::vector<Integer> ints;
    for (auto& c : x) {
        Rational t = c * Rational(den);
        ints.push_back(t.get_num());
    }
    Integer g = 0;
    for (auto& c : ints) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (ints.back() < 0) g = -g;
    for (auto& c : ints) c /= g;
    return IntPoly(std::move(ints));
}

IntPoly lcm(const IntPoly& a, const IntPoly& b) {
    IntPoly g = gcd(a, b);
    IntPoly q;
    if (!g.is_monic() || !divide_exact(a * b, g, q))
        throw Error(Errc::InvalidArgument, "lcm expects monic integer polynomials");
    return q;
}

IntPoly characteristic_polynomial(const std::vector<std::vector<Integer>>& m) {
    // Faddeev–LeVerrier: all divisions are exact over the integers.
    const std::size_t n = m.size();
    std::vector<Integer> c(n + 1, Integer(0));
    c[n] = 1;
    std::vector<std::vector<Integer>> mk(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Integer>> next(n, std::vector<Integer>(n, Integer(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                if (mk[i][l] == 0 && m[i][l] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) next[i][j] += m[i][l] * mk[l][j];
            }
        for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        mk = std::move(next);
        Integer tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += m[i][l] * mk[l][i];
        c[n - k] = -tr / static_cast<unsigned long>(k);
    }
    return IntPoly(std::move(c));
}

} // namespace kabel
