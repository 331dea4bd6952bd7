#pragma once

#include "kabel/rational.hpp"

#include <string>
#include <vector>

namespace kabel {

/// Polynomial with integer coefficients, stored low degree first.
/// The zero polynomial has no coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    IntPoly(std::initializer_list<long long> coeffs);

    static IntPoly monomial(int degree, Integer c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Integer& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    Integer coeff(int i) const;
    const std::vector<Integer>& coeffs() const { return c_; }
    const Integer& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Rational eval(const Rational& x) const;
    long double eval(long double x) const;
    IntPoly derivative() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    /// Multiplicity of the root 0.
    int zero_multiplicity() const;
    /// Divides by X^m.
    IntPoly shift_down(int m) const;

    /// Pretty form, e.g. "X^3 - X^2 - 1".
    std::string to_string() const;
    /// Space separated coefficients, low degree first.
    std::string to_coeff_string() const;

private:
    void trim();
    std::vector<Integer> c_;
};

/// Exact division by a monic divisor; returns false when the remainder is
/// nonzero.
bool divide_exact(const IntPoly& num, const IntPoly& monic_den, IntPoly& quotient);

/// Monic gcd over Q, scaled back to a primitive integer polynomial.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Least common multiple of two monic polynomials.
IntPoly lcm(const IntPoly& a, const IntPoly& b);

/// det(X·I − M) of a square integer matrix.
IntPoly characteristic_polynomial(const std::vector<std::vector<Integer>>& m);

} // namespace kabel
