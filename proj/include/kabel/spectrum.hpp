#pragma once

#include "kabel/poly.hpp"
#include "kabel/rational.hpp"

#include <complex>
#include <string>
#include <vector>

namespace kabel {

enum class SpectralTag { Pisot, UltimatelyPisot, NotPisot };

struct SpectralClass {
    SpectralTag tag = SpectralTag::NotPisot;
    int shift = 0;          ///< m in X^m · Q
    IntPoly pisot_min_poly; ///< Q (set even when the tag is NotPisot)
    Rational theta_lo, theta_hi;
    long double theta = 0;  ///< midpoint of the bracket

    bool ultimately_pisot() const { return tag != SpectralTag::NotPisot; }
    std::string describe() const;
};

/// Approximate complex roots with validated inclusion radii.
struct RootEnclosure {
    std::complex<long double> center;
    long double radius;
};

/// Roots of a squarefree integer polynomial with pairwise disjoint inclusion
/// disks. Throws IrreducibilityUndecided when the disks cannot be separated.
std::vector<RootEnclosure> isolate_roots(const IntPoly& p);

/// Splits off X^m and checks the Pisot root pattern of the cofactor. The
/// pattern (one real root above 1, the others nonzero and strictly inside the
/// unit circle) already forces irreducibility: a monic integer factor avoiding
/// θ would have a nonzero integer constant term of modulus < 1.
SpectralClass classify_spectrum(const IntPoly& p);

} // namespace kabel
