#include "kabel/spectrum.hpp"

#include "kabel/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kabel {

namespace {

using cld = std::complex<long double>;

cld horner(const std::vector<long double>& c, cld z) {
    cld r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * z + c[i];
    return r;
}

// Bound on the rounding error of horner() at |z|.
long double horner_error(const std::vector<long double>& c, long double az) {
    long double s = 0, p = 1;
    for (long double ci : c) {
        s += std::fabs(ci) * p;
        p *= az;
    }
    return 8 * static_cast<long double>(c.size()) * std::numeric_limits<long double>::epsilon() * s;
}

} // namespace

std::vector<RootEnclosure> isolate_roots(const IntPoly& p) {
    const int n = p.degree();
    if (n < 1) return {};
    std::vector<long double> c;
    for (const auto& x : p.coeffs()) c.push_back(static_cast<long double>(x.get_d()));
    const long double lead = c.back();
    std::vector<long double> d(c.size() - 1);
    for (int i = 1; i <= n; ++i) d[i - 1] = c[i] * i;

    // Cauchy bound for the initial circle.
    long double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::fabs(c[i] / lead));
    bound += 1;
    std::vector<cld> z(n);
    for (int i = 0; i < n; ++i)
        z[i] = std::polar(bound * 0.5L, 2.0L * static_cast<long double>(M_PI) * (i + 0.25L) / n);

    // Aberth–Ehrlich iteration.
    for (int iter = 0; iter < 500; ++iter) {
        long double change = 0;
        for (int i = 0; i < n; ++i) {
            cld pv = horner(c, z[i]);
            cld dv = horner(d, z[i]);
            if (std::abs(pv) == 0) continue;
            cld ratio = pv / dv;
            cld s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0L / (z[i] - z[j]);
            cld w = ratio / (1.0L - ratio * s);
            z[i] -= w;
            change = std::max(change, std::abs(w) / std::max(1.0L, std::abs(z[i])));
        }
        if (change < 1e-17L) break;
    }

    std::vector<RootEnclosure> out(n);
    for (int i = 0; i < n; ++i) {
        cld prod = lead;
        for (int j = 0; j < n; ++j)
            if (j != i) prod *= z[i] - z[j];
        long double num = std::abs(horner(c, z[i])) + horner_error(c, std::abs(z[i]));
        long double r = n * num / std::abs(prod);
        out[i] = {z[i], r * (1 + 1e-6L) + 1e-30L};
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(out[i].center - out[j].center) <= out[i].radius + out[j].radius)
                throw Error(Errc::IrreducibilityUndecided, "root inclusion disks overlap for " + p.to_string());
    return out;
}

std::string SpectralClass::describe() const {
    std::ostringstream os;
    switch (tag) {
    case SpectralTag::Pisot: os << "Pisot"; break;
    case SpectralTag::UltimatelyPisot: os << "UltimatelyPisot(" << shift << ")"; break;
    case SpectralTag::NotPisot: os << "NotPisot"; break;
    }
    if (tag != SpectralTag::NotPisot) {
        os.precision(12);
        os << " theta=" << static_cast<double>(theta) << " minpoly=" << pisot_min_poly.to_string();
    }
    return os.str();
}

SpectralClass classify_spectrum(const IntPoly& p) {
    if (!p.is_monic()) throw Error(Errc::InvalidArgument, "polynomial must be monic: " + p.to_string());
    SpectralClass sc;
    sc.shift = p.zero_multiplicity();
    const IntPoly q = p.shift_down(sc.shift);
    sc.pisot_min_poly = q;
    if (q.degree() < 1) return sc;
    // Repeated roots rule out the pattern (and the disks could not separate them).
    if (gcd(q, q.derivative()).degree() > 0) return sc;

    const auto roots = isolate_roots(q);
    int outside = -1;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        const long double m = std::abs(r.center);
        if (m - r.radius > 1) {
            if (outside >= 0) return sc;
            outside = static_cast<int>(i);
        } else if (m + r.radius < 1) {
            if (m - r.radius <= 0) return sc; // might contain 0
        } else {
            // Straddles the unit circle; a root of modulus exactly 1 is not allowed,
            // and a disk that cannot be resolved means we cannot decide.
            if (r.radius > 1e-9L)
                throw Error(Errc::IrreducibilityUndecided, "root too close to the unit circle in " + q.to_string());
            return sc;
        }
    }
    if (outside < 0) return sc;
    const auto& t = roots[static_cast<std::size_t>(outside)];
    // θ must be real and positive: the disk must meet the positive real axis and
    // be disjoint from its conjugate image (otherwise complex roots pair up).
    if (std::fabs(t.center.imag()) > t.radius || t.center.real() <= 1) return sc;

    // Refine θ by exact bisection on the real interval of the disk.
    auto to_rat = [](long double x) {
        Rational r;
        r = static_cast<double>(x);
        return r;
    };
    Rational lo = to_rat(t.center.real() - t.radius - 1e-12L);
    Rational hi = to_rat(t.center.real() + t.radius + 1e-12L);
    if (lo < 1) lo = 1;
    int slo = sgn(q.eval(lo));
    int shi = sgn(q.eval(hi));
    if (slo == 0) {
        hi = lo;
    } else if (shi == 0) {
        lo = hi;
    } else {
        if (slo == shi) throw Error(Errc::IrreducibilityUndecided, "no sign change around the dominant root");
        const Rational eps = Rational(1, 1) / Rational(Integer(1) << 200);
        while (hi - lo > eps) {
            Rational mid = (lo + hi) / 2;
            mid.canonicalize();
            int sm = sgn(q.eval(mid));
            if (sm == 0) {
                lo = hi = mid;
                break;
            }
            if (sm == slo) lo = mid;
            else hi = mid;
        }
    }
    sc.theta_lo = lo;
    sc.theta_hi = hi;
    sc.theta = static_cast<long double>(Rational((lo + hi) / 2).get_d());
    sc.tag = sc.shift == 0 ? SpectralTag::Pisot : SpectralTag::UltimatelyPisot;
    return sc;
}

} // namespace kabel
