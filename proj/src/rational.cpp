#include "kabel/rational.hpp"

#include "kabel/error.hpp"

namespace kabel {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::NotProlongable: return "NotProlongable";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::IrreducibilityUndecided: return "IrreducibilityUndecided";
    case Errc::WindowTooLong: return "WindowTooLong";
    case Errc::NotAnEigenpair: return "NotAnEigenpair";
    case Errc::InvalidRepresentation: return "InvalidRepresentation";
    case Errc::NotUltimatelyPisot: return "NotUltimatelyPisot";
    case Errc::RootMismatch: return "RootMismatch";
    case Errc::StateBudgetExceeded: return "StateBudgetExceeded";
    case Errc::UnknownRelation: return "UnknownRelation";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::MixedNumerationWithoutConverter: return "MixedNumerationWithoutConverter";
    case Errc::TrackMismatch: return "TrackMismatch";
    case Errc::ValueNotInRange: return "ValueNotInRange";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::PrefixTooShort: return "PrefixTooShort";
    case Errc::UnknownFormat: return "UnknownFormat";
    case Errc::Tau2NotUltimatelyPisot: return "Tau2NotUltimatelyPisot";
    }
    return "Unknown";
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error(Errc::ParseError, "empty rational");
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den)) throw Error(Errc::ParseError, "bad rational '" + s + "'");
    Integer n(num), d(den);
    if (d == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

long long to_ll(const Integer& z) {
    if (!z.fits_slong_p()) throw Error(Errc::CapExceeded, "integer does not fit in 64 bits");
    return z.get_si();
}

Integer common_denominator(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    return l;
}

} // namespace kabel
