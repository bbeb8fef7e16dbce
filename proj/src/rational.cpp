#include "thetachar/rational.hpp"

namespace thetachar {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::TExpMismatch: return "TExpMismatch";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::UnsupportedType: return "UnsupportedType";
    case Errc::ZeroRoot: return "ZeroRoot";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::NotInDualLattice: return "NotInDualLattice";
    case Errc::InvalidU: return "InvalidU";
    case Errc::CriticalLevel: return "CriticalLevel";
    case Errc::SquareRootNotSeries: return "SquareRootNotSeries";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::NonIntegerFusion: return "NonIntegerFusion";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::UnknownSuite: return "UnknownSuite";
    }
    return "Error";
}

long common_denominator(const std::vector<Rat>& v) {
    long l = 1;
    for (const auto& r : v) {
        if (!r.get_den().fits_slong_p()) fail(Errc::InvalidInput, "denominator overflow");
        l = lcm_long(l, r.get_den().get_si());
    }
    return l;
}

std::string to_string(const Rat& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

WVec operator+(const WVec& a, const WVec& b) {
    if (a.size() != b.size()) fail(Errc::InvalidInput, "vector size mismatch");
    WVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

WVec operator-(const WVec& a, const WVec& b) {
    if (a.size() != b.size()) fail(Errc::InvalidInput, "vector size mismatch");
    WVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

WVec operator*(const Rat& c, const WVec& a) {
    WVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

bool is_zero(const WVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

} // namespace thetachar
