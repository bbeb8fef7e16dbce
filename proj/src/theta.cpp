#include "thetachar/theta.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace thetachar {

namespace {

// f(m) = u m^2 / 2 + c m, the q-exponent of the m-th summand
Rat quad(long u, const Rat& c, const Rat& m) { return rat(u) * m * m / 2 + c * m; }

// largest element of offset + Z at most x
Rat lattice_floor(const Rat& x, const Rat& offset) {
    Rat t = x - offset;
    return rat(floor_int(t), Int(1)) + offset;
}

struct CacheKey {
    int kind;
    int rank;
    long u;
    std::vector<Rat> mu;
    Rat c;
    Rat order;

    bool operator<(const CacheKey& o) const {
        return std::tie(kind, rank, u, mu, c, order) <
               std::tie(o.kind, o.rank, o.u, o.mu, o.c, o.order);
    }
};

std::map<CacheKey, GradedSeries>& cache() {
    static std::map<CacheKey, GradedSeries> c;
    return c;
}
std::mutex cache_mutex;

// signed sum over the lattice offset + Z: coeff (-1)^n at m = offset + n,
// exponent f(m), weight m * mu
GradedSeries lattice_sum(int rank, long u, const WVec& mu, const Rat& c, const Rat& offset,
                         const Rat& order) {
    Rat mstar = -c / rat(u);
    Rat mlo = lattice_floor(mstar, offset);
    Rat mhi = mlo + 1;
    Rat fmin = std::min(quad(u, c, mlo), quad(u, c, mhi));
    Rat bound = fmin + order;

    GradedSeries out(rank, bound);
    auto emit = [&](const Rat& m) {
        Rat n = m - offset; // integer
        int sign = is_integer(n / 2) ? +1 : -1;
        WVec w(rank, Rat(0));
        for (int i = 0; i < rank; ++i) w[i] = m * mu[i];
        out.add_term(quad(u, c, m), w, Rat(sign));
    };
    for (Rat m = mlo; quad(u, c, m) < bound; m -= 1) emit(m);
    for (Rat m = mhi; quad(u, c, m) < bound; m += 1) emit(m);
    return out;
}

} // namespace

GradedSeries expand_eta(int rank, long u, const Rat& order) {
    if (u < 1) fail(Errc::InvalidInput, "eta needs a positive tau scale");
    CacheKey key{0, rank, u, {}, Rat(0), order};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache().find(key);
        if (it != cache().end()) return it->second;
    }
    Rat low = rat(u, 24);
    GradedSeries out(rank, low + order);
    WVec zero(rank, Rat(0));
    for (long m = 0;; ++m) { // pentagonal exponents m(3m-1)/2 and m(3m+1)/2
        Rat e1 = rat(u * m * (3 * m - 1), 2);
        Rat e2 = rat(u * m * (3 * m + 1), 2);
        if (e1 >= order && e2 >= order) break;
        int sign = (m % 2 == 0) ? +1 : -1;
        if (e1 < order) out.add_term(low + e1, zero, Rat(sign));
        if (m > 0 && e2 < order) out.add_term(low + e2, zero, Rat(sign));
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache().emplace(std::move(key), out);
    return out;
}

GradedSeries expand_theta11(int rank, long u, const WVec& mu, const Rat& c, const Rat& order) {
    if (u < 1) fail(Errc::InvalidInput, "theta needs a positive tau scale");
    if (static_cast<int>(mu.size()) != rank) fail(Errc::InvalidInput, "argument rank mismatch");
    CacheKey key{1, rank, u, mu, c, order};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache().find(key);
        if (it != cache().end()) return it->second;
    }
    // i * sum_n (-1)^n q^{f(n + 1/2)} e^{(n+1/2) mu}
    GradedSeries out = lattice_sum(rank, u, mu, c, rat(1, 2), order);
    out.set_unit_pow(1);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache().emplace(std::move(key), out);
    return out;
}

GradedSeries expand_theta01(int rank, long u, const WVec& mu, const Rat& c, const Rat& order) {
    if (u < 1) fail(Errc::InvalidInput, "theta needs a positive tau scale");
    if (static_cast<int>(mu.size()) != rank) fail(Errc::InvalidInput, "argument rank mismatch");
    CacheKey key{2, rank, u, mu, c, order};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache().find(key);
        if (it != cache().end()) return it->second;
    }
    GradedSeries out = lattice_sum(rank, u, mu, c, Rat(0), order);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache().emplace(std::move(key), out);
    return out;
}

GradedSeries expand_factor(int rank, const ThetaFactor& f, const Rat& order) {
    switch (f.kind) {
    case ThetaKind::eta:
        return expand_eta(rank, f.tau_scale, order);
    case ThetaKind::theta11:
        return expand_theta11(rank, f.tau_scale, f.arg, f.tau_shift, order);
    case ThetaKind::theta01:
        return expand_theta01(rank, f.tau_scale, f.arg, f.tau_shift, order);
    }
    fail(Errc::InvalidInput, "unknown theta kind");
}

EllipticFactor elliptic_transform(long m, long n, long u, const WVec& mu, const Rat& c) {
    EllipticFactor out;
    out.unit = static_cast<int>(((m + n) % 2 + 2) % 2) * 2; // (-1)^(m+n)
    out.q_shift = -rat(u * m * m, 2) - rat(m) * c;
    out.w_shift = WVec(mu.size(), Rat(0));
    for (std::size_t i = 0; i < mu.size(); ++i) out.w_shift[i] = rat(-m) * mu[i];
    return out;
}

ThetaProductForm form_mul(const ThetaProductForm& a, const ThetaProductForm& b) {
    ThetaProductForm out = a;
    out.pre.t_exp += b.pre.t_exp;
    out.pre.q_exp += b.pre.q_exp;
    if (out.pre.w_exp.empty())
        out.pre.w_exp = b.pre.w_exp;
    else if (!b.pre.w_exp.empty())
        out.pre.w_exp = out.pre.w_exp + b.pre.w_exp;
    out.pre.scalar *= b.pre.scalar;
    out.pre.unit = (((out.pre.unit + b.pre.unit) % 4) + 4) % 4;
    if (out.pre.unit >= 2) {
        out.pre.unit -= 2;
        out.pre.scalar = -out.pre.scalar;
    }
    for (const auto& f : b.factors) {
        bool merged = false;
        for (auto& g : out.factors)
            if (g.kind == f.kind && g.tau_scale == f.tau_scale && g.arg == f.arg &&
                g.tau_shift == f.tau_shift) {
                g.exponent += f.exponent;
                merged = true;
                break;
            }
        if (!merged) out.factors.push_back(f);
    }
    std::erase_if(out.factors, [](const ThetaFactor& f) { return f.exponent == 0; });
    return out;
}

ThetaProductForm form_inverse(const ThetaProductForm& a) {
    ThetaProductForm out = a;
    out.pre.t_exp = -out.pre.t_exp;
    out.pre.q_exp = -out.pre.q_exp;
    for (auto& w : out.pre.w_exp) w = -w;
    out.pre.scalar = Rat(1) / out.pre.scalar;
    out.pre.unit = (4 - out.pre.unit % 4) % 4;
    if (out.pre.unit >= 2) {
        out.pre.unit -= 2;
        out.pre.scalar = -out.pre.scalar;
    }
    for (auto& f : out.factors) f.exponent = -f.exponent;
    return out;
}

void prefactor_times_unit(Prefactor& pre, long ipow) {
    pre.unit += static_cast<int>(((ipow % 4) + 4) % 4);
    while (pre.unit >= 2) {
        pre.unit -= 2;
        pre.scalar = -pre.scalar;
    }
}

void form_push(ThetaProductForm& f, const ThetaFactor& t) {
    for (auto it = f.factors.begin(); it != f.factors.end(); ++it) {
        if (it->kind == t.kind && it->tau_scale == t.tau_scale && it->arg == t.arg &&
            it->tau_shift == t.tau_shift) {
            it->exponent += t.exponent;
            if (it->exponent == 0) f.factors.erase(it);
            return;
        }
    }
    if (t.exponent != 0) f.factors.push_back(t);
}

GradedSeries evaluate_product_form(const ThetaProductForm& f, int rank, const Rat& order,
                                   const ConeSpec* cone) {
    WVec wexp = f.pre.w_exp.empty() ? WVec(rank, Rat(0)) : f.pre.w_exp;
    GradedSeries num =
        GradedSeries::monomial(rank, f.pre.q_exp, wexp, f.pre.scalar, f.pre.t_exp, f.pre.unit);
    GradedSeries den = GradedSeries::constant(rank, Rat(1));
    bool have_den = false;
    for (const auto& fac : f.factors) {
        if (fac.exponent == 0) continue;
        GradedSeries e = expand_factor(rank, fac, order);
        long reps = fac.exponent > 0 ? fac.exponent : -fac.exponent;
        for (long i = 0; i < reps; ++i) {
            if (fac.exponent > 0)
                num = mul(num, e);
            else {
                den = mul(den, e);
                have_den = true;
            }
        }
    }
    if (!have_den) return num;
    bool weightless = true;
    for (const auto& [m, c] : den.terms())
        for (auto w : m.w)
            if (w != 0) {
                weightless = false;
                break;
            }
    if (weightless) return mul(num, invert(den));
    if (!cone) fail(Errc::NotInvertible, "weighted denominator needs a division cone");
    return divide_in_cone(num, den, *cone);
}

} // namespace thetachar
