#include "thetachar/series.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace thetachar {

namespace {

std::int64_t checked_scale(std::int64_t v, long f) {
    Int r = Int(v) * f;
    if (!r.fits_slong_p()) fail(Errc::InvalidInput, "exponent key overflow");
    return r.get_si();
}

// num/den as an exact multiple of 1/unit_den; fails if not representable
std::int64_t to_units(const Rat& x, long unit_den) {
    Rat scaled = x * unit_den;
    if (!is_integer(scaled)) fail(Errc::InvalidInput, "exponent does not fit denominator");
    Int n = scaled.get_num();
    if (!n.fits_slong_p()) fail(Errc::InvalidInput, "exponent key overflow");
    return n.get_si();
}

std::optional<Rat> min_trunc(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

// lowest possible qExp of unseen terms: stored minimum, or the cutoff for an
// empty truncated series, or nullopt for an exact zero
std::optional<Rat> effective_low(const GradedSeries& s) {
    if (auto l = s.lowest_q_exp()) return l;
    return s.trunc();
}

} // namespace

void GradedSeries::set_unit_pow(int u) {
    u %= 4;
    if (u < 0) u += 4;
    if (u >= 2) {
        negate_coeffs();
        u -= 2;
    }
    unit_pow_ = u;
}

void GradedSeries::negate_coeffs() {
    for (auto& [m, c] : terms_) c = -c;
}

void GradedSeries::restrict_trunc(const Rat& order) {
    trunc_ = min_trunc(trunc_, order);
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (q_exp(it->first) >= *trunc_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

GradedSeries GradedSeries::constant(int rank, const Rat& c) {
    return monomial(rank, Rat(0), WVec(rank, Rat(0)), c);
}

GradedSeries GradedSeries::monomial(int rank, const Rat& qexp, const WVec& wexp, const Rat& c,
                                    const Rat& texp, int unit) {
    if (static_cast<int>(wexp.size()) != rank) fail(Errc::InvalidInput, "weight rank mismatch");
    GradedSeries s(rank);
    s.t_exp_ = texp;
    s.add_term(qexp, wexp, c);
    s.set_unit_pow(unit);
    return s;
}

WVec GradedSeries::w_exp(const Monomial& m) const {
    WVec v(rank_);
    for (int i = 0; i < rank_; ++i) v[i] = rat(Int(m.w[i]), Int(wden_));
    return v;
}

std::optional<Rat> GradedSeries::lowest_q_exp() const {
    if (terms_.empty()) return std::nullopt;
    return q_exp(terms_.begin()->first);
}

void GradedSeries::rescale(long new_qden, long new_wden) {
    if (new_qden % qden_ != 0 || new_wden % wden_ != 0)
        fail(Errc::InvalidInput, "rescale must refine denominators");
    long fq = new_qden / qden_;
    long fw = new_wden / wden_;
    if (fq == 1 && fw == 1) return;
    std::map<Monomial, Rat> out;
    for (const auto& [m, c] : terms_) {
        Monomial n;
        n.q = checked_scale(m.q, fq);
        n.w.reserve(m.w.size());
        for (auto wi : m.w) n.w.push_back(checked_scale(wi, fw));
        out.emplace(std::move(n), c);
    }
    terms_ = std::move(out);
    qden_ = new_qden;
    wden_ = new_wden;
}

void GradedSeries::add_term(const Rat& qexp, const WVec& wexp, const Rat& c) {
    if (static_cast<int>(wexp.size()) != rank_) fail(Errc::InvalidInput, "weight rank mismatch");
    if (c == 0) return;
    if (trunc_ && qexp >= *trunc_) return;
    long nq = lcm_long(qden_, static_cast<long>(qexp.get_den().get_si()));
    long nw = wden_;
    for (const auto& wi : wexp) nw = lcm_long(nw, static_cast<long>(wi.get_den().get_si()));
    rescale(nq, nw);
    Monomial m;
    m.q = to_units(qexp, qden_);
    m.w.reserve(rank_);
    for (const auto& wi : wexp) m.w.push_back(to_units(wi, wden_));
    auto [it, fresh] = terms_.try_emplace(std::move(m), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rat GradedSeries::coeff(const Rat& qexp, const WVec& wexp) const {
    Monomial m;
    Rat qs = qexp * qden_;
    if (!is_integer(qs)) return Rat(0);
    m.q = qs.get_num().get_si();
    for (const auto& wi : wexp) {
        Rat ws = wi * wden_;
        if (!is_integer(ws)) return Rat(0);
        m.w.push_back(ws.get_num().get_si());
    }
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

bool operator==(const GradedSeries& a, const GradedSeries& b) {
    if (a.rank_ != b.rank_ || a.t_exp_ != b.t_exp_ || a.unit_pow_ != b.unit_pow_) return false;
    if (a.trunc_.has_value() != b.trunc_.has_value()) return false;
    if (a.trunc_ && *a.trunc_ != *b.trunc_) return false;
    GradedSeries x = a, y = b;
    long nq = lcm_long(a.qden_, b.qden_);
    long nw = lcm_long(a.wden_, b.wden_);
    x.rescale(nq, nw);
    y.rescale(nq, nw);
    return x.terms_ == y.terms_;
}

GradedSeries add(const GradedSeries& a, const GradedSeries& b) {
    if (a.rank_ != b.rank_) fail(Errc::InvalidInput, "rank mismatch in add");
    if (!a.terms_.empty() && !b.terms_.empty()) {
        if (a.t_exp_ != b.t_exp_) fail(Errc::TExpMismatch, "cannot add series with different t-exponents");
        if (a.unit_pow_ != b.unit_pow_)
            fail(Errc::InvalidInput, "cannot add series with different i-units");
    }
    GradedSeries out(a.rank_, min_trunc(a.trunc_, b.trunc_));
    out.t_exp_ = a.terms_.empty() ? b.t_exp_ : a.t_exp_;
    out.unit_pow_ = a.terms_.empty() ? b.unit_pow_ : a.unit_pow_;
    long nq = lcm_long(a.qden_, b.qden_);
    long nw = lcm_long(a.wden_, b.wden_);
    GradedSeries x = a, y = b;
    x.rescale(nq, nw);
    y.rescale(nq, nw);
    out.qden_ = nq;
    out.wden_ = nw;
    out.terms_ = std::move(x.terms_);
    for (const auto& [m, c] : y.terms_) {
        auto [it, fresh] = out.terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) out.terms_.erase(it);
        }
    }
    if (out.trunc_) {
        for (auto it = out.terms_.begin(); it != out.terms_.end();) {
            if (out.q_exp(it->first) >= *out.trunc_)
                it = out.terms_.erase(it);
            else
                ++it;
        }
    }
    return out;
}

GradedSeries sub(const GradedSeries& a, const GradedSeries& b) { return add(a, scale(b, Rat(-1))); }

GradedSeries scale(const GradedSeries& a, const Rat& c) {
    GradedSeries out = a;
    if (c == 0) {
        out.terms_.clear();
        return out;
    }
    for (auto& [m, v] : out.terms_) v *= c;
    return out;
}

GradedSeries scale_unit(const GradedSeries& a, int ipow) {
    GradedSeries out = a;
    out.set_unit_pow(a.unit_pow() + ipow);
    return out;
}

namespace {

struct MulPlan {
    long nq = 1, nw = 1;
    std::optional<Rat> trunc;
    std::int64_t cutoff = 0; // ceil(trunc * nq); valid iff trunc engaged
};

MulPlan plan_mul(const GradedSeries& a, const GradedSeries& b) {
    MulPlan p;
    p.nq = lcm_long(a.qden(), b.qden());
    p.nw = lcm_long(a.wden(), b.wden());
    auto la = effective_low(a);
    auto lb = effective_low(b);
    std::optional<Rat> ta, tb;
    if (a.trunc() && lb) ta = *a.trunc() + *lb;
    if (b.trunc() && la) tb = *b.trunc() + *la;
    p.trunc = min_trunc(ta, tb);
    if (p.trunc) {
        Int c = ceil_int(*p.trunc * p.nq);
        if (!c.fits_slong_p()) fail(Errc::InvalidInput, "truncation overflow");
        p.cutoff = c.get_si();
    }
    return p;
}

struct UnitTexp {
    Rat t;
    int unit;
    bool sign_flip;
};

UnitTexp combine_mul_meta(const GradedSeries& a, const GradedSeries& b) {
    int u = a.unit_pow() + b.unit_pow();
    bool flip = false;
    if (u >= 2) {
        u -= 2;
        flip = true;
    }
    return {a.t_exp() + b.t_exp(), u, flip};
}

} // namespace

GradedSeries mul_serial(const GradedSeries& a, const GradedSeries& b) {
    if (a.rank_ != b.rank_) fail(Errc::InvalidInput, "rank mismatch in mul");
    MulPlan p = plan_mul(a, b);
    GradedSeries x = a, y = b;
    x.rescale(p.nq, p.nw);
    y.rescale(p.nq, p.nw);
    UnitTexp meta = combine_mul_meta(a, b);
    GradedSeries out(a.rank_, p.trunc);
    out.qden_ = p.nq;
    out.wden_ = p.nw;
    out.t_exp_ = meta.t;
    out.unit_pow_ = meta.unit;
    const int rk = a.rank_;
    Monomial key;
    key.w.resize(rk);
    for (const auto& [ma, ca] : x.terms_) {
        for (const auto& [mb, cb] : y.terms_) {
            key.q = ma.q + mb.q;
            if (p.trunc && key.q >= p.cutoff) continue;
            for (int i = 0; i < rk; ++i) key.w[i] = ma.w[i] + mb.w[i];
            Rat prod = ca * cb;
            auto [it, fresh] = out.terms_.try_emplace(key, prod);
            if (!fresh) {
                it->second += prod;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    }
    if (meta.sign_flip) out.negate_coeffs();
    return out;
}

GradedSeries mul_parallel(const GradedSeries& a, const GradedSeries& b) {
    if (a.rank_ != b.rank_) fail(Errc::InvalidInput, "rank mismatch in mul");
    MulPlan p = plan_mul(a, b);
    GradedSeries x = a, y = b;
    x.rescale(p.nq, p.nw);
    y.rescale(p.nq, p.nw);
    UnitTexp meta = combine_mul_meta(a, b);
    GradedSeries out(a.rank_, p.trunc);
    out.qden_ = p.nq;
    out.wden_ = p.nw;
    out.t_exp_ = meta.t;
    out.unit_pow_ = meta.unit;

    std::vector<std::pair<const Monomial*, const Rat*>> rows;
    rows.reserve(x.terms_.size());
    for (const auto& [m, c] : x.terms_) rows.emplace_back(&m, &c);
    const int rk = a.rank_;

    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<std::map<Monomial, Rat>> partial(nthreads);

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        auto& local = partial[tid];
        Monomial key;
        key.w.resize(rk);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8)
#endif
        for (long idx = 0; idx < static_cast<long>(rows.size()); ++idx) {
            const Monomial& ma = *rows[idx].first;
            const Rat& ca = *rows[idx].second;
            for (const auto& [mb, cb] : y.terms_) {
                key.q = ma.q + mb.q;
                if (p.trunc && key.q >= p.cutoff) continue;
                for (int i = 0; i < rk; ++i) key.w[i] = ma.w[i] + mb.w[i];
                Rat prod = ca * cb;
                auto [it, fresh] = local.try_emplace(key, prod);
                if (!fresh) {
                    it->second += prod;
                    if (it->second == 0) local.erase(it);
                }
            }
        }
    }
    for (auto& part : partial) {
        for (auto& [m, c] : part) {
            auto [it, fresh] = out.terms_.try_emplace(m, std::move(c));
            if (!fresh) {
                it->second += c;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    }
    if (meta.sign_flip) out.negate_coeffs();
    return out;
}

GradedSeries mul(const GradedSeries& a, const GradedSeries& b) {
#ifdef _OPENMP
    if (omp_get_max_threads() > 1 && a.term_count() * b.term_count() >= 20000)
        return mul_parallel(a, b);
#endif
    return mul_serial(a, b);
}

GradedSeries mul_monomial(const GradedSeries& a, const Rat& qshift, const WVec& wshift,
                          const Rat& c, const Rat& tshift, int unit) {
    return mul_serial(a, GradedSeries::monomial(a.rank(), qshift, wshift, c, tshift, unit));
}

GradedSeries substitute_q_power(const GradedSeries& a, long u) {
    if (u < 1) fail(Errc::InvalidInput, "q-power substitution needs u >= 1");
    GradedSeries out = a;
    if (out.trunc_) out.trunc_ = *out.trunc_ * u;
    std::map<Monomial, Rat> terms;
    for (const auto& [m, c] : a.terms_) {
        Monomial n = m;
        n.q = checked_scale(m.q, u);
        terms.emplace(std::move(n), c);
    }
    out.terms_ = std::move(terms);
    return out;
}

GradedSeries shift_weight_by_tau(const GradedSeries& a, const std::vector<Rat>& fw_pairings) {
    if (static_cast<int>(fw_pairings.size()) != a.rank())
        fail(Errc::InvalidInput, "pairing vector rank mismatch");
    Rat min_shift(0);
    bool first = true;
    std::vector<std::pair<std::pair<Rat, WVec>, Rat>> staged;
    staged.reserve(a.term_count());
    for (const auto& [m, c] : a.terms()) {
        WVec w = a.w_exp(m);
        Rat shift(0);
        for (int i = 0; i < a.rank(); ++i) shift += w[i] * fw_pairings[i];
        if (first || shift < min_shift) min_shift = shift;
        first = false;
        staged.push_back({{a.q_exp(m) + shift, std::move(w)}, c});
    }
    GradedSeries out(a.rank());
    out.set_t_exp(a.t_exp());
    if (a.trunc()) {
        Rat t = *a.trunc();
        if (min_shift < 0) t += min_shift;
        out.restrict_trunc(t);
    }
    for (auto& [key, c] : staged) out.add_term(key.first, key.second, c);
    out.set_unit_pow(a.unit_pow());
    return out;
}

GradedSeries map_weights(const GradedSeries& a, const std::vector<WVec>& mat) {
    int new_rank = static_cast<int>(mat.size());
    for (const auto& row : mat)
        if (static_cast<int>(row.size()) != a.rank()) fail(Errc::InvalidInput, "weight map shape");
    GradedSeries out(new_rank, a.trunc());
    out.set_t_exp(a.t_exp());
    for (const auto& [m, c] : a.terms()) {
        WVec w = a.w_exp(m);
        WVec nw(new_rank, Rat(0));
        for (int i = 0; i < new_rank; ++i)
            for (int j = 0; j < a.rank(); ++j) nw[i] += mat[i][j] * w[j];
        out.add_term(a.q_exp(m), nw, c);
    }
    out.set_unit_pow(a.unit_pow());
    return out;
}

GradedSeries collapse_weights(const GradedSeries& a) { return map_weights(a, {}); }

GradedSeries truncate(const GradedSeries& a, const Rat& order) {
    GradedSeries out = a;
    out.restrict_trunc(order);
    return out;
}

bool equal_below(const GradedSeries& a, const GradedSeries& b, const Rat& order) {
    if (a.rank() != b.rank()) return false;
    if (a.trunc() && *a.trunc() < order) fail(Errc::InvalidInput, "lhs not valid to comparison order");
    if (b.trunc() && *b.trunc() < order) fail(Errc::InvalidInput, "rhs not valid to comparison order");
    GradedSeries x = truncate(a, order);
    GradedSeries y = truncate(b, order);
    if (!x.empty() && !y.empty()) {
        if (x.t_exp() != y.t_exp() || x.unit_pow() != y.unit_pow()) return false;
    }
    long nq = lcm_long(x.qden(), y.qden());
    long nw = lcm_long(x.wden(), y.wden());
    x.rescale(nq, nw);
    y.rescale(nq, nw);
    return x.terms() == y.terms();
}

namespace {

// exact rational-coordinate monomial key ordered by (qExp, -height, w lex)
struct DivKey {
    Rat q;
    Rat neg_ht;
    WVec w;

    bool operator<(const DivKey& o) const {
        if (q != o.q) return q < o.q;
        if (neg_ht != o.neg_ht) return neg_ht < o.neg_ht;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] != o.w[i]) return w[i] < o.w[i];
        return false;
    }
};

Rat height_of(const WVec& w, const std::vector<Rat>& hcov) {
    Rat h(0);
    for (std::size_t i = 0; i < w.size(); ++i) h += w[i] * hcov[i];
    return h;
}

} // namespace

GradedSeries divide_in_cone(const GradedSeries& num, const GradedSeries& den, const ConeSpec& spec) {
    if (num.rank() != den.rank()) fail(Errc::InvalidInput, "rank mismatch in division");
    const int rk = num.rank();
    if (static_cast<int>(spec.height.size()) != rk) fail(Errc::InvalidInput, "height covector rank");
    if (den.empty()) fail(Errc::NotInvertible, "zero divisor");

    auto key_of = [&](const Rat& q, const WVec& w) {
        return DivKey{q, -height_of(w, spec.height), w};
    };

    // den corner = minimum in division order; all else strictly positive drop
    std::optional<DivKey> corner;
    Rat den_c0;
    const Monomial* corner_mono = nullptr;
    for (const auto& [m, c] : den.terms()) {
        DivKey k = key_of(den.q_exp(m), den.w_exp(m));
        if (!corner || k < *corner) {
            corner = std::move(k);
            den_c0 = c;
            corner_mono = &m;
        }
    }
    const Rat den_q0 = corner->q;
    const WVec den_w0 = corner->w;
    const Rat den_h0 = -corner->neg_ht;
    for (const auto& [m, c] : den.terms()) {
        Rat dq = den.q_exp(m) - den_q0;
        if (dq == 0 && den.w_exp(m) == den_w0) continue;
        Rat drop = spec.q_weight * dq - (height_of(den.w_exp(m), spec.height) - den_h0);
        if (drop <= 0)
            fail(Errc::NotInvertible, "divisor support not inside the expansion cone");
    }

    // validity: errors enter the remainder from num's tail at num.trunc and
    // from den's tail at (num lowest) - den_q0 + den.trunc; an emission at
    // xq reads the remainder at xq + den_q0
    std::optional<Rat> out_trunc;
    if (num.trunc()) out_trunc = *num.trunc() - den_q0;
    if (den.trunc()) {
        if (auto nlow = effective_low(num)) {
            Rat t = *nlow + *den.trunc() - 2 * den_q0;
            out_trunc = out_trunc ? std::min(*out_trunc, t) : t;
        }
    }

    GradedSeries out(rk, out_trunc);
    out.set_t_exp(num.t_exp() - den.t_exp());
    const int unit = num.unit_pow() - den.unit_pow();

    std::map<DivKey, Rat> rem;
    for (const auto& [m, c] : num.terms()) rem.emplace(key_of(num.q_exp(m), num.w_exp(m)), c);

    bool lead_set = false;
    Rat lead_q, lead_h;
    while (!rem.empty()) {
        auto front = rem.begin();
        const Rat mq = front->first.q;
        const WVec mw = front->first.w;
        const Rat mh = -front->first.neg_ht;
        const Rat mc = front->second;
        rem.erase(front);
        Rat xq = mq - den_q0;
        if (out_trunc && xq >= *out_trunc) continue;
        WVec xw = mw - den_w0;
        Rat xh = mh - den_h0;
        if (!lead_set) {
            lead_q = xq;
            lead_h = xh;
            lead_set = true;
        } else {
            Rat drop = spec.q_weight * (xq - lead_q) - (xh - lead_h);
            if (drop > spec.bound) continue;
        }
        Rat xc = mc / den_c0;
        out.add_term(xq, xw, xc);
        // the popped entry already accounts for xc times the corner itself
        for (const auto& [dm, dc] : den.terms()) {
            if (&dm == corner_mono) continue;
            Rat nq = xq + den.q_exp(dm);
            if (out_trunc && nq - den_q0 >= *out_trunc) continue;
            WVec nw = xw + den.w_exp(dm);
            auto [it, fresh] = rem.try_emplace(key_of(nq, nw), -xc * dc);
            if (!fresh) {
                it->second -= xc * dc;
                if (it->second == 0) rem.erase(it);
            }
        }
    }
    out.set_unit_pow(unit);
    return out;
}

GradedSeries invert(const GradedSeries& a, const Rat& order) {
    if (a.empty()) fail(Errc::NotInvertible, "zero series");
    auto it = a.terms().begin();
    const Monomial lead = it->first;
    ++it;
    if (it != a.terms().end() && it->first.q == lead.q)
        fail(Errc::NotInvertible, "lowest q-stratum holds more than one weight monomial");
    Rat lead_q = a.q_exp(lead);
    GradedSeries one(a.rank(), order + lead_q);
    one.add_term(Rat(0), WVec(a.rank(), Rat(0)), Rat(1));
    // zero height covector: the cone is the pure-q cone and every emission
    // below the validity order has drop < order + lead_q
    ConeSpec spec{std::vector<Rat>(a.rank(), Rat(0)), Rat(1), order + lead_q};
    return divide_in_cone(one, a, spec);
}

GradedSeries invert(const GradedSeries& a) {
    if (!a.trunc()) fail(Errc::InvalidInput, "invert of an exact series needs an explicit order");
    auto low = a.lowest_q_exp();
    if (!low) fail(Errc::NotInvertible, "zero series");
    return invert(a, *a.trunc() - 2 * *low);
}

GradedSeries sqrt_series(const GradedSeries& a) {
    if (a.empty()) fail(Errc::SquareRootNotSeries, "zero series");
    auto it = a.terms().begin();
    const Monomial lead = it->first;
    ++it;
    if (it != a.terms().end() && it->first.q == lead.q)
        fail(Errc::SquareRootNotSeries, "lowest q-stratum holds more than one weight monomial");
    if (a.unit_pow() != 0) fail(Errc::SquareRootNotSeries, "series has a residual unit factor");
    Rat lead_q = a.q_exp(lead);
    WVec lead_w = a.w_exp(lead);
    Rat lead_c = a.terms().begin()->second;
    if (lead_c < 0) fail(Errc::SquareRootNotSeries, "negative leading coefficient");
    if (mpz_perfect_square_p(lead_c.get_num_mpz_t()) == 0 ||
        mpz_perfect_square_p(lead_c.get_den_mpz_t()) == 0)
        fail(Errc::SquareRootNotSeries, "leading coefficient is not a rational square");
    Int num_root, den_root;
    mpz_sqrt(num_root.get_mpz_t(), lead_c.get_num_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), lead_c.get_den_mpz_t());
    Rat c0 = rat(num_root, den_root);

    GradedSeries r = mul_monomial(a, -lead_q, Rat(-1) * lead_w, Rat(1) / lead_c, -a.t_exp());
    GradedSeries one = GradedSeries::constant(a.rank(), Rat(1));
    r = sub(r, one); // a = lead * (1 + r)
    std::optional<Rat> valid = r.trunc();

    GradedSeries y = one;
    if (valid) y.restrict_trunc(*valid);
    // for an exact input a finite root has no terms past r's top q-exponent
    Rat qcap(0);
    if (!r.empty()) qcap = r.q_exp(std::prev(r.terms().end())->first);

    GradedSeries rem = r; // invariant: rem = (1 + r) - y^2
    while (!rem.empty()) {
        auto t = rem.terms().begin();
        Rat tq = rem.q_exp(t->first);
        if (tq <= 0) fail(Errc::SquareRootNotSeries, "correction term not above the lead");
        if (!valid && tq > qcap)
            fail(Errc::SquareRootNotSeries, "exact series is not a perfect square");
        GradedSeries tm = GradedSeries::monomial(a.rank(), tq, rem.w_exp(t->first), t->second / 2);
        if (valid) tm.restrict_trunc(*valid);
        rem = sub(rem, add(scale(mul(tm, y), Rat(2)), mul(tm, tm)));
        y = add(y, tm);
    }
    WVec half_w(a.rank());
    for (int i = 0; i < a.rank(); ++i) half_w[i] = lead_w[i] / 2;
    return mul_monomial(y, lead_q / 2, half_w, c0, a.t_exp() / 2);
}

} // namespace thetachar
