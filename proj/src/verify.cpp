#include "thetachar/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>

#include "thetachar/errors.hpp"

namespace thetachar {

namespace {

using Clock = std::chrono::steady_clock;

void run_check(std::vector<CheckResult>& out, int criterion, const std::string& name,
               const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    r.criterion = criterion;
    const auto t0 = Clock::now();
    try {
        r.detail = body();
    } catch (const std::exception& e) {
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.passed = r.detail.empty();
    out.push_back(std::move(r));
}

Rat window(const GradedSeries& a, const GradedSeries& b) {
    if (!a.trunc() || !b.trunc()) fail(Errc::InvalidInput, "series carries no validity window");
    return std::min(*a.trunc(), *b.trunc());
}

std::string str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

long a1_j(const BoundaryWeight& d, long u) {
    const Rat j = rat(-u, 2) * d.lambda.finite.at(0);
    if (!is_integer(j)) fail(Errc::InvalidInput, "not an A1 boundary weight");
    return j.get_num().get_si();
}

struct A2Class {
    int p = 0;
    long k1 = 0, k2 = 0;
};

// (p, k1, k2) label of an A2 boundary weight: the class whose weight
// (t_beta r_theta^p).(k Lambda_0), beta = -(-1)^p (k1 w1 + k2 w2), matches.
A2Class a2_class(const RootSystem& rs, const BoundaryWeight& d, long u) {
    const WVec theta = rs.highest_root().fw;
    const WeylElement* id = nullptr;
    const WeylElement* rtheta = nullptr;
    for (const auto& w : rs.weyl_elements()) {
        if (w.word.empty()) id = &w;
        if (w.sign < 0 && rs.apply(w, theta) == Rat(-1) * theta) rtheta = &w;
    }
    if (id == nullptr || rtheta == nullptr) fail(Errc::InvalidInput, "Weyl scan failed");
    const AffineWeight vac = vacuum_weight(rs, boundary_level(rs, u));
    for (int p = 0; p <= 1; ++p)
        for (long k1 = p; k1 <= u; ++k1)
            for (long k2 = p; k1 + k2 <= u - (p == 0 ? 1 : 0); ++k2) {
                WVec beta = {Rat(k1), Rat(k2)};
                if (p == 0) beta = Rat(-1) * beta;
                if (shifted_act(rs, p == 0 ? *id : *rtheta, beta, vac) == d.lambda)
                    return {p, k1, k2};
            }
    fail(Errc::InvalidInput, "descriptor matches no (p, k1, k2) class");
}

std::vector<long> gordon_andrews(long u, long s, long depth) {
    std::vector<long> dp(static_cast<std::size_t>(depth) + 1, 0);
    dp[0] = 1;
    for (long n = 1; n <= depth; ++n) {
        const long r = n % u;
        if (r == 0 || r == s % u || r == (u - s) % u) continue;
        for (long m = n; m <= depth; ++m)
            dp[static_cast<std::size_t>(m)] += dp[static_cast<std::size_t>(m - n)];
    }
    return dp;
}

struct BoundaryRange {
    const char* type;
    long u;
    Rat depth;
};

const std::vector<BoundaryRange>& boundary_ranges() {
    static const std::vector<BoundaryRange> ranges = {
        {"A1", 3, Rat(30)}, {"A1", 5, Rat(30)}, {"A2", 2, Rat(12)}, {"A2", 4, Rat(12)}};
    return ranges;
}

std::string range_tag(const BoundaryRange& r) {
    return std::string(r.type) + " u=" + std::to_string(r.u);
}

void suite_denominator(std::vector<CheckResult>& out) {
    for (const char* type : {"A1", "A2", "B2", "G2"})
        run_check(out, 1, std::string("Macdonald sum vs product, ") + type,
                  [type]() -> std::string {
                      const RootSystem rs(type);
                      const Rat order(20);
                      const GradedSeries prod = denominator(rs, order);
                      const GradedSeries sum = denominator_sum(rs, order);
                      if (!equal_below(prod, sum, window(prod, sum)))
                          return "product and Weyl sum windows differ";
                      return {};
                  });
}

void suite_oracle(std::vector<CheckResult>& out) {
    for (const auto& r : boundary_ranges()) {
        run_check(out, 10, "boundary weight census, " + range_tag(r), [&r]() -> std::string {
            const RootSystem rs(r.type);
            const auto all = boundary_weights(rs, r.u);
            const std::size_t expect =
                rs.rank() == 1 ? static_cast<std::size_t>(r.u)
                               : static_cast<std::size_t>(r.u) * static_cast<std::size_t>(r.u);
            if (all.size() != expect)
                return "expected " + std::to_string(expect) + " weights, got " +
                       std::to_string(all.size());
            for (std::size_t i = 0; i < all.size(); ++i)
                for (std::size_t j = i + 1; j < all.size(); ++j)
                    if (all[i].lambda == all[j].lambda)
                        return "weights " + std::to_string(i) + " and " + std::to_string(j) +
                               " coincide";
            return {};
        });
        run_check(out, 2, "theta product vs Weyl sum oracle, " + range_tag(r),
                  [&r]() -> std::string {
                      const RootSystem rs(r.type);
                      const auto all = boundary_weights(rs, r.u);
                      for (std::size_t i = 0; i < all.size(); ++i) {
                          const GradedSeries lhs = boundary_rch(rs, all[i], r.depth);
                          const GradedSeries rhs = oracle_rch(rs, all[i], r.depth);
                          if (!equal_below(lhs, rhs, window(lhs, rhs)))
                              return "descriptor " + std::to_string(i) + " differs";
                      }
                      return {};
                  });
    }
}

void suite_eq5(std::vector<CheckResult>& out) {
    for (const auto& r : boundary_ranges())
        run_check(out, 5, "substitution identity, " + range_tag(r), [&r]() -> std::string {
            const RootSystem rs(r.type);
            const auto all = boundary_weights(rs, r.u);
            for (std::size_t i = 0; i < all.size(); ++i)
                if (!substitution_identity_check(rs, all[i], Rat(20)))
                    return "descriptor " + std::to_string(i) + " fails";
            return {};
        });
}

void suite_example2(std::vector<CheckResult>& out) {
    run_check(out, 3, "one-variable theta quotient fixture, A1 u=3", []() -> std::string {
        const RootSystem rs("A1");
        const long u = 3;
        const auto all = boundary_weights(rs, u);
        for (long j = 0; j < u; ++j) {
            const BoundaryWeight* d = nullptr;
            for (const auto& cand : all)
                if (cand.lambda.finite == WVec{rat(-2 * j, u)}) d = &cand;
            if (d == nullptr) return "missing weight for j=" + std::to_string(j);

            const CharacterResult cr = boundary_character(rs, *d, Rat(12));
            ThetaProductForm expect;
            expect.pre.t_exp = boundary_level(rs, u);
            expect.pre.q_exp = rat(j * j, 2 * u);
            expect.pre.w_exp = {rat(-2 * j, u)};
            expect.factors.push_back({ThetaKind::theta11, u, {Rat(2)}, Rat(-j), 1});
            expect.factors.push_back({ThetaKind::theta11, 1, {Rat(2)}, Rat(0), -1});
            if (cr.form.factors != expect.factors || cr.form.pre.t_exp != expect.pre.t_exp ||
                cr.form.pre.q_exp != expect.pre.q_exp || cr.form.pre.w_exp != expect.pre.w_exp ||
                cr.form.pre.scalar != 1 || cr.form.pre.unit != 0)
                return "form shape differs at j=" + std::to_string(j);

            const GradedSeries literal =
                evaluate_product_form(form_mul(expect, denominator_form(rs)), 1, Rat(12));
            if (!equal_below(cr.rch, literal, window(cr.rch, literal)))
                return "series differ at j=" + std::to_string(j);
        }
        return {};
    });

    run_check(out, 4, "odd sl_3 closed form at u=2, p=0 and 1", []() -> std::string {
        const RootSystem rs("A2");
        const auto all = boundary_weights(rs, 2);
        const ThetaProductForm den = denominator_form(rs);
        const WVec fins[2] = {{Rat(0), Rat(0)}, {rat(-3, 2), Rat(0)}};
        for (int p = 0; p < 2; ++p) {
            const BoundaryWeight* d = nullptr;
            for (const auto& cand : all)
                if (cand.lambda.finite == fins[p]) d = &cand;
            if (d == nullptr) return "missing weight for p=" + std::to_string(p);
            const GradedSeries generic = boundary_rch(rs, *d, Rat(12));
            const GradedSeries closed =
                evaluate_product_form(form_mul(example2_form(3, p), den), 2, Rat(12));
            if (!equal_below(generic, closed, window(generic, closed)))
                return "p=" + std::to_string(p) + " differs";
        }
        return {};
    });
}

void suite_positivity(std::vector<CheckResult>& out) {
    for (const auto& r : boundary_ranges())
        run_check(out, 6, "multiplicity positivity, " + range_tag(r), [&r]() -> std::string {
            const RootSystem rs(r.type);
            const auto all = boundary_weights(rs, r.u);
            for (std::size_t i = 0; i < all.size(); ++i) {
                const auto bad = positivity_report(rs, all[i], r.depth);
                if (!bad.empty())
                    return "descriptor " + std::to_string(i) + ": " +
                           std::to_string(bad.size()) + " violations, first at q^" +
                           str(bad.front().q_exp);
            }
            return {};
        });
}

void suite_smatrix(std::vector<CheckResult>& out) {
    run_check(out, 7, "A1 S-matrix closed form, u in {3,5,7}", []() -> std::string {
        const RootSystem rs("A1");
        for (long u : {3L, 5L, 7L}) {
            const SMatrix s = s_matrix(rs, u);
            for (std::size_t i = 0; i < s.weights.size(); ++i)
                for (std::size_t j = 0; j < s.weights.size(); ++j) {
                    const long ji = a1_j(s.weights[i], u);
                    const long jj = a1_j(s.weights[j], u);
                    const double sgn = (ji + jj) % 2 == 0 ? 1.0 : -1.0;
                    const std::complex<double> expect =
                        sgn * std::sin(u * std::numbers::pi / 2) / std::sqrt(double(u)) *
                        std::polar(1.0, -2 * std::numbers::pi * double(ji * jj) / double(u));
                    if (std::abs(s.entries[i][j] - expect) >= 1e-12)
                        return "u=" + std::to_string(u) + " entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ") off closed form";
                }
        }
        return {};
    });

    struct Case {
        const char* type;
        long u;
    };
    for (const Case& c : {Case{"A1", 3}, Case{"A1", 5}, Case{"A1", 7}, Case{"A2", 2},
                          Case{"A2", 4}})
        run_check(out, 7, std::string("S unitarity, ") + c.type + " u=" + std::to_string(c.u),
                  [c]() -> std::string {
                      const RootSystem rs(c.type);
                      const SMatrix s = s_matrix(rs, c.u);
                      const std::size_t n = s.weights.size();
                      double worst = 0;
                      for (std::size_t i = 0; i < n; ++i)
                          for (std::size_t j = 0; j < n; ++j) {
                              std::complex<double> dot(0, 0);
                              for (std::size_t m = 0; m < n; ++m)
                                  dot += s.entries[i][m] * std::conj(s.entries[j][m]);
                              worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
                          }
                      if (worst >= 1e-9) return "S S-dagger deviates by " + std::to_string(worst);
                      return {};
                  });
}

void suite_fusion(std::vector<CheckResult>& out) {
    for (long u : {3L, 5L})
        run_check(out, 8, "A1 fusion tensor, u=" + std::to_string(u), [u]() -> std::string {
            const RootSystem rs("A1");
            const auto all = boundary_weights(rs, u);
            for (const auto& d1 : all)
                for (const auto& d2 : all)
                    for (const auto& d3 : all) {
                        const long j1 = a1_j(d1, u), j2 = a1_j(d2, u), j3 = a1_j(d3, u);
                        long expect = 0;
                        if ((j1 + j2 + j3) % u == 0)
                            expect = (j1 + j2 + j3) % 2 == 0 ? 1 : -1;
                        if (verlinde_fusion(rs, d1, d2, d3) != expect)
                            return "entry (" + std::to_string(j1) + "," + std::to_string(j2) +
                                   "," + std::to_string(j3) + ") off";
                    }
            return {};
        });

    for (long u : {2L, 4L})
        run_check(out, 8, "A2 fusion tensor, u=" + std::to_string(u), [u]() -> std::string {
            const RootSystem rs("A2");
            const auto all = boundary_weights(rs, u);
            std::vector<A2Class> cls;
            cls.reserve(all.size());
            for (const auto& d : all) cls.push_back(a2_class(rs, d, u));
            for (std::size_t i = 0; i < all.size(); ++i)
                for (std::size_t j = 0; j < all.size(); ++j)
                    for (std::size_t m = 0; m < all.size(); ++m) {
                        const A2Class &a = cls[i], &b = cls[j], &c = cls[m];
                        const long s1 = (a.p ? a.k1 : -a.k1) + (b.p ? b.k1 : -b.k1) +
                                        (c.p ? c.k1 : -c.k1);
                        const long s2 = (a.p ? a.k2 : -a.k2) + (b.p ? b.k2 : -b.k2) +
                                        (c.p ? c.k2 : -c.k2);
                        long expect = 0;
                        if (s1 % u == 0 && s2 % u == 0)
                            expect = (a.p + b.p + c.p) % 2 == 0 ? 1 : -1;
                        if (verlinde_fusion(rs, all[i], all[j], all[m]) != expect)
                            return "entry (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                   std::to_string(m) + ") off";
                    }
            return {};
        });
}

void suite_virasoro(std::vector<CheckResult>& out) {
    run_check(out, 9, "trivial representation at u=3", []() -> std::string {
        const RootSystem rs("A1");
        const NilpotentGrading g = principal_grading(rs);
        const Rat order(40);
        for (const auto& d : boundary_weights(rs, 3)) {
            const long j = a1_j(d, 3);
            const GradedSeries ch = reduced_character(rs, d, g, order).series;
            if (j == 2) {
                if (!ch.empty()) return "j=2 should reduce to zero";
                if (!ch.trunc() || *ch.trunc() < Rat(39)) return "j=2 window too shallow";
            } else {
                if (ch.term_count() != 1 || !ch.lowest_q_exp() || *ch.lowest_q_exp() != 0 ||
                    ch.coeff(Rat(0), {}) != 1)
                    return "j=" + std::to_string(j) + " is not the constant series 1";
            }
        }
        return {};
    });

    run_check(out, 9, "Gordon-Andrews products at u=5", []() -> std::string {
        const RootSystem rs("A1");
        const NilpotentGrading g = principal_grading(rs);
        const Rat order(50);
        const long margin = 45;
        for (const auto& d : boundary_weights(rs, 5)) {
            const long j = a1_j(d, 5);
            const GradedSeries ch = reduced_character(rs, d, g, order).series;
            if (j == 4) {
                if (!ch.empty()) return "j=4 should reduce to zero";
                if (!ch.trunc() || *ch.trunc() < Rat(49)) return "j=4 window too shallow";
                continue;
            }
            if (!ch.lowest_q_exp()) return "j=" + std::to_string(j) + " came back empty";
            const Rat lead = *ch.lowest_q_exp();
            const std::vector<long> dp = gordon_andrews(5, j + 1, margin);
            for (long n = 0; n <= margin; ++n)
                if (ch.coeff(lead + n, {}) != dp[static_cast<std::size_t>(n)])
                    return "j=" + std::to_string(j) + " coefficient of q^" +
                           std::to_string(n) + " off the product oracle";
        }
        return {};
    });

    for (long u : {3L, 5L})
        run_check(out, 11, "reduction route equality, u=" + std::to_string(u),
                  [u]() -> std::string {
                      const RootSystem rs("A1");
                      const NilpotentGrading g = principal_grading(rs);
                      const Rat order = u == 3 ? Rat(40) : Rat(50);
                      const auto all = boundary_weights(rs, u);
                      for (std::size_t i = 0; i < all.size(); ++i) {
                          const GradedSeries direct = reduced_character(rs, all[i], g, order).series;
                          const GradedSeries via = reduced_by_substitution(rs, all[i], g, order);
                          if (!equal_below(direct, via, window(direct, via)))
                              return "descriptor " + std::to_string(i) + " differs across routes";
                      }
                      return {};
                  });
}

} // namespace

bool SuiteReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names = {"denominator", "oracle",   "eq5",
                                                   "example2",    "positivity", "smatrix",
                                                   "fusion",      "virasoro"};
    return names;
}

SuiteReport run_suite(const std::string& name) {
    SuiteReport rep;
    rep.suite = name;
    if (name == "all") {
        for (const auto& s : verify_suites()) {
            SuiteReport part = run_suite(s);
            rep.checks.insert(rep.checks.end(), part.checks.begin(), part.checks.end());
        }
        return rep;
    }
    if (name == "denominator")
        suite_denominator(rep.checks);
    else if (name == "oracle")
        suite_oracle(rep.checks);
    else if (name == "eq5")
        suite_eq5(rep.checks);
    else if (name == "example2")
        suite_example2(rep.checks);
    else if (name == "positivity")
        suite_positivity(rep.checks);
    else if (name == "smatrix")
        suite_smatrix(rep.checks);
    else if (name == "fusion")
        suite_fusion(rep.checks);
    else if (name == "virasoro")
        suite_virasoro(rep.checks);
    else
        fail(Errc::UnknownSuite, "no verify suite named '" + name + "'");
    return rep;
}

} // namespace thetachar
