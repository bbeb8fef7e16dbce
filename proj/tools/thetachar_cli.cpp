#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "thetachar/errors.hpp"
#include "thetachar/modular.hpp"
#include "thetachar/output.hpp"
#include "thetachar/verify.hpp"

using namespace thetachar;

namespace {

long env_order(long fallback) {
    const char* env = std::getenv("THETACHAR_ORDER");
    if (env == nullptr) return fallback;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0)
        fail(Errc::InvalidInput, "THETACHAR_ORDER must be a positive integer");
    return v;
}

const WeylElement& identity_element(const RootSystem& rs) {
    for (const auto& w : rs.weyl_elements())
        if (w.word.empty()) return w;
    fail(Errc::InvalidInput, "Weyl list has no identity");
}

const WeylElement& theta_reflection(const RootSystem& rs) {
    const WVec theta = rs.highest_root().fw;
    const WVec minus = Rat(-1) * theta;
    for (const auto& w : rs.weyl_elements())
        if (w.sign < 0 && rs.apply(w, theta) == minus) return w;
    fail(Errc::InvalidInput, "no Weyl reflection sends the highest root to its negative");
}

const BoundaryWeight& select_weight(const std::vector<BoundaryWeight>& all,
                                    const AffineWeight& target) {
    for (const auto& d : all)
        if (d.lambda == target) return d;
    fail(Errc::InvalidInput, "selector matches no boundary principal admissible weight");
}

struct CharacterArgs {
    std::string algebra;
    long u = 1;
    long order = 10;
    std::string format = "text";
    std::vector<long> beta;
    long j = 0;
    std::vector<long> pk;
    bool has_beta = false;
    bool has_j = false;
};

int cmd_character(const CharacterArgs& a) {
    const RootSystem rs(a.algebra);
    const std::vector<BoundaryWeight> all = boundary_weights(rs, a.u);
    const AffineWeight vac = vacuum_weight(rs, boundary_level(rs, a.u));
    AffineWeight target;
    if (a.has_beta) {
        if (static_cast<int>(a.beta.size()) != rs.rank())
            fail(Errc::InvalidInput, "--beta needs one coweight coordinate per simple root");
        const WVec beta(a.beta.begin(), a.beta.end());
        target = shifted_act(rs, identity_element(rs), beta, vac);
    } else if (a.has_j) {
        if (rs.rank() != 1) fail(Errc::InvalidInput, "--j labels rank-one descriptors only");
        target = shifted_act(rs, identity_element(rs), WVec{Rat(-a.j)}, vac);
    } else {
        if (rs.rank() != 2) fail(Errc::InvalidInput, "--p-k1-k2 labels rank-two descriptors only");
        WVec beta{Rat(a.pk[1]), Rat(a.pk[2])};
        if (a.pk[0] == 0) beta = Rat(-1) * beta;
        target = shifted_act(rs, a.pk[0] == 0 ? identity_element(rs) : theta_reflection(rs),
                             beta, vac);
    }
    const BoundaryWeight& d = select_weight(all, target);
    const CharacterResult cr = boundary_character(rs, d, Rat(a.order));
    const OutputRecord rec = make_record(a.algebra, d, a.u, Rat(a.order), cr.series);
    std::cout << (a.format == "json" ? record_to_json(rec) : record_to_text(rec));
    return 0;
}

int cmd_verify(const std::string& suite) {
    const SuiteReport rep = run_suite(suite);
    std::size_t failed = 0;
    for (const auto& c : rep.checks) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  (criterion "
                  << c.criterion << ", " << std::fixed << std::setprecision(3) << c.seconds
                  << "s)\n";
        if (!c.passed && !c.detail.empty()) std::cout << "       " << c.detail << "\n";
        if (!c.passed) ++failed;
    }
    std::cout << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed\n";
    return failed == 0 ? 0 : 1;
}

nlohmann::json rat_json(const Rat& r) {
    return nlohmann::json{{"num", r.get_num().get_si()}, {"den", r.get_den().get_si()}};
}

int cmd_fusion_table(const std::string& algebra, long u, const std::string& format) {
    const RootSystem rs(algebra);
    const std::vector<BoundaryWeight> all = boundary_weights(rs, u);
    const std::size_t n = all.size();
    std::vector tensor(n, std::vector(n, std::vector<long>(n, 0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < n; ++m)
                tensor[i][j][m] = verlinde_fusion(rs, all[i], all[j], all[m]);
    if (format == "json") {
        nlohmann::json weights = nlohmann::json::array();
        for (const auto& d : all) {
            nlohmann::json coords = nlohmann::json::array();
            for (const auto& c : d.lambda.finite) coords.push_back(rat_json(c));
            weights.push_back(coords);
        }
        const nlohmann::json out{
            {"algebra", algebra}, {"u", u}, {"weights", weights}, {"tensor", tensor}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "# algebra " << algebra << "  u " << u << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        std::cout << "# " << i << ": lambda (";
        for (std::size_t c = 0; c < all[i].lambda.finite.size(); ++c)
            std::cout << (c ? "," : "") << all[i].lambda.finite[c];
        std::cout << ")\n";
    }
    std::cout << "a,b,c,N\n";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < n; ++m)
                std::cout << i << "," << j << "," << m << "," << tensor[i][j][m] << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact characters, fusion, and W-reductions of boundary admissible weights"};
    app.require_subcommand(1);

    CharacterArgs ca;
    auto* ch = app.add_subcommand("character", "expand one boundary character window");
    ch->add_option("--algebra", ca.algebra, "A1..A7, B2..B5, C2..C5, D4..D5, E6..E8, F4, G2")
        ->required();
    ch->add_option("--u", ca.u, "principal admissibility denominator")->required();
    auto* opt_order =
        ch->add_option("--order", ca.order, "truncation depth (default 10, env THETACHAR_ORDER)");
    ch->add_option("--format", ca.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    auto* opt_beta =
        ch->add_option("--beta", ca.beta, "translation coordinates, comma separated")
            ->delimiter(',');
    auto* opt_j = ch->add_option("--j", ca.j, "rank-one descriptor label 0..u-1");
    auto* opt_pk = ch->add_option("--p-k1-k2", ca.pk, "rank-two descriptor class p,k1,k2")
                       ->delimiter(',')
                       ->expected(3);

    std::string suite;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite, "denominator|oracle|eq5|example2|positivity|smatrix|fusion|virasoro|all")
        ->required();

    std::string ft_algebra;
    long ft_u = 1;
    std::string ft_format = "csv";
    auto* fu = app.add_subcommand("fusion-table", "full Verlinde tensor over one boundary level");
    fu->add_option("--algebra", ft_algebra)->required();
    fu->add_option("--u", ft_u)->required();
    fu->add_option("--format", ft_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ch->parsed()) {
            ca.has_beta = opt_beta->count() > 0;
            ca.has_j = opt_j->count() > 0;
            const int picked = (ca.has_beta ? 1 : 0) + (ca.has_j ? 1 : 0) +
                               (opt_pk->count() > 0 ? 1 : 0);
            if (picked != 1)
                fail(Errc::InvalidInput, "pick exactly one of --beta, --j, --p-k1-k2");
            if (opt_order->count() == 0) ca.order = env_order(10);
            return cmd_character(ca);
        }
        if (ver->parsed()) return cmd_verify(suite);
        return cmd_fusion_table(ft_algebra, ft_u, ft_format);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
