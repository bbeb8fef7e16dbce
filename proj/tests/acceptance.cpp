#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "thetachar/verify.hpp"

using namespace thetachar;

int main() {
    static const std::map<int, std::string> titles = {
        {1, "Weyl-Kac denominator matches the Macdonald sum"},
        {2, "boundary characters match the affine Weyl sum oracle"},
        {3, "rank-one theta quotient fixtures at u = 3"},
        {4, "odd sl_3 closed forms at u = 2"},
        {5, "dilation substitution identity"},
        {6, "weight multiplicities are nonnegative integers"},
        {7, "S-matrix closed form and unitarity"},
        {8, "Verlinde fusion tensors match the closed-form rules"},
        {9, "principal reduction gives the Virasoro minimal characters"},
        {10, "boundary weight census"},
        {11, "closed product and substitution reductions agree"},
    };
    const SuiteReport rep = run_suite("all");
    std::map<int, std::vector<const CheckResult*>> by_criterion;
    for (const auto& c : rep.checks) by_criterion[c.criterion].push_back(&c);
    int failed = 0;
    for (const auto& [crit, title] : titles) {
        const auto it = by_criterion.find(crit);
        bool ok = it != by_criterion.end();
        double secs = 0.0;
        const std::size_t count = ok ? it->second.size() : 0;
        if (ok)
            for (const CheckResult* c : it->second) {
                ok = ok && c->passed;
                secs += c->seconds;
            }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << std::setw(2) << crit << ": "
                  << title << "  (" << count << " checks, " << std::fixed
                  << std::setprecision(2) << secs << "s)\n";
        if (ok) continue;
        ++failed;
        if (it == by_criterion.end()) {
            std::cout << "       no checks ran\n";
            continue;
        }
        for (const CheckResult* c : it->second)
            if (!c->passed)
                std::cout << "       " << c->name << (c->detail.empty() ? "" : ": " + c->detail)
                          << "\n";
    }
    std::cout << titles.size() - failed << "/" << titles.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
