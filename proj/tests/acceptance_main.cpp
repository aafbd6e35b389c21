// Acceptance gate: runs every criterion at its pinned tolerance and prints
// one pass/fail line each. Exit code 0 iff all pass.

#include <cstdio>

#include "rotgas/verify.hpp"

int main() {
    rotgas::VerifyOptions opt;
    auto rep = rotgas::run_verification(opt);
    double total = 0.0;
    for (const auto& r : rep.results) {
        std::printf("[%s] criterion %2d (%-11s) %-58s worst %.3e  tol %.3e  %.2fs\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.module_tag.c_str(), r.name.c_str(), r.worst,
                    r.tolerance, r.seconds);
        if (!r.detail.empty() && !r.pass) std::printf("        detail: %s\n", r.detail.c_str());
        total += r.seconds;
    }
    std::printf("%s  (%zu criteria, %.1fs)\n", rep.all_pass ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILURES",
                rep.results.size(), total);
    return rep.all_pass ? 0 : 1;
}
