// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
// `acceptance -v` also prints the scenario lines.

#include <chrono>
#include <cstring>
#include <iostream>

#include "bfk/scenarios.hpp"

using namespace bfk;

namespace {

struct Criterion {
    int number;
    const char* title;
    std::vector<std::pair<const char*, ScenarioParams>> runs;
    double limit_s;
};

std::vector<Criterion> criteria() {
    const ScenarioParams dflt{};
    ScenarioParams p2;
    p2.p = 2;
    return {
        {1, "composition referee", {{"compose-oracle-agreement", dflt}}, 60},
        {2, "factorization", {{"factorization", dflt}}, 60},
        {3, "faithful idempotents", {{"f_N-idempotents", dflt}}, 30},
        {4, "delta^op kills gamma_Y, Mackey products", {{"delta-nul", dflt}}, 30},
        {5, "B/B_delta rational, rationality conditions", {{"brat", dflt}, {"caract", dflt}}, 300},
        {6, "K = B_delta for p odd", {{"odd-k", dflt}}, 120},
        {7, "faithful ranks of K at normal p-rank one", {{"prn1-ranks", dflt}}, 30},
        {8, "K/B_delta invariants", {{"kmod-dims", dflt}}, 600},
        {9, "points minus lines", {{"geometric", dflt}}, 10},
        {10, "Y identity", {{"y-identity", p2}}, 60},
        {11, "B_delta kills B/B_delta", {{"mur-kill", dflt}}, 120},
        {12, "shifted functor rational", {{"shift-rational", dflt}}, 120},
        {13, "negative controls", {{"negative-controls", dflt}}, 10},
    };
}

} // namespace

int main(int argc, char** argv) {
    const bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
    int failed = 0;
    for (const auto& c : criteria()) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::vector<std::string> notes;
        for (const auto& [id, prm] : c.runs) {
            const Scenario* s = find_scenario(id);
            if (!s) {
                ok = false;
                notes.push_back(std::string("missing scenario ") + id);
                continue;
            }
            try {
                const ScenarioResult r = run_scenario(*s, prm);
                ok = ok && r.passed;
                for (const auto& line : r.lines)
                    if (verbose || line.rfind("FAIL", 0) == 0 || line.rfind("     ", 0) == 0)
                        notes.push_back(std::string(id) + ": " + line);
            } catch (const std::exception& e) {
                ok = false;
                notes.push_back(std::string(id) + ": exception: " + e.what());
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = ok && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s criterion %2d: %s (%.2f s, limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.number, c.title, secs,
                    c.limit_s, ok && !in_time ? " over time" : "");
        for (const auto& n : notes)
            std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 13 criteria pass\n", 13 - failed);
    return failed == 0 ? 0 : 1;
}
