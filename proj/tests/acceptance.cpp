// Prints one PASS/FAIL line per primary criterion, followed by its sub-checks.
// Exits 0 once every criterion has run; --strict also fails on any FAIL line.
#include <cstdlib>
#include <cstring>
#include <vector>

#include <fmt/format.h>

#include "tribill/acceptance.hpp"

int main(int argc, char** argv) {
    bool strict = false;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--strict") == 0)
            strict = true;
        else
            ids.push_back(std::atoi(argv[i]));
    }
    int failed = 0;
    for (const tribill::CriterionResult& r : tribill::run_acceptance(ids)) {
        fmt::print("{} {:>2} {} ({:.2f} s)\n", r.pass ? "PASS" : "FAIL", r.id, r.title, r.seconds);
        for (const std::string& d : r.details) fmt::print("        {}\n", d);
        std::fflush(stdout);
        failed += !r.pass;
    }
    fmt::print("{} of {} criteria pass\n", (ids.empty() ? tribill::kCriterionCount : int(ids.size())) - failed,
               ids.empty() ? tribill::kCriterionCount : int(ids.size()));
    return strict && failed ? 1 : 0;
}
