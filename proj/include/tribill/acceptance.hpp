// The primary acceptance suite, shared by the acceptance binary and `verify`.
#pragma once

#include <string>
#include <vector>

namespace tribill {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> details;  // one line per sub-check
    double seconds = 0;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});

}  // namespace tribill
