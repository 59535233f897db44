#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oscint {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string details;
};

// Built-in verification suite. Each criterion is self-contained and
// deterministic; `details` carries the worst observed gaps so a failure
// report is actionable without rerunning.
CriterionResult verify_lemma1();
CriterionResult verify_detection_1d();
CriterionResult verify_pole_order();
CriterionResult verify_dictionary();
CriterionResult verify_mc_2d(std::int64_t n_samples = 10'000'000);
CriterionResult verify_exact_algebra();

// name: lemma1, detection-1d, pole-order, dictionary, mc-2d, exact-algebra,
// or all. Unknown names throw DomainError.
std::vector<CriterionResult> run_acceptance(const std::string& name);

}  // namespace oscint
