#pragma once

#include <string>
#include <vector>

namespace listmatch {

enum class CheckStatus { pass, fail, finding };

std::string to_string(CheckStatus status);

// Machine-readable outcome of one theorem/lemma/conjecture check.
// status is pass iff margin >= 0 under the claim's stated tolerance;
// findings flag permitted deviations (small n, the degenerate law).
struct VerificationReport {
    std::string claim_id;
    std::string scope;
    CheckStatus status = CheckStatus::pass;
    double margin = 0.0;
    std::vector<std::string> artifacts;
    std::vector<std::string> notes;

    std::string to_text() const;
};

}  // namespace listmatch
