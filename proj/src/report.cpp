#include "listmatch/report.hpp"

#include "listmatch/textio.hpp"

namespace listmatch {

std::string to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::finding: return "finding";
    }
    return "unknown";
}

std::string VerificationReport::to_text() const {
    std::string out;
    out += "claim: " + claim_id + "\n";
    out += "scope: " + scope + "\n";
    out += "status: " + to_string(status) + "\n";
    out += "margin: " + format_g(margin) + "\n";
    for (const auto& note : notes) out += "note: " + note + "\n";
    for (const auto& artifact : artifacts) out += "artifact: " + artifact + "\n";
    return out;
}

}  // namespace listmatch
