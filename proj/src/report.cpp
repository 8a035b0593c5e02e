#include "pcurv/report.hpp"

namespace pcurv {

const char* to_string(CheckStatus status) noexcept {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::PassPanel: return "pass (panel)";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "unknown";
}

bool ValidationReport::passed() const noexcept {
    for (const auto& c : checks)
        if (!c.ok()) return false;
    return true;
}

const CheckResult* ValidationReport::find(const std::string& name) const noexcept {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

void ValidationReport::append(const ValidationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

CheckResult CheckBuilder::finish() const {
    CheckResult r;
    r.name = name_;
    r.section = section_;
    r.cases = cases_;
    r.witness = witness_;
    r.note = note_;
    if (failed_)
        r.status = CheckStatus::Fail;
    else if (cases_ == 0)
        r.status = CheckStatus::Skipped;
    else
        r.status = panel_ ? CheckStatus::PassPanel : CheckStatus::Pass;
    return r;
}

}  // namespace pcurv
