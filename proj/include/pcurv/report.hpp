#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pcurv {

enum class CheckStatus {
    Pass,       // verified exactly on all of a finite, complete set of cases
    PassPanel,  // identity in an arbitrary f, verified on a deterministic + seeded panel
    Fail,
    Skipped,
};

const char* to_string(CheckStatus status) noexcept;

struct CheckResult {
    std::string name;
    std::string section;  // grouping, e.g. "algebroid", "p-structure", "anchor-restricted"
    CheckStatus status = CheckStatus::Pass;
    std::size_t cases = 0;  // number of instances checked
    std::string witness;    // reproducible description of the first failure
    std::string note;

    bool ok() const noexcept { return status != CheckStatus::Fail; }
};

/// Outcome of a validator: one entry per axiom or identity.
struct ValidationReport {
    std::string title;
    std::vector<CheckResult> checks;

    bool passed() const noexcept;
    const CheckResult* find(const std::string& name) const noexcept;
    void append(const ValidationReport& other);
};

/// Accumulates one check over many cases, keeping the first witness.
class CheckBuilder {
public:
    CheckBuilder(std::string name, std::string section, bool panel = false)
        : name_(std::move(name)), section_(std::move(section)), panel_(panel) {}

    /// Record one case; `describe` is only called on the first failure.
    template <class Describe>
    void record(bool ok, Describe&& describe) {
        ++cases_;
        if (!ok && !failed_) {
            failed_ = true;
            witness_ = describe();
        }
    }
    void note(std::string text) { note_ = std::move(text); }
    bool failed() const noexcept { return failed_; }

    CheckResult finish() const;

private:
    std::string name_;
    std::string section_;
    bool panel_;
    bool failed_ = false;
    std::size_t cases_ = 0;
    std::string witness_;
    std::string note_;
};

}  // namespace pcurv
