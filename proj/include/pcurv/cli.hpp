#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pcurv/report.hpp"
#include "pcurv/scenario.hpp"

namespace pcurv {

struct RunOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 12;
    std::uint32_t degree_panel = 3;
    bool allow_nonflat = false;
};

/// Outcome of one command on one scenario (or one suite run).
struct Report {
    std::string command;
    std::string scenario;
    std::string description;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    std::vector<ValidationReport> sections;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, double>> timings_ms;
    int exit_code = 0;

    bool checks_passed() const noexcept;
};

/// command is one of validate, pcurvature, hitchin, descend, rees.
/// Throws InputError for unusable input (unknown command, missing module, p = 2 for descent).
Report run_scenario(const Scenario& scenario, const std::string& command, const RunOptions& options);

/// Jacobson, Deligne, Hochschild, the s_i(D, f) reduction, the Katz-type
/// identity, induced additivity and the iterated-delta identity over the
/// tangent algebroid on n coordinates. p = 2 runs the Hochschild/Deligne subset.
Report identity_suite(std::uint64_t p, std::size_t n, const RunOptions& options);

/// Centrality, p-linearity and the top symbol of iota on the same panels.
Report iota_suite(std::uint64_t p, std::size_t n, const RunOptions& options);

enum class Format { Text, Json };

nlohmann::ordered_json report_json(const Report& report, bool timings);
std::string emit_report(const std::vector<Report>& reports, Format format, bool timings);

/// Full command-line entry point; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pcurv
