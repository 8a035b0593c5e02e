#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcurv/algebroid.hpp"
#include "pcurv/lambda_module.hpp"

namespace pcurv {

inline constexpr int kScenarioSchemaVersion = 1;

enum class Expectation {
    None,            // only contradictions of the descent theorem count as failures
    Descends,        // every Hitchin coefficient must descend
    NotDescendable,  // some coefficient must fail to descend
};

/// A scenario file after parsing. When `rees` is set, `algebroid` and
/// `module` are already the Rees family and `base_*` hold the t = 1 data.
struct Scenario {
    std::string source;  // file name, for messages
    std::string name;
    std::string description;
    std::uint64_t p = 0;
    std::vector<std::string> coordinates;
    bool rees = false;
    AlgebroidPtr base_algebroid;
    ModulePtr base_module;
    AlgebroidPtr algebroid;
    ModulePtr module;  // may be null
    Expectation expect = Expectation::None;
};

/// Throws InputError (ParseError, DimensionError) on malformed input and
/// MathError when a declared shift is not central.
Scenario parse_scenario(const nlohmann::json& doc, const std::string& source = "<memory>");
Scenario load_scenario(const std::string& path);

const char* to_string(Expectation e) noexcept;

}  // namespace pcurv
