#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fsorf {

struct CheckResult {
    std::string name;
    double expected = 0.0;
    double got = 0.0;
    double tolerance = 0.0;  // relative unless the name says otherwise
    bool passed = false;
    std::string note;        // set when the check could not be evaluated
};

/// identities, mixtures, oracles, reference-values
const std::vector<std::string>& validation_suites();

/// Runs one suite, or every suite for "all". Throws ValidationError on an unknown name.
std::vector<CheckResult> run_validate(std::string_view suite);

/// Header `name,expected,got,tolerance,status` then one line per check.
void write_report(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace fsorf
