#ifndef TLCAT_VERIFY_HPP
#define TLCAT_VERIFY_HPP

#include <string>
#include <vector>

namespace tlcat {

/// One verified property.  detail is empty on success and carries the
/// failure explanation otherwise.
struct CheckResult {
    std::string name;
    bool passed = false;
    double seconds = 0;
    std::string detail;
};

/// Outcome of one property suite.
struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// Names of the property suites, one per library module, in run order.
std::vector<std::string> verify_suite_names();

/// Runs one named suite.  seed feeds the randomized checks; everything else
/// is deterministic.  Throws IndexOutOfRange for an unknown name.
SuiteResult verify_suite(const std::string& name, unsigned seed = 0);

/// Runs every suite in order: the engine behind `verify all`.
std::vector<SuiteResult> verify_all(unsigned seed = 0);

} // namespace tlcat

#endif
