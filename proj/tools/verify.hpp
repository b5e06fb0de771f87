#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace so3mes::cli {

struct VerifyOptions {
    std::uint64_t seed{1};
    bool quick{false};
    // Scales every tolerance down to nothing so the harness can prove it fails.
    bool inject_tolerance_fault{false};
};

struct PropertyResult {
    std::string name;
    std::size_t samples{0};
    double max_error{0.0};
    double tolerance{0.0};
    bool passed{false};
    std::string note;
};

/// Runs the invariant suite of every library module. The property list and
/// order do not depend on `quick`; only the sample counts shrink.
std::vector<PropertyResult> run_verification(const VerifyOptions& opts);

void write_report(std::ostream& out, const std::vector<PropertyResult>& results);

}  // namespace so3mes::cli
