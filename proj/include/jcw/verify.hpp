// verify.hpp: the acceptance suite as named checks, shared by `jcwitness
// verify` and the acceptance test binary.

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace jcw {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Called after each check finishes, in id order.
using CheckObserver = std::function<void(const CheckResult&)>;

// Runs all twelve checks. `threads` feeds the figure sweeps (0 = hardware).
std::vector<CheckResult> run_acceptance(unsigned threads = 0, const CheckObserver& observer = {});

// "[PASS] 3 derivative rule: worst 2.1e-10 (0.01 s)"
std::string format_check(const CheckResult& r);

}  // namespace jcw
