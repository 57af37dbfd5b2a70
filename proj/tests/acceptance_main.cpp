// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fail.
// Usage: acceptance [DATA_DIR] [THREADS]

#include <cstdlib>
#include <iostream>

#include "pgrp/acceptance.hpp"
#include "pgrp/error.hpp"

int main(int argc, char** argv) {
    pgrp::AcceptanceOptions opts;
    opts.data_dir = argc > 1 ? argv[1] : PGRP_DATA_DIR;
    if (argc > 2) opts.threads = static_cast<unsigned>(std::strtoul(argv[2], nullptr, 10));
    try {
        const auto run = pgrp::run_acceptance(opts);
        for (const auto& c : run.criteria)
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << "  " << c.detail << "\n";
        return run.all_passed() ? 0 : 1;
    } catch (const pgrp::Error& e) {
        std::cout << "FAIL setup  " << e.what() << "\n";
        return 2;
    }
}
