#pragma once

#include <cstddef>

namespace mathieu {

/// Explicit budgets for the enumeration-heavy operations. Exceeding a budget
/// raises errc::too_large; nothing is ever silently truncated.
struct budget {
    std::size_t max_scan_elements = std::size_t(1) << 20; // exhaustive element scans
    std::size_t max_table_elements = 4096;                // brute-force product tables
    std::size_t max_subspace_elements = 10000;            // |R|^dim cap for subspace enumeration
    std::size_t max_subspace_dim = 4;                     // dim cap for subspace enumeration
    std::size_t max_steps = 1000000;                      // power-cycle multiplications
};

} // namespace mathieu
