#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fddestab/classifier.hpp"

namespace fddestab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOverflow = 3;

/// Runs one fdde-stab invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Region chart over a rectangular (a, b) grid, codes per Region.
struct DiagramGrid {
    double a_min, a_max, b_min, b_max;
    int n_a, n_b;
    std::vector<std::uint8_t> codes;  ///< row-major: index = j_b * n_a + i_a

    double a_at(int i) const { return a_min + (a_max - a_min) * i / (n_a - 1); }
    double b_at(int j) const { return b_min + (b_max - b_min) * j / (n_b - 1); }
    Region at(int i, int j) const { return static_cast<Region>(codes[static_cast<std::size_t>(j) * n_a + i]); }
};

/// Evaluated in parallel over rows; output does not depend on `threads`.
DiagramGrid compute_diagram(double alpha, double a_min, double a_max, double b_min, double b_max, int n_a, int n_b,
                            unsigned threads = 0);

/// 17 significant digits, '.' decimal separator.
std::string format_double(double x);

}  // namespace fddestab::cli
