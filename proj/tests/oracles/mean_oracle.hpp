#pragma once

// Brute-force column means over the selected rows: sums each component with
// a plain long double loop, row by row.

#include <cstdint>
#include <vector>

namespace oracle {

inline std::vector<float> mean_rows(const std::vector<float>& data, std::uint32_t cols,
                                    const std::vector<std::uint32_t>& rows) {
  std::vector<float> out(cols);
  for (std::uint32_t c = 0; c < cols; ++c) {
    long double sum = 0;
    for (auto r : rows) sum += data[static_cast<std::size_t>(r) * cols + c];
    out[c] = static_cast<float>(sum / static_cast<long double>(rows.size()));
  }
  return out;
}

}  // namespace oracle
