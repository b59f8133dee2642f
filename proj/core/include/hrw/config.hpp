#pragma once

#include <hrw/rational.hpp>

namespace hrw {

inline constexpr long default_window = 16;
inline constexpr unsigned default_precision = 40;

// Truncation width W of the series field and the decimal precision d used for
// every transcendental approximation (absolute error < 10^-d).
struct field_config {
    rational window{default_window};
    unsigned precision{default_precision};

    // Throws domain_error unless window > 0 and precision >= 1.
    void validate() const;
};

} // namespace hrw
