#pragma once

// Gauges, Cousin partitions and gauge Riemann sums on an interval.

#include <hrw/config.hpp>
#include <hrw/partition.hpp>

#include <string>
#include <string_view>

namespace hrw {

struct gauge {
    // delta(x) > 0 on the interval.
    expr radius;
    std::string variable = "x";
};

enum class gauge_mode { tag_in_cell, mcshane };

std::string_view to_string(gauge_mode mode);

struct cousin_options {
    unsigned max_depth = 64;
    unsigned precision = default_precision;
};

// Left-to-right bisection of [a, b]. A cell [u, v] is accepted with tag x
// when u >= x - delta(x) and v <= x + delta(x). Candidate tags: u, then the
// midpoint; in McShane mode the previous tag is tried first. DepthExceeded
// past max_depth, DomainError when delta is not positive at a candidate.
tagged_partition cousin_partition(const gauge &g, const interval &ab, gauge_mode mode = gauge_mode::tag_in_cell,
                                  const cousin_options &opts = {});

// True when every cell lies in its tag's gauge ball.
bool is_delta_fine(const tagged_partition &tp, const gauge &g, unsigned precision = default_precision);

rational gauge_sum(const expr &f, const interval &ab, const gauge &g, gauge_mode mode = gauge_mode::tag_in_cell,
                   const cousin_options &opts = {}, std::string_view variable = "x");

} // namespace hrw
