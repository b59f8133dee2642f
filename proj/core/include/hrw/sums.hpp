#pragma once

// Exact finite sums over partitions: Riemann, Darboux, inner-rectangle and
// Riemann-Stieltjes.

#include <hrw/config.hpp>
#include <hrw/partition.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hrw {

struct sum_options {
    tagging tags;
    unsigned precision = default_precision;
    // Names bound to the coordinates; axis_variables(dimension) when empty.
    std::vector<std::string> variables;
};

// sum f(tag_q) v(cell_q).
rational riemann_sum(const expr &f, const rect &r, const partition_spec &p, const sum_options &opts = {});
rational riemann_sum(const expr &f, const tagged_partition &tp, const sum_options &opts = {});

struct darboux_options {
    // Grid points per axis in each cell, vertices included (>= 2).
    unsigned samples = 5;
    // Also sample the tags of this rule, so L <= S <= U holds for it even
    // when its tags fall between grid points.
    std::optional<tagging> include_tags;
    unsigned precision = default_precision;
    std::vector<std::string> variables;
};

struct darboux_result {
    rational lower;
    rational upper;
    // Cells whose sampled extrema were not attained at a vertex; their
    // bounds are estimates.
    std::uint64_t nonmonotone_cells = 0;
};

darboux_result darboux_bounds(const expr &f, const rect &r, const partition_spec &p, const darboux_options &opts = {});

struct cell_counts {
    std::uint64_t inner = 0;
    std::uint64_t boundary = 0;
    std::uint64_t exterior = 0;

    std::uint64_t total() const noexcept
    {
        return inner + boundary + exterior;
    }
};

struct inner_result {
    // One value per integrand: sum over inner cells of f(min vertex) v(cell).
    std::vector<rational> values;
    cell_counts counts;
    rational inner_volume;
    rational boundary_volume;
};

// A cell is inner when its vertices and center all satisfy membership <= 0,
// exterior when none do, boundary otherwise.
inner_result inner_sums(const std::vector<expr> &fs, const region &j, const partition_spec &p,
                        unsigned precision = default_precision);

inline inner_result inner_sum(const expr &f, const region &j, const partition_spec &p,
                              unsigned precision = default_precision)
{
    return inner_sums({f}, j, p, precision);
}

// sum f(tag_i) (phi(t_i) - phi(t_{i-1})) over [a, b].
rational riemann_stieltjes_sum(const expr &f, const expr &phi, const interval &ab, const partition_spec &p,
                               const sum_options &opts = {});

} // namespace hrw
