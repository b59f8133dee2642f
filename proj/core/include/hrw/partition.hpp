#pragma once

// Rectangles, partitions and tag rules for the finite-scale sums.

#include <hrw/expr.hpp>
#include <hrw/rational.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hrw {

using point = std::vector<rational>;

struct interval {
    rational lo;
    rational hi;

    friend bool operator==(const interval &, const interval &) = default;
};

class rect
{
public:
    // Throws domain_error unless every axis has lo < hi.
    explicit rect(std::vector<interval> axes);
    static rect unit(std::size_t dimension);

    std::size_t dimension() const noexcept
    {
        return m_axes.size();
    }
    const interval &axis(std::size_t i) const
    {
        return m_axes.at(i);
    }
    const std::vector<interval> &axes() const noexcept
    {
        return m_axes;
    }
    rational volume() const;
    point min_vertex() const;
    point center() const;
    bool contains(const point &p) const;

    friend bool operator==(const rect &, const rect &) = default;

private:
    std::vector<interval> m_axes;
};

// Variable names bound to the coordinates of a point: x, y, z for up to three
// axes, x1..xn beyond.
std::vector<std::string> axis_variables(std::size_t dimension);

class partition_spec
{
public:
    // m_i equal cells on each axis.
    static partition_spec simple(std::vector<unsigned long> cells_per_axis);
    static partition_spec simple_uniform(std::size_t dimension, unsigned long cells);
    // Cells of width at most `mesh` on every axis of r: m_i = ceil(len_i / mesh).
    static partition_spec from_mesh(const rect &r, const rational &mesh);
    // Per-axis sorted breakpoints including both endpoints of the rectangle.
    static partition_spec explicit_breakpoints(std::vector<std::vector<rational>> breakpoints);

    bool is_simple() const noexcept
    {
        return m_breakpoints.empty();
    }
    std::size_t dimension() const noexcept;

    // Breakpoints of each axis of r; throws domain_error when the spec does
    // not match r.
    std::vector<std::vector<rational>> breakpoints(const rect &r) const;

    // Halves every cell on every axis.
    partition_spec refined() const;

private:
    std::vector<unsigned long> m_cells;
    std::vector<std::vector<rational>> m_breakpoints;
};

enum class tag_rule { corner_nearest_origin, center, min_vertex, seeded_random };

std::string_view to_string(tag_rule rule);
std::optional<tag_rule> tag_rule_from_name(std::string_view name);

struct tagging {
    tag_rule rule = tag_rule::min_vertex;
    std::uint64_t seed = 0;
};

// Tag of `cell` under the rule; seeded-random tags depend only on
// (seed, cell index), never on iteration order.
point tag_of(const rect &cell, std::uint64_t cell_index, const tagging &t);

// Cells of a partition, enumerated lazily in row-major order (last axis
// fastest).
class grid
{
public:
    grid(const rect &r, const partition_spec &p);

    std::size_t dimension() const noexcept
    {
        return m_breaks.size();
    }
    std::uint64_t cell_count() const noexcept
    {
        return m_count;
    }
    const std::vector<rational> &breaks(std::size_t axis) const
    {
        return m_breaks.at(axis);
    }
    // Largest cell width over all axes.
    rational mesh() const;

    rect cell(const std::vector<std::size_t> &index) const;
    rect cell(std::uint64_t flat) const;
    std::vector<std::size_t> unflatten(std::uint64_t flat) const;

    void for_each(const std::function<void(std::uint64_t, const std::vector<std::size_t> &, const rect &)> &fn) const;

private:
    std::vector<std::vector<rational>> m_breaks;
    std::uint64_t m_count = 1;
};

struct tagged_partition {
    std::vector<rect> cells;
    std::vector<point> tags;
    std::optional<tag_rule> rule;
    // McShane partitions allow tags outside their cells.
    bool tags_may_leave_cells = false;

    std::size_t size() const noexcept
    {
        return cells.size();
    }
};

tagged_partition make_tagged(const rect &r, const partition_spec &p, const tagging &t);

// Region J = { p in bounding : membership(p) <= 0 }.
struct region {
    rect bounding;
    expr membership;
    std::optional<rational> exact_content;
};

// Evaluates an expression at a point bound to axis_variables(dimension).
class point_function
{
public:
    point_function(expr f, std::size_t dimension, unsigned precision);
    point_function(expr f, std::vector<std::string> variables, unsigned precision);

    rational operator()(const point &p) const;
    const expr &expression() const noexcept
    {
        return m_expr;
    }

private:
    expr m_expr;
    std::vector<std::string> m_vars;
    unsigned m_precision;
};

} // namespace hrw
