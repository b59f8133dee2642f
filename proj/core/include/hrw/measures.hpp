#pragma once

// Areas, volumes, lengths, masses, work and related quantities as exact
// finite sums at a given number of cells.

#include <hrw/calculus.hpp>
#include <hrw/config.hpp>
#include <hrw/partition.hpp>
#include <hrw/sums.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hrw {

struct lab_options {
    tagging tags;
    unsigned precision = default_precision;
};

// Cells of width at most `mesh` on [a, b].
unsigned long cells_for_mesh(const interval &ab, const rational &mesh);

// Riemann sum of g - f in x. OrderViolation when f > g at a breakpoint or tag.
rational area_between(const expr &f, const expr &g, const interval &ab, unsigned long cells, const lab_options &opts = {});

// pi f^2 and 2 pi f sqrt(1 + f'^2) in x. NegativeRadius when f < 0 at a
// breakpoint or tag; f' comes from the jet of f at each tag.
rational volume_of_revolution(const expr &f, const interval &ab, unsigned long cells, const lab_options &opts = {});
rational surface_of_revolution(const expr &f, const interval &ab, unsigned long cells, const lab_options &opts = {});

struct length_result {
    // Sum of chord lengths over the breakpoints.
    rational polygonal;
    // Riemann sum of |c'(t)|.
    rational integral;
};

length_result curve_length(const curve_def &c, const interval &ab, unsigned long cells, const lab_options &opts = {});

struct work_result {
    // sum F(c(t'_j)) . (c(t_j) - c(t_{j-1})).
    rational chord;
    // Riemann sum of sum_i F_i(c(t)) c_i'(t).
    rational integrand;
};

// F is a function of axis_variables(dimension of c). Center tags unless
// opts says otherwise.
work_result line_integral_work(const std::vector<expr> &field, const curve_def &c, const interval &ab,
                               unsigned long cells, const lab_options &opts = {.tags = {tag_rule::center, 0}});

// Riemann sum of F(t).
rational impulse(const expr &force, const interval &ab, unsigned long cells, const lab_options &opts = {},
                 const std::string &variable = "t");

struct mass_result {
    rational mass;
    // First moments: integral of x_i rho over J, one per axis.
    std::vector<rational> moments;
    cell_counts counts;

    // moments / mass; ZeroMass when the mass sum vanishes.
    point centroid() const;
};

mass_result mass_and_moments(const expr &rho, const region &j, const partition_spec &p,
                             unsigned precision = default_precision);

// Inner sum of rho * integrand, e.g. integrand x^2 + y^2 for the polar
// moment of inertia.
rational moment_of_inertia(const expr &rho, const expr &integrand, const region &j, const partition_spec &p,
                           unsigned precision = default_precision);

enum class morley_edge { outer, inner };

// Sum over the n rings of the disc of radius a of 2 pi a^4 r^3 / n^4, with
// r = p at the outer and p - 1 at the inner edge of ring p, and pi replaced
// by approx_pi(precision).
rational morley_strip_sum(const rational &a, unsigned long n, morley_edge edge, unsigned precision = default_precision);

// Closed forms (pi a^4 / 2)(1 + 1/n)^2 and (pi a^4 / 2)(1 - 1/n)^2 with the
// same pi approximation.
rational morley_closed_form(const rational &a, unsigned long n, morley_edge edge, unsigned precision = default_precision);

// Built-in set functions with exact per-cell values: "integral" of one
// polynomial generator, "area-between" two polynomial generators (lower,
// upper).
struct set_functional {
    std::string name;
    std::vector<expr> generators;
    std::string variable = "x";
};

struct supernear_row {
    rational mesh;
    // max over cells and over p in {endpoints, midpoint} of |B(S)/v(S) - f(p)|.
    rational max_deviation;
};

struct supernear_report {
    std::vector<supernear_row> rows;
    // Deviations never increase and end below where they started (or are
    // all zero).
    bool decreasing = false;
    // Deviation/mesh at the finest mesh is at most twice its value at the
    // coarsest, as expected when the deviation is O(mesh).
    bool toward_zero = false;
};

// UnknownFunctional for names other than the built-ins.
supernear_report supernearness_probe(const set_functional &b, const expr &f, const interval &ab,
                                     const std::vector<rational> &meshes, unsigned precision = default_precision);

} // namespace hrw
