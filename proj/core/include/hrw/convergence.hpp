#pragma once

// Mesh-indexed convergence studies of the finite sums against an oracle.

#include <hrw/expr.hpp>
#include <hrw/rational.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hrw {

struct oracle {
    std::optional<rational> value;
    // "closed-form", "adaptive-simpson" or "none".
    std::string source = "none";
    std::string diagnostics;
};

oracle closed_form_oracle(const rational &value);

// Adaptive Simpson (tolerance 1e-10, at most 1e6 intervals) of f over
// [a, b]; the value is rounded to a multiple of 1e-15. A failed quadrature
// yields an empty value with diagnostics.
oracle quadrature_oracle(const expr &f, const std::string &variable, const rational &a, const rational &b);
oracle quadrature_oracle(const std::function<double(double)> &f, const rational &a, const rational &b);

struct convergence_row {
    rational mesh;
    rational value;
    std::optional<rational> error;
};

struct convergence_report {
    std::string operation;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<convergence_row> rows;
    rational estimate;
    // Order used for the extrapolation; empty with fewer than two rows.
    std::optional<unsigned> order;
    struct oracle oracle;
    // |last value - oracle|.
    std::optional<rational> error;
    std::vector<std::string> notes;
    std::string label = "finite-scale emulation";
};

// The mesh reported for each row is what `target` returns alongside its
// value (the actual widest cell), so requested and realized meshes may
// differ.
using mesh_target = std::function<std::pair<rational, rational>(const rational &requested_mesh)>;

// Meshes must be strictly decreasing.
convergence_report converge_study(std::string operation, std::vector<std::pair<std::string, std::string>> params,
                                  const std::vector<rational> &meshes, const mesh_target &target, struct oracle o);

// Richardson extrapolation of the last rows: order p estimated from the last
// three values, rounded and clamped to [1, 4] (1 with only two rows).
std::pair<rational, std::optional<unsigned>> richardson(const std::vector<convergence_row> &rows);

} // namespace hrw
