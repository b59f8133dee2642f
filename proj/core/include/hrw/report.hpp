#pragma once

#include <hrw/convergence.hpp>

#include <string>

namespace hrw {

// Aligned plain-text table; decimals rounded to `digits` places.
std::string render_text(const convergence_report &r, unsigned digits = 16);

// {operation, label, params, rows: [{mesh, value, error}], estimate, order,
// oracle, oracle_source, error, notes}. Rationals are "p/q" strings; absent
// values are null. Two-space indentation, trailing newline.
std::string render_json(const convergence_report &r);

} // namespace hrw
