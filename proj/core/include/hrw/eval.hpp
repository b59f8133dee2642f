#pragma once

// Evaluation of expressions over the series field, over exact rationals and
// (for quadrature oracles only) over doubles.

#include <hrw/config.hpp>
#include <hrw/expr.hpp>
#include <hrw/hyperreal.hpp>

#include <functional>
#include <map>
#include <string>

namespace hrw {

using hyper_env = std::map<std::string, hyperreal, std::less<>>;
using real_env = std::map<std::string, rational, std::less<>>;
using double_env = std::map<std::string, double, std::less<>>;

struct eval_options {
    // Refuse abs() at arguments whose standard part is 0 (NonSmoothAtPoint).
    bool require_smooth = false;
};

// Structural recursion over hyperreal operations. Errors carry the source
// offset of the failing node.
hyperreal eval_hyper(const expr &e, const hyper_env &env, const field_config &cfg, eval_options opts = {});

// Exact rational evaluation; transcendental calls are approximated to
// 10^-precision.
rational eval_real(const expr &e, const real_env &env, unsigned precision = default_precision);

double eval_double(const expr &e, const double_env &env);

} // namespace hrw
