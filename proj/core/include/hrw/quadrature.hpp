#pragma once

// Double-precision adaptive Simpson quadrature, used only as an independent
// oracle for convergence studies.

#include <hrw/expr.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>

namespace hrw {

struct quadrature_result {
    double value = 0;
    bool converged = false;
    std::size_t intervals = 0;
    std::string diagnostics;
};

quadrature_result adaptive_simpson(const std::function<double(double)> &f, double a, double b, double tolerance = 1e-10,
                                   std::size_t max_intervals = 1000000);

quadrature_result adaptive_simpson(const expr &f, const std::string &variable, double a, double b,
                                   double tolerance = 1e-10, std::size_t max_intervals = 1000000);

// Value and first derivative with respect to `variable` at x, by
// forward-mode dual numbers in double precision. Other variables are read
// from `others`.
std::pair<double, double> eval_double_dual(const expr &f, const std::string &variable, double x,
                                           const std::map<std::string, double, std::less<>> &others = {});

} // namespace hrw
