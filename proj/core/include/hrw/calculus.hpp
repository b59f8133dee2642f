#pragma once

// Limits, derivatives, jets, increments, tangents, curvature and Jacobians
// obtained by evaluating expressions on infinitesimal probes and taking
// standard parts.

#include <hrw/config.hpp>
#include <hrw/expr.hpp>
#include <hrw/hyperreal.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hrw {

using vec = std::vector<rational>;

// Taylor coefficients a_k = f^(k)(x0) / k!, k = 0..K.
struct jet {
    rational base_point;
    std::vector<rational> coefficients;

    std::size_t order() const noexcept
    {
        return coefficients.size() - 1;
    }
};

// Requires 0 <= K < window. NonSmoothAtPoint when the expansion at x0 has a
// fractional exponent or abs() meets a zero argument; DomainError when f has
// a pole or is undefined on the monad of x0.
jet taylor_jet(const expr &f, std::string_view var, const rational &x0, unsigned order, const field_config &cfg = {});

// n! * a_n.
rational derivative(const expr &f, std::string_view var, const rational &x0, unsigned n, const field_config &cfg = {});

// sum_k (-1)^k C(n,k) f(c + (n-k) h).
hyperreal nth_increment(const expr &f, std::string_view var, const rational &c, const hyperreal &h, unsigned n,
                        const field_config &cfg = {});

enum class limit_method { field_evaluation, numeric_fallback };

std::string_view to_string(limit_method m);

struct limit_result {
    // Set iff the limit exists.
    std::optional<extended_real> value;
    // One-sided values; empty when that side could not be evaluated or the
    // probes disagreed.
    std::optional<extended_real> left;
    std::optional<extended_real> right;
    limit_method method = limit_method::field_evaluation;
    // Multivariate limits only probe coordinate and diagonal directions.
    bool directional_only = false;
    std::string diagnostics;

    bool exists() const noexcept
    {
        return value.has_value();
    }
};

// Thresholds of the large-n fallback used when the infinite substitution
// leaves the computable fragment.
struct sequence_fallback {
    unsigned k_min = 10;
    unsigned k_max = 40;
    rational cauchy_tolerance = rational(1, 100000000);
    rational divergence_bound = rational(1000000000000);
};

// Substitutes n = 1/eps and takes the standard part; on
// TranscendentalOnUnlimited evaluates S(2^k) for k in [k_min, k_max].
limit_result seq_limit(const expr &s, std::string_view var = "n", const field_config &cfg = {},
                       const sequence_fallback &fallback = {});

// Canonical monad probes: {eps, eps^2, 3/2 eps} on the right and their
// negatives on the left.
std::vector<hyperreal> right_probes(const field_config &cfg);
std::vector<hyperreal> left_probes(const field_config &cfg);

limit_result fn_limit(const expr &f, std::string_view var, const rational &p, const field_config &cfg = {});
// Coordinate and diagonal directions only; result is flagged directional_only.
limit_result fn_limit(const expr &f, const std::vector<std::string> &vars, const vec &p, const field_config &cfg = {});

// st f(p + h) == f(p) on every probe. DomainError when f(p) is undefined.
bool continuity_check(const expr &f, std::string_view var, const rational &p, const field_config &cfg = {});

struct curve_def {
    std::vector<expr> components;
    std::string parameter = "t";

    std::size_t dimension() const noexcept
    {
        return components.size();
    }
};

// c'(t0) / |c'(t0)|. ZeroVelocity when c'(t0) = 0.
vec unit_tangent(const curve_def &c, const rational &t0, const field_config &cfg = {});
// st(T . (c(t0+eps) - c(t0)) / |c(t0+eps) - c(t0)|), computed in the series
// field; +-1 exactly when T is a unit tangent.
rational tangent_certificate(const curve_def &c, const rational &t0, const vec &direction, const field_config &cfg = {});
rational tangent_certificate(const curve_def &c, const rational &t0, const field_config &cfg = {});

struct curvature_result {
    rational kappa;
    // Empty when straight_line.
    vec unit_normal;
    std::optional<vec> center;
    std::optional<rational> radius;
    bool straight_line = false;
    // The osculating circle matches the curve to second order at t0.
    bool osculation_verified = false;
};

curvature_result curvature(const curve_def &c, const rational &t0, const field_config &cfg = {});

struct jacobian_result {
    std::vector<vec> matrix;
    bool residual_order_ok = false;
};

jacobian_result jacobian(const std::vector<expr> &f, const std::vector<std::string> &vars, const vec &point,
                         const field_config &cfg = {});

struct kinematics_result {
    rational velocity;
    rational acceleration;
};

kinematics_result kinematics(const expr &position, std::string_view var, const rational &t0, const field_config &cfg = {});

} // namespace hrw
