#include <hrw/config.hpp>
#include <hrw/errors.hpp>

#include <utility>

namespace hrw {

std::string_view name(error_kind kind)
{
    switch (kind) {
        case error_kind::division_by_zero:
            return "DivisionByZero";
        case error_kind::non_positive_leading:
            return "NonPositiveLeading";
        case error_kind::transcendental_on_unlimited:
            return "TranscendentalOnUnlimited";
        case error_kind::domain_error:
            return "DomainError";
        case error_kind::not_infinitesimal:
            return "NotInfinitesimal";
        case error_kind::non_smooth_at_point:
            return "NonSmoothAtPoint";
        case error_kind::unsupported_node:
            return "UnsupportedNode";
        case error_kind::zero_velocity:
            return "ZeroVelocity";
        case error_kind::order_violation:
            return "OrderViolation";
        case error_kind::negative_radius:
            return "NegativeRadius";
        case error_kind::zero_mass:
            return "ZeroMass";
        case error_kind::depth_exceeded:
            return "DepthExceeded";
        case error_kind::unknown_functional:
            return "UnknownFunctional";
        case error_kind::parse_error:
            return "ParseError";
    }
    return "Unknown";
}

error::error(error_kind kind, const std::string &message, std::optional<std::size_t> position)
    : std::runtime_error(message), m_kind(kind), m_position(position)
{
}

error error::with_position(std::size_t pos) const
{
    return error(m_kind, what(), m_position ? m_position : std::optional<std::size_t>(pos));
}

namespace {

std::string parse_message(std::size_t position, const std::string &expected, const std::string &found)
{
    return "offset " + std::to_string(position) + ": expected " + expected + ", found " + found;
}

} // namespace

parse_error::parse_error(std::size_t position, std::string expected, std::string found)
    : error(error_kind::parse_error, parse_message(position, expected, found), position),
      m_expected(std::move(expected)), m_found(std::move(found))
{
}

void raise(error_kind kind, const std::string &message)
{
    throw error(kind, message);
}

void field_config::validate() const
{
    if (sgn(window) <= 0) {
        raise(error_kind::domain_error, "window must be positive");
    }
    if (precision < 1) {
        raise(error_kind::domain_error, "precision must be at least 1");
    }
}

} // namespace hrw
