#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hrw {

// Named failure cases surfaced by every module. The CLI maps parse_error to
// exit status 2 and everything else to exit status 1.
enum class error_kind {
    division_by_zero,
    non_positive_leading,
    transcendental_on_unlimited,
    domain_error,
    not_infinitesimal,
    non_smooth_at_point,
    unsupported_node,
    zero_velocity,
    order_violation,
    negative_radius,
    zero_mass,
    depth_exceeded,
    unknown_functional,
    parse_error,
};

// CamelCase identifier, e.g. "DivisionByZero".
std::string_view name(error_kind kind);

class error : public std::runtime_error
{
public:
    error(error_kind kind, const std::string &message, std::optional<std::size_t> position = std::nullopt);

    error_kind kind() const noexcept
    {
        return m_kind;
    }
    const std::optional<std::size_t> &position() const noexcept
    {
        return m_position;
    }
    // Returns a copy carrying `pos` unless a position is already attached.
    error with_position(std::size_t pos) const;

private:
    error_kind m_kind;
    std::optional<std::size_t> m_position;
};

class parse_error : public error
{
public:
    parse_error(std::size_t position, std::string expected, std::string found);

    const std::string &expected() const noexcept
    {
        return m_expected;
    }
    const std::string &found() const noexcept
    {
        return m_found;
    }

private:
    std::string m_expected;
    std::string m_found;
};

[[noreturn]] void raise(error_kind kind, const std::string &message);

} // namespace hrw
