#include <hrw/report.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <sstream>

namespace hrw {

namespace {

std::string pad(const std::string &s, std::size_t width)
{
    return s.size() >= width ? s + "  " : s + std::string(width - s.size() + 2, ' ');
}

nlohmann::ordered_json optional_rational(const std::optional<rational> &q)
{
    return q ? nlohmann::ordered_json(to_string(*q)) : nlohmann::ordered_json(nullptr);
}

} // namespace

std::string render_text(const convergence_report &r, unsigned digits)
{
    std::ostringstream out;
    out << r.operation << " (" << r.label << ")\n";
    for (const auto &[key, value] : r.params) {
        out << "  " << key << " = " << value << '\n';
    }
    std::vector<std::array<std::string, 3>> cells{{"mesh", "value", "error"}};
    for (const auto &row : r.rows) {
        cells.push_back({to_string(row.mesh), to_decimal(row.value, digits),
                         row.error ? to_decimal(*row.error, digits) : "-"});
    }
    std::array<std::size_t, 3> width{};
    for (const auto &c : cells) {
        for (std::size_t i = 0; i < 3; ++i) {
            width[i] = std::max(width[i], c[i].size());
        }
    }
    for (const auto &c : cells) {
        std::string line = pad(c[0], width[0]) + pad(c[1], width[1]) + c[2];
        out << line << '\n';
    }
    out << "estimate: " << to_decimal(r.estimate, digits);
    if (r.order) {
        out << " (Richardson, order " << *r.order << ")";
    }
    out << '\n';
    out << "oracle: " << (r.oracle.value ? to_decimal(*r.oracle.value, digits) : "none") << " (" << r.oracle.source
        << ")\n";
    out << "error: " << (r.error ? to_decimal(*r.error, digits) : "-") << '\n';
    for (const auto &note : r.notes) {
        out << "note: " << note << '\n';
    }
    return out.str();
}

std::string render_json(const convergence_report &r)
{
    nlohmann::ordered_json j;
    j["operation"] = r.operation;
    j["label"] = r.label;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto &[key, value] : r.params) {
        params[key] = value;
    }
    j["params"] = params;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"mesh", to_string(row.mesh)}, {"value", to_string(row.value)}, {"error", optional_rational(row.error)}});
    }
    j["rows"] = rows;
    j["estimate"] = to_string(r.estimate);
    j["order"] = r.order ? nlohmann::ordered_json(*r.order) : nlohmann::ordered_json(nullptr);
    j["oracle"] = optional_rational(r.oracle.value);
    j["oracle_source"] = r.oracle.source;
    j["error"] = optional_rational(r.error);
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

} // namespace hrw
