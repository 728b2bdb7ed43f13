#include "stylo/table.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace stylo {

std::string Table::to_tsv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out << '\t';
        out << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << '\t';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string Table::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i)
            obj[columns[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << x;
    std::string s = os.str();
    if (s == "-0.0000") s = "0.0000";
    return s;
}

std::string format_real(const std::optional<double>& x) {
    return x ? format_real(*x) : std::string();
}

} // namespace stylo
