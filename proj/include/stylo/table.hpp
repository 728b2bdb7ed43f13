#ifndef STYLO_TABLE_HPP
#define STYLO_TABLE_HPP

#include <optional>
#include <string>
#include <vector>

namespace stylo {

// Column-named table of string cells; the common currency between the
// analysis modules and the TSV/JSON emitters.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

    std::string to_tsv() const;
    std::string to_json() const; // array of objects keyed by column name
};

// Fixed 4-decimal rendering used for every real in emitted tables.
std::string format_real(double x);
std::string format_real(const std::optional<double>& x);

} // namespace stylo

#endif
