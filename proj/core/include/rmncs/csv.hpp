#ifndef RMNCS_CSV_HPP_
#define RMNCS_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rmncs::csv {

/// One parsed record with the 1-based physical line on which it started.
struct Record {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// RFC-4180 reader: comma delimiter, double-quote quoting with "" escapes,
/// quoted fields may span lines, LF or CRLF line endings. A UTF-8 BOM at the
/// start of the input is skipped. Blank lines are ignored.
/// Throws DataError naming `source` and the line on unterminated quotes or
/// stray characters after a closing quote.
std::vector<Record> parse(std::string_view text, const std::string& source);

std::vector<Record> read_file(const std::filesystem::path& path);

/// A header-checked table: maps required/optional column names to positions.
class Table {
public:
    /// Validates the header row. Every name in `required` must be present;
    /// names in `optional` may be absent. Unknown extra columns are rejected.
    Table(std::vector<Record> records, const std::string& source,
          const std::vector<std::string>& required,
          const std::vector<std::string>& optional = {});

    const std::vector<Record>& rows() const { return rows_; }
    const std::string& source() const { return source_; }

    /// Field value for `column` in `row`; empty string when an optional
    /// column is absent from the file.
    const std::string& get(const Record& row, std::string_view column) const;
    bool has_column(std::string_view column) const;

private:
    std::string source_;
    std::vector<std::string> header_;
    std::vector<Record> rows_;
    static const std::string empty_;
};

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

} // namespace rmncs::csv

#endif // RMNCS_CSV_HPP_
