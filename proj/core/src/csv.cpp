#include "rmncs/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rmncs/error.hpp"

namespace rmncs::csv {

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

bool is_blank(const Record& r) {
    return r.fields.size() == 1 && r.fields.front().empty();
}

} // namespace

std::vector<Record> parse(std::string_view text, const std::string& source) {
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }

    std::vector<Record> records;
    Record current;
    std::string field;
    std::size_t line = 1;
    current.line = line;

    enum class State { field_start, unquoted, quoted, quote_in_quoted };
    State state = State::field_start;

    auto end_record = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        if (!is_blank(current)) {
            records.push_back(std::move(current));
        }
        current = Record{};
        state = State::field_start;
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        const char ch = text[pos];
        switch (state) {
        case State::field_start:
        case State::unquoted:
            if (ch == '"' && state == State::field_start) {
                state = State::quoted;
            } else if (ch == ',') {
                current.fields.push_back(std::move(field));
                field.clear();
                state = State::field_start;
            } else if (ch == '\n' || ch == '\r') {
                if (ch == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
                    ++pos;
                }
                end_record();
                current.line = ++line;
            } else if (ch == '"') {
                fail(source, line, "unexpected quote inside unquoted field");
            } else {
                field.push_back(ch);
                state = State::unquoted;
            }
            break;
        case State::quoted:
            if (ch == '"') {
                state = State::quote_in_quoted;
            } else {
                if (ch == '\n') {
                    ++line;
                }
                field.push_back(ch);
            }
            break;
        case State::quote_in_quoted:
            if (ch == '"') {
                field.push_back('"');
                state = State::quoted;
            } else if (ch == ',') {
                current.fields.push_back(std::move(field));
                field.clear();
                state = State::field_start;
            } else if (ch == '\n' || ch == '\r') {
                if (ch == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
                    ++pos;
                }
                end_record();
                current.line = ++line;
            } else {
                fail(source, line, "unexpected character after closing quote");
            }
            break;
        }
    }

    if (state == State::quoted) {
        fail(source, current.line, "unterminated quoted field");
    }
    if (state != State::field_start || !current.fields.empty()) {
        end_record();
    }
    return records;
}

std::vector<Record> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), path.string());
}

const std::string Table::empty_;

Table::Table(std::vector<Record> records, const std::string& source,
             const std::vector<std::string>& required, const std::vector<std::string>& optional)
    : source_(source) {
    if (records.empty()) {
        throw DataError(source + ": missing header row");
    }
    header_ = std::move(records.front().fields);
    const std::size_t header_line = records.front().line;
    for (const auto& name : header_) {
        const bool known = std::ranges::find(required, name) != required.end() ||
                           std::ranges::find(optional, name) != optional.end();
        if (!known) {
            fail(source, header_line, "unknown column '" + name + "'");
        }
        if (std::ranges::count(header_, name) > 1) {
            fail(source, header_line, "duplicate column '" + name + "'");
        }
    }
    for (const auto& name : required) {
        if (!has_column(name)) {
            fail(source, header_line, "missing required column '" + name + "'");
        }
    }
    rows_.assign(std::make_move_iterator(records.begin() + 1),
                 std::make_move_iterator(records.end()));
    for (const auto& row : rows_) {
        if (row.fields.size() != header_.size()) {
            fail(source, row.line,
                 "expected " + std::to_string(header_.size()) + " fields, found " +
                     std::to_string(row.fields.size()));
        }
    }
}

bool Table::has_column(std::string_view column) const {
    return std::ranges::find(header_, column) != header_.end();
}

const std::string& Table::get(const Record& row, std::string_view column) const {
    const auto it = std::ranges::find(header_, column);
    if (it == header_.end()) {
        return empty_;
    }
    return row.fields[static_cast<std::size_t>(it - header_.begin())];
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char ch : field) {
        if (ch == '"') {
            out.push_back('"');
        }
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        out << escape(fields[i]);
    }
    out << '\n';
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf.data(), end);
}

} // namespace rmncs::csv
