#include "ingest/csv.hpp"

#include "core/error.hpp"

namespace crashspat {

int CsvTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_started = false;
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty()) {
                    in_quotes = true;
                    row_started = true;
                } else {
                    field.push_back(c);
                }
                break;
            case ',':
                end_field();
                row_started = true;
                break;
            case '\r':
                if (pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
                if (row_started || !row.empty()) end_row();
                break;
            case '\n':
                if (row_started || !row.empty()) end_row();
                break;
            default:
                field.push_back(c);
                row_started = true;
                break;
        }
    }
    require(!in_quotes, ErrorCode::Parse, "unterminated quoted field at end of input");
    if (row_started || !field.empty() || !row.empty()) end_row();

    CsvTable table;
    if (!rows.empty()) {
        table.header = std::move(rows.front());
        table.rows.assign(std::make_move_iterator(rows.begin() + 1),
                          std::make_move_iterator(rows.end()));
    }
    return table;
}

std::string csv_escape_field(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string write_csv(const CsvTable& table) {
    std::string out;
    auto write_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out.push_back(',');
            out += csv_escape_field(row[i]);
        }
        out.push_back('\n');
    };
    write_row(table.header);
    for (const auto& row : table.rows) write_row(row);
    return out;
}

} // namespace crashspat
