#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace crashspat {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column position for `name`, or -1 when absent.
    int column_index(std::string_view name) const;
};

// RFC 4180 parser: quoted fields, doubled quotes, CRLF or LF line ends.
// Quotes inside unquoted fields are taken literally; an unterminated quoted
// field at end of input is a parse error. Blank lines are skipped. Rows may
// be ragged; width checks are the caller's job.
CsvTable parse_csv(std::string_view text);

// Serializes with LF line ends, quoting only fields that need it. The
// parse -> write -> parse round trip preserves every field byte-exactly.
std::string write_csv(const CsvTable& table);

std::string csv_escape_field(std::string_view field);

} // namespace crashspat
