#include "ingest/ingest.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

#include "core/error.hpp"
#include "ingest/csv.hpp"

namespace crashspat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view raw, const char* what) {
    std::string_view t = trim(raw);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw_error(ErrorCode::Parse,
                    std::string("unparseable ") + what + ": '" + std::string(raw) + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    require(ec == std::errc{}, ErrorCode::Internal, "double formatting failed");
    return std::string(buf, ptr);
}

} // namespace

IngestResult parse_crashes(std::string_view csv_text, const ColumnMapping& mapping,
                           RowErrorMode mode) {
    const CsvTable table = parse_csv(csv_text);
    require(!table.header.empty(), ErrorCode::Schema, "input has no header row");

    const int id_col = table.column_index(mapping.id);
    const int lat_col = table.column_index(mapping.lat);
    const int lon_col = table.column_index(mapping.lon);
    const int sev_col = table.column_index(mapping.max_injury);
    require(id_col >= 0, ErrorCode::Schema, "missing column: " + mapping.id);
    require(lat_col >= 0, ErrorCode::Schema, "missing column: " + mapping.lat);
    require(lon_col >= 0, ErrorCode::Schema, "missing column: " + mapping.lon);
    require(sev_col >= 0, ErrorCode::Schema, "missing column: " + mapping.max_injury);

    const auto& names = covariate_names();
    std::vector<int> cov_cols(names.size());
    for (std::size_t k = 0; k < names.size(); ++k) {
        cov_cols[k] = table.column_index(mapping.covariate_column(names[k]));
    }

    IngestResult out;
    out.report.rows_total = table.rows.size();
    out.report.missing_covariate_cells.assign(names.size(), 0);
    out.records.reserve(table.rows.size());

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t row_no = r + 1;
        try {
            require(row.size() == table.header.size(), ErrorCode::Parse,
                    "column count mismatch: expected " + std::to_string(table.header.size()) +
                        ", got " + std::to_string(row.size()));

            CrashRecord rec;
            rec.id = row[static_cast<std::size_t>(id_col)];
            rec.lat = parse_double(row[static_cast<std::size_t>(lat_col)], "latitude");
            rec.lon = parse_double(row[static_cast<std::size_t>(lon_col)], "longitude");
            require(rec.lat >= -90.0 && rec.lat <= 90.0, ErrorCode::Parse,
                    "latitude out of range: " + format_double(rec.lat));
            require(rec.lon >= -180.0 && rec.lon <= 180.0, ErrorCode::Parse,
                    "longitude out of range: " + format_double(rec.lon));
            rec.max_injury = parse_kabco(row[static_cast<std::size_t>(sev_col)]);

            rec.covariates.assign(names.size(), 0);
            for (std::size_t k = 0; k < names.size(); ++k) {
                if (cov_cols[k] < 0) {
                    ++out.report.missing_covariate_cells[k];
                    continue;
                }
                std::string_view cell = trim(row[static_cast<std::size_t>(cov_cols[k])]);
                if (cell.empty()) {
                    ++out.report.missing_covariate_cells[k];
                } else if (cell == "0") {
                    rec.covariates[k] = 0;
                } else if (cell == "1") {
                    rec.covariates[k] = 1;
                } else {
                    throw_error(ErrorCode::Parse, "covariate " + names[k] + " not binary: '" +
                                                      std::string(cell) + "'");
                }
            }
            out.records.push_back(std::move(rec));
        } catch (const Error& e) {
            if (mode == RowErrorMode::FailFast) {
                throw Error(e.code(), "row " + std::to_string(row_no) + ": " + e.what());
            }
            out.report.errors.push_back({row_no, e.what()});
        }
    }
    out.report.records_parsed = out.records.size();
    return out;
}

std::string serialize_crashes(const std::vector<CrashRecord>& records) {
    CsvTable table;
    table.header = {"id", "lat", "lon", "max_injury"};
    for (const auto& name : covariate_names()) table.header.push_back(name);
    table.rows.reserve(records.size());
    for (const auto& rec : records) {
        std::vector<std::string> row;
        row.reserve(table.header.size());
        row.push_back(rec.id);
        row.push_back(format_double(rec.lat));
        row.push_back(format_double(rec.lon));
        row.push_back(std::string(1, kabco_char(rec.max_injury)));
        for (std::size_t k = 0; k < covariate_count(); ++k) {
            row.push_back(rec.covariates[k] ? "1" : "0");
        }
        table.rows.push_back(std::move(row));
    }
    return write_csv(table);
}

bool operator==(const CrashRecord& a, const CrashRecord& b) {
    return a.id == b.id && a.lat == b.lat && a.lon == b.lon && a.max_injury == b.max_injury &&
           a.covariates == b.covariates;
}

} // namespace crashspat
