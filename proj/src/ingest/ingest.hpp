#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ingest/crash_record.hpp"

namespace crashspat {

// Logical field -> CSV column name. Covariate columns default to their
// schema names; entries here rename individual ones.
struct ColumnMapping {
    std::string id = "id";
    std::string lat = "lat";
    std::string lon = "lon";
    std::string max_injury = "max_injury";
    std::map<std::string, std::string> covariate_columns;

    std::string covariate_column(const std::string& schema_name) const {
        auto it = covariate_columns.find(schema_name);
        return it == covariate_columns.end() ? schema_name : it->second;
    }
};

enum class RowErrorMode { FailFast, SkipAndReport };

struct RowError {
    std::size_t row = 0; // 1-based data row ordinal (header excluded)
    std::string message;
};

struct IngestReport {
    std::size_t rows_total = 0;
    std::size_t records_parsed = 0;
    std::vector<RowError> errors;
    // Defaulted-to-zero cell count per schema covariate, schema order.
    std::vector<std::size_t> missing_covariate_cells;
};

struct IngestResult {
    std::vector<CrashRecord> records;
    IngestReport report;
};

// Parses crash records out of CSV text. The id/lat/lon/severity columns are
// required (Schema error when absent); covariate columns may be missing
// entirely, in which case every cell counts as defaulted. Malformed rows
// throw in FailFast mode and are collected in SkipAndReport mode.
IngestResult parse_crashes(std::string_view csv_text, const ColumnMapping& mapping,
                           RowErrorMode mode);

// Canonical-schema CSV export; doubles use shortest round-trip formatting.
std::string serialize_crashes(const std::vector<CrashRecord>& records);

bool operator==(const CrashRecord& a, const CrashRecord& b);

} // namespace crashspat
