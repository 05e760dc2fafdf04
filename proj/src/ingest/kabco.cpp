#include "ingest/kabco.hpp"

#include <cctype>

#include "core/error.hpp"

namespace crashspat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

KabcoLevel parse_kabco(std::string_view token) {
    std::string_view t = trim(token);
    if (t.size() == 1) {
        switch (std::toupper(static_cast<unsigned char>(t[0]))) {
            case 'K': return KabcoLevel::K;
            case 'A': return KabcoLevel::A;
            case 'B': return KabcoLevel::B;
            case 'C': return KabcoLevel::C;
            case 'O': return KabcoLevel::O;
            default: break;
        }
    }
    throw_error(ErrorCode::Parse, "invalid KABCO token: '" + std::string(token) + "'");
}

char kabco_char(KabcoLevel k) {
    switch (k) {
        case KabcoLevel::K: return 'K';
        case KabcoLevel::A: return 'A';
        case KabcoLevel::B: return 'B';
        case KabcoLevel::C: return 'C';
        case KabcoLevel::O: return 'O';
    }
    throw_error(ErrorCode::Internal, "unreachable KABCO level");
}

SeverityClass severity_class(KabcoLevel k) {
    switch (k) {
        case KabcoLevel::K:
        case KabcoLevel::A: return 2;
        case KabcoLevel::B:
        case KabcoLevel::C: return 1;
        case KabcoLevel::O: return 0;
    }
    throw_error(ErrorCode::Internal, "unreachable KABCO level");
}

double equivalent_fatality(KabcoLevel k) {
    switch (k) {
        case KabcoLevel::K: return 1.0;
        case KabcoLevel::A: return 0.1107;
        case KabcoLevel::B: return 0.0310;
        case KabcoLevel::C: return 0.0148;
        case KabcoLevel::O: return 0.0049;
    }
    throw_error(ErrorCode::Internal, "unreachable KABCO level");
}

} // namespace crashspat
