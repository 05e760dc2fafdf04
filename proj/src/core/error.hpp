#pragma once

#include <stdexcept>
#include <string>

namespace crashspat {

// Error categories shared by the whole library. The C API maps these
// one-to-one onto cspat_status codes.
enum class ErrorCode {
    Io = 1,
    Schema = 2,
    Parse = 3,
    Domain = 4,
    DegenerateInput = 5,
    InvalidArgument = 6,
    RankDeficient = 7,
    Internal = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) throw_error(code, message);
}

} // namespace crashspat
