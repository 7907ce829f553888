#pragma once

#include <stdexcept>
#include <string>

namespace refl {

enum class ErrorCode {
    invalid_input = 2,
    data_error = 3,
    precision = 4,
    domain = 5,
    internal = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace refl
