// Error types shared across the library. Each carries a short category
// tag that the CLI prints as "error[<category>]: <message>".
#ifndef OKBC_ERROR_HPP
#define OKBC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace okbc {

class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& msg)
        : std::runtime_error(msg), category_(std::move(category)) {}
    const std::string& category() const { return category_; }

private:
    std::string category_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse", msg) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error("format", msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("domain", msg) {}
};

struct IntegrityError : Error {
    explicit IntegrityError(const std::string& msg) : Error("integrity", msg) {}
};

struct LookupError : Error {
    explicit LookupError(const std::string& msg) : Error("lookup", msg) {}
};

struct SamplingError : Error {
    explicit SamplingError(const std::string& msg) : Error("sampling", msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io", msg) {}
};

} // namespace okbc

#endif
