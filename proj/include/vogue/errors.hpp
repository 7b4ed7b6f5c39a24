#pragma once

#include <stdexcept>
#include <string>

namespace vogue {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or unwritable path.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Malformed input line; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Semantically invalid input (duplicate ids, missing fields, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Bad configuration value.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class EmptyCorpusError : public Error {
public:
    EmptyCorpusError() : Error("operation requires a non-empty corpus") {}
};

class EmptyNetworkError : public Error {
public:
    EmptyNetworkError() : Error("operation requires a non-empty network") {}
};

// A backbone edge is missing from its parent network.
class ContainmentError : public Error {
public:
    explicit ContainmentError(const std::string& msg) : Error(msg) {}
};

// A document names an institution absent from the metadata table.
class UnknownInstitutionError : public Error {
public:
    explicit UnknownInstitutionError(const std::string& msg) : Error(msg) {}
};

// Institution metadata incomplete for a dyad feature.
class MetadataError : public Error {
public:
    explicit MetadataError(const std::string& msg) : Error(msg) {}
};

// Collinear design matrix.
class RankDeficiencyError : public Error {
public:
    explicit RankDeficiencyError(const std::string& msg) : Error(msg) {}
};

// Mismatched matrix/vector shapes.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

}  // namespace vogue
