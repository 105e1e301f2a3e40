#pragma once

#include <stdexcept>
#include <string>

namespace mqv {

/// Input that cannot be scored, e.g. a constant variable or too few distinct values.
class DegenerateInput : public std::runtime_error {
public:
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

class FitFailure : public std::runtime_error {
public:
    explicit FitFailure(const std::string& what) : std::runtime_error(what) {}
};

class UnsupportedDimension : public std::runtime_error {
public:
    explicit UnsupportedDimension(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file; the message names the file and line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& detail)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + detail),
          file_(file), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class MissingMetadata : public std::runtime_error {
public:
    explicit MissingMetadata(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mqv
