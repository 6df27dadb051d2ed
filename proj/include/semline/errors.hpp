#pragma once

#include <stdexcept>
#include <string>

namespace semline {

struct NoIntersection : std::runtime_error {
    explicit NoIntersection(const std::string& what) : std::runtime_error(what) {}
};

struct TooManyLines : std::invalid_argument {
    explicit TooManyLines(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptyUnion : std::invalid_argument {
    explicit EmptyUnion(const std::string& what) : std::invalid_argument(what) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct NoCandidates : std::runtime_error {
    explicit NoCandidates(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, long row = -1)
        : std::runtime_error(row >= 0 ? what + " (row " + std::to_string(row) + ")" : what),
          row(row) {}
    long row;
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct FrameMismatch : std::invalid_argument {
    explicit FrameMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct GridTooSmall : std::invalid_argument {
    explicit GridTooSmall(const std::string& what) : std::invalid_argument(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semline
