#pragma once

#include <stdexcept>
#include <string>

namespace lowhigh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    int line;
    ParseError(int line, const std::string& reason)
        : Error("parse error at line " + std::to_string(line) + ": " + reason), line(line) {}
};

struct IdOutOfRange : Error {
    IdOutOfRange(int id, int n)
        : Error("vertex id " + std::to_string(id) + " out of range [1," + std::to_string(n) + "]") {}
};

struct UnreachableVertex : Error {
    explicit UnreachableVertex(int v) : Error("vertex " + std::to_string(v) + " is unreachable") {}
};

struct NoChildren : Error {
    explicit NoChildren(int v) : Error("vertex " + std::to_string(v) + " has no tree children") {}
};

struct InvariantViolation : Error {
    using Error::Error;
};

struct StuckPeel : Error {
    using Error::Error;
};

struct NotStronglyConnected : Error {
    NotStronglyConnected() : Error("input graph is not strongly connected") {}
};

struct Not2VC : Error {
    Not2VC() : Error("input graph is not 2-vertex-connected") {}
};

struct InvalidForest : Error {
    using Error::Error;
};

struct SaturatedGraph : Error {
    SaturatedGraph() : Error("no non-loop non-edge left to insert") {}
};

struct VerificationFailure : Error {
    std::size_t insertion_index;
    std::string check;
    VerificationFailure(std::size_t index, const std::string& check)
        : Error("verification failure at insertion " + std::to_string(index) + ": " + check),
          insertion_index(index),
          check(check) {}
};

}  // namespace lowhigh
