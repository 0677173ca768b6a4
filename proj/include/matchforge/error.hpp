#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matchforge {

enum class ErrorKind {
    DuplicateEdge,
    SelfLoop,
    PartitionViolation,
    IndexOutOfRange,
    NotAdjacent,
    DeadNode,
    StaleSnapshot,
    NotBipartite,
    TooLarge,
    InvalidMatching,
    NotMaximum,
    TraceMismatch,
    BadParams,
    ArityMismatch,
    ParseError,
    IoError,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::PartitionViolation: return "PartitionViolation";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::DeadNode: return "DeadNode";
    case ErrorKind::StaleSnapshot: return "StaleSnapshot";
    case ErrorKind::NotBipartite: return "NotBipartite";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidMatching: return "InvalidMatching";
    case ErrorKind::NotMaximum: return "NotMaximum";
    case ErrorKind::TraceMismatch: return "TraceMismatch";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace matchforge
