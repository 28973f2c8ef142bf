#pragma once

#include <stdexcept>
#include <string>

namespace svsparse {

struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPsd : std::runtime_error {
    explicit NotPsd(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotDefined : std::runtime_error {
    explicit NotDefined(const std::string& msg) : std::runtime_error(msg) {}
};

struct BipartitionViolation : std::runtime_error {
    explicit BipartitionViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct PartitionFailure : std::runtime_error {
    explicit PartitionFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularityTooClose : std::runtime_error {
    explicit SingularityTooClose(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegreeMismatch : std::runtime_error {
    explicit DegreeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

// A randomized stage failed its oracle certificate after all retries.
struct SparsifyFailure : std::runtime_error {
    explicit SparsifyFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace svsparse
