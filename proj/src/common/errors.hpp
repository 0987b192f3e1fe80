#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ccsaa {

// Configuration / schema problem. Carries the offending field path so front
// ends can report "bounds[1].beta: required field missing".
class validation_error : public std::runtime_error {
public:
    validation_error(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    explicit validation_error(const std::string& message)
        : std::runtime_error(message) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// An empirical estimate exceeded a theoretical bound it is supposed to honor.
class bound_check_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An uncertainty ball does not intersect the support set. The sample index is
// filled in by callers that iterate over a batch (-1 when unknown).
class empty_intersection_error : public std::runtime_error {
public:
    explicit empty_intersection_error(const std::string& message, long long sample_index = -1)
        : std::runtime_error(message), sample_index_(sample_index) {}

    long long sample_index() const noexcept { return sample_index_; }

private:
    long long sample_index_;
};

} // namespace ccsaa
