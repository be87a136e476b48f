#pragma once

#include <stdexcept>
#include <string>

namespace l2switch {

struct dimension_error : std::runtime_error {
    explicit dimension_error(const std::string& w) : std::runtime_error(w) {}
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& w) : std::runtime_error(w) {}
};

struct placement_error : std::runtime_error {
    explicit placement_error(const std::string& w) : std::runtime_error(w) {}
};

// Search/enumeration asked to go beyond desk scale.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& w) : std::runtime_error(w) {}
};

// A vector/matrix/instance fails an admissibility or switching condition.
struct admissibility_error : std::runtime_error {
    explicit admissibility_error(const std::string& w) : std::runtime_error(w) {}
};

// Division by 2 or 4 that must be exact was not.
struct exactness_error : std::runtime_error {
    explicit exactness_error(const std::string& w) : std::runtime_error(w) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& w) : std::runtime_error(w) {}
};

struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& w) : std::runtime_error(w) {}
};

struct paper_mismatch_error : std::runtime_error {
    explicit paper_mismatch_error(const std::string& w) : std::runtime_error(w) {}
};

} // namespace l2switch
