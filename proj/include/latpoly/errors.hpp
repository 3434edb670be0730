#pragma once

#include <stdexcept>
#include <string>

namespace latpoly {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class truncation_insufficient : public error {
public:
    using error::error;
};

class non_unit_leading_coefficient : public error {
public:
    using error::error;
};

class non_invertible_substitution : public error {
public:
    using error::error;
};

class zero_lambda : public error {
public:
    using error::error;
};

class near_branch_point : public error {
public:
    using error::error;
};

class size_limit : public error {
public:
    using error::error;
};

class cut_out_of_range : public error {
public:
    using error::error;
};

class insufficient_weights : public error {
public:
    using error::error;
};

class index_out_of_range : public error {
public:
    using error::error;
};

/// Malformed polynomial text.
class parse_error : public error {
public:
    using error::error;
};

/// Violated precondition of a query or model (strip bounds, L too small, ...).
class invalid_query : public error {
public:
    using error::error;
};

/// JSON input that does not match the weights schema. `pointer()` is a JSON pointer.
class schema_error : public error {
public:
    schema_error(std::string pointer, const std::string& what)
        : error(pointer + ": " + what), pointer_(std::move(pointer)) {}

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

} // namespace latpoly
