#pragma once

#include <stdexcept>
#include <string>

namespace fusion6j {

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

struct NoRootInField : std::runtime_error {
    explicit NoRootInField(const std::string& what) : std::runtime_error(what) {}
};

struct FieldMismatch : std::runtime_error {
    explicit FieldMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct MissingBlock : std::runtime_error {
    explicit MissingBlock(const std::string& what) : std::runtime_error(what) {}
};

struct SingularBlock : std::runtime_error {
    explicit SingularBlock(const std::string& what) : std::runtime_error(what) {}
};

struct NonInvertibleGauge : std::runtime_error {
    explicit NonInvertibleGauge(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct FormulaMismatch : std::runtime_error {
    explicit FormulaMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NotInvolutive : std::runtime_error {
    explicit NotInvolutive(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownBuiltin : std::runtime_error {
    explicit UnknownBuiltin(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct RingInvalid : std::runtime_error {
    explicit RingInvalid(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fusion6j
