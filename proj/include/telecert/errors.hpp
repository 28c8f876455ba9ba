#pragma once

#include <stdexcept>
#include <string>

namespace telecert {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define TELECERT_ERROR(Name)                                                     \
    class Name : public Error {                                                  \
    public:                                                                      \
        explicit Name(const std::string& what) : Error(#Name, what) {}           \
    };

TELECERT_ERROR(ZeroPolynomial)
TELECERT_ERROR(UnsupportedShape)
TELECERT_ERROR(OrderingImpossible)
TELECERT_ERROR(TowerInvalid)
TELECERT_ERROR(StartTooSmall)
TELECERT_ERROR(ZUndecidable)
TELECERT_ERROR(NotHypergeometric)
TELECERT_ERROR(NotCompilable)
TELECERT_ERROR(InsufficientSamples)
TELECERT_ERROR(VerificationFailed)
TELECERT_ERROR(SpecializationPole)
TELECERT_ERROR(DiagonalSpecialization)

#undef TELECERT_ERROR

class SyntaxError : public Error {
public:
    SyntaxError(int line, int col, const std::string& expected)
        : Error("SyntaxError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": expected " + expected),
          line_(line), col_(col), expected_(expected)
    {
    }
    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& expected() const { return expected_; }

private:
    int line_;
    int col_;
    std::string expected_;
};

}  // namespace telecert
