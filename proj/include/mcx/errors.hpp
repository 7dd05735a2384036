#pragma once

#include <stdexcept>
#include <string>

namespace mcx {

// Common error base. Frequent, expected outcomes (a decoder miss, an
// unsolvable linear system, an exhausted enumeration) are modeled with
// std::optional at the call site; exceptions are for contract violations
// and malformed inputs.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroInverse : Error {
    ZeroInverse() : Error("zero field element has no inverse") {}
};

struct NotInvertible : Error {
    NotInvertible() : Error("polynomial is not invertible modulo g") {}
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("matrix is singular") {}
};

struct NotInCode : Error {
    NotInCode() : Error("vector is not in the row space of the generator") {}
};

struct SupportRoot : Error {
    SupportRoot() : Error("support contains a root of the Goppa polynomial") {}
};

struct NotIrreducible : Error {
    NotIrreducible() : Error("polynomial is not irreducible") {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& what) : Error(what) {}
};

struct KeygenExhausted : Error {
    KeygenExhausted() : Error("key generation resampling budget exhausted") {}
};

struct NonceExhausted : Error {
    NonceExhausted() : Error("nonce search budget exhausted") {}
};

struct DecryptFail : Error {
    explicit DecryptFail(const std::string& what = "ciphertext failed to decode") : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct NotSameCode : Error {
    NotSameCode() : Error("generators do not span the same code") {}
};

struct SingularDerived : Error {
    explicit SingularDerived(const std::string& what) : Error(what) {}
};

struct OracleFailure : Error {
    explicit OracleFailure(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace mcx
