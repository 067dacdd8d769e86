#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <utility>

namespace vpke {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numtheory
struct InvalidModulus : Error {
    InvalidModulus() : Error("modulus must be >= 2") {}
};

struct NotCoprime : Error {
    mpz_class gcd;
    explicit NotCoprime(mpz_class g)
        : Error("operand shares factor " + g.get_str() + " with modulus"),
          gcd(std::move(g)) {}
};

struct NotCoprimeModuli : Error {
    NotCoprimeModuli() : Error("CRT moduli are not coprime") {}
};

struct InvalidInput : Error {
    using Error::Error;
};

struct WorkBudgetExceeded : Error {
    using Error::Error;
};

// keygen
struct GenerationExhausted : Error {
    using Error::Error;
};

struct InvalidPrimeForm : Error {
    using Error::Error;
};

// mccurley
struct MessageTooLarge : Error {
    MessageTooLarge() : Error("message value is not below the modulus") {}
};

struct ZeroMessage : Error {
    ZeroMessage() : Error("message value is zero") {}
};

struct MessageNotCoprime : Error {
    mpz_class gcd;
    explicit MessageNotCoprime(mpz_class g)
        : Error("message shares factor " + g.get_str() + " with the modulus"),
          gcd(std::move(g)) {}
};

// A ciphertext component sharing a factor with N leaks that factor; the
// exception carries it so callers can fail loudly.
struct MalformedCiphertext : Error {
    mpz_class gcd;
    explicit MalformedCiphertext(mpz_class g)
        : Error("ciphertext component shares factor " + g.get_str() +
                " with the modulus"),
          gcd(std::move(g)) {}
};

// dlog
struct NotFormPrime : Error {
    using Error::Error;
};

struct NotInSubgroup : Error {
    NotInSubgroup() : Error("target is not in the subgroup generated by the base") {}
};

struct MemoryBudgetExceeded : Error {
    using Error::Error;
};

// escrow
struct KeyMismatch : Error {
    using Error::Error;
};

struct MalformedPublicValue : Error {
    using Error::Error;
};

struct InvalidEscrow : Error {
    using Error::Error;
};

// file formats
struct FormatError : Error {
    using Error::Error;
};

}  // namespace vpke
