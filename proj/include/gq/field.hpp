#pragma once

// Exact arithmetic in small finite fields GF(p^k), q = p^k <= 169.
//
// Elements are coordinate sequences over the prime field, little-endian in
// the power basis of a fixed irreducible modulus: the element with
// coefficients c_0..c_{k-1} represents c_0 + c_1*w + ... + c_{k-1}*w^{k-1}
// and is identified by the integer code sum c_i * p^i.  All arithmetic is
// table-driven; tables are built once per field from polynomial arithmetic.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gq/errors.hpp"

namespace gq {

using Fel = std::uint16_t; // element code, < q <= 169

enum class ArithKind { Add, Sub, Mul, Div };

class Field {
public:
    // Field with the built-in modulus for (p, k).  Covers every prime power
    // q = p^k <= 169; rejects non-primes and q > 169.
    static std::shared_ptr<const Field> get(int p, int k);
    // Same, selecting (p, k) from a prime power q.
    static std::shared_ptr<const Field> for_order(int q);
    // Field with a caller-supplied monic irreducible modulus (little-endian,
    // k+1 coefficients).  Irreducibility is checked by trial division.
    static std::shared_ptr<const Field> with_modulus(int p, int k, const std::vector<int>& modulus);

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    Fel zero() const { return 0; }
    Fel one() const { return 1; }

    Fel add(Fel a, Fel b) const { return add_[size_t(a) * q_ + b]; }
    Fel sub(Fel a, Fel b) const { return add_[size_t(a) * q_ + neg_[b]]; }
    Fel mul(Fel a, Fel b) const { return mul_[size_t(a) * q_ + b]; }
    Fel neg(Fel a) const { return neg_[a]; }
    Fel inv(Fel a) const;           // error on 0
    Fel div(Fel a, Fel b) const;    // error on b == 0
    Fel arith(Fel a, Fel b, ArithKind kind) const;

    Fel pow(Fel a, long long e) const;
    Fel frobenius(Fel a, int e) const; // a^(p^e), e >= 0

    // Least element code that generates the multiplicative group (found by
    // brute force at construction).
    Fel generator() const { return gen_; }

    // Coordinate sequence <-> code.
    std::vector<int> coeffs(Fel a) const;
    Fel from_coeffs(const std::vector<int>& c) const;
    // Integer reduced mod p as a prime-field constant (handy for grams with
    // entries like -1).
    Fel from_int(long long v) const;

    std::string to_string(Fel a) const;

    // Embedding table of this field into `ext`, which must share p and have
    // degree an integer multiple of k.  The image of w is the least root of
    // this field's modulus in `ext`, so the map is deterministic.  Returns a
    // table of size q mapping codes here to codes in `ext`.
    std::vector<Fel> embedding_into(const Field& ext) const;

    bool same_spec(const Field& other) const {
        return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
    }

private:
    Field(int p, int k, std::vector<int> modulus);

    int p_, k_, q_;
    std::vector<int> modulus_;
    std::vector<Fel> add_, mul_; // q*q tables
    std::vector<Fel> neg_, frob_; // q tables (frob_ = p-th power)
    std::vector<Fel> inv_;       // q table, inv_[0] unused
    Fel gen_ = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

// A field element bound to its field, for convenience at API boundaries.
// Arithmetic between elements of distinct fields is an error.
struct FieldElement {
    const Field* field = nullptr;
    Fel code = 0;

    FieldElement() = default;
    FieldElement(const Field& f, Fel c) : field(&f), code(c) {}

    std::vector<int> coeffs() const { return field->coeffs(code); }

    friend FieldElement operator+(FieldElement a, FieldElement b) { return a.apply(b, ArithKind::Add); }
    friend FieldElement operator-(FieldElement a, FieldElement b) { return a.apply(b, ArithKind::Sub); }
    friend FieldElement operator*(FieldElement a, FieldElement b) { return a.apply(b, ArithKind::Mul); }
    friend FieldElement operator/(FieldElement a, FieldElement b) { return a.apply(b, ArithKind::Div); }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field == b.field && a.code == b.code;
    }

private:
    FieldElement apply(FieldElement b, ArithKind kind) const {
        if (field == nullptr || b.field == nullptr) throw Error("unbound field element");
        if (field != b.field && !field->same_spec(*b.field))
            throw Error("field mismatch in element arithmetic");
        return FieldElement(*field, field->arith(code, b.code, kind));
    }
};

} // namespace gq
