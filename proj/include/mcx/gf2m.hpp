#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mcx/errors.hpp"
#include "mcx/rng.hpp"

namespace mcx {

// Element of GF(2^m), polynomial-basis representation: bit i of the value is
// the coefficient of x^i, reduced modulo a fixed irreducible modulus per m.
using FieldElem = std::uint16_t;

// Arithmetic context for GF(2^m), 2 <= m <= 16. Immutable after construction;
// log/antilog tables are built for m <= 8, larger fields use carry-less
// shift-reduce multiplication.
class Field {
  public:
    explicit Field(unsigned m);

    unsigned degree() const { return m_; }
    std::size_t size() const { return std::size_t{1} << m_; }
    std::uint32_t modulus() const { return modulus_; }

    static std::uint32_t modulus_for(unsigned m);

    FieldElem add(FieldElem a, FieldElem b) const { return a ^ b; }
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem sqr(FieldElem a) const { return mul(a, a); }
    FieldElem inv(FieldElem a) const;  // throws ZeroInverse on a == 0
    FieldElem pow(FieldElem a, std::uint64_t e) const;

  private:
    FieldElem mul_shift_reduce(FieldElem a, FieldElem b) const;

    unsigned m_;
    std::uint32_t modulus_;
    std::vector<FieldElem> exp_;  // exp_[i] = gen^i, empty for m > 8
    std::vector<std::uint16_t> log_;
};

// Polynomial over GF(2^m); coefficients stored low degree first with no
// trailing zeros. The zero polynomial has an empty coefficient vector.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<FieldElem> coeffs);
    static Poly x();
    static Poly constant(FieldElem c);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    FieldElem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    const std::vector<FieldElem>& coeffs() const { return coeffs_; }

    void set_coeff(std::size_t i, FieldElem c);

    friend bool operator==(const Poly&, const Poly&) = default;

  private:
    void normalize();
    std::vector<FieldElem> coeffs_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);
// Quotient and remainder of a / b; b nonzero.
std::pair<Poly, Poly> poly_divmod(const Field& f, const Poly& a, const Poly& b);
Poly poly_mod(const Field& f, const Poly& a, const Poly& g);
Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& g);
FieldElem poly_eval(const Field& f, const Poly& p, FieldElem x);
Poly poly_gcd(const Field& f, Poly a, Poly b);  // monic gcd
// Inverse of a modulo g via extended Euclid; throws NotInvertible when
// gcd(a, g) != 1.
Poly poly_invmod(const Field& f, const Poly& a, const Poly& g);
// Square root modulo an irreducible g: squaring is a bijection on the
// residue field, so the root is a^(2^(m*t - 1)) mod g.
Poly poly_sqrtmod(const Field& f, const Poly& a, const Poly& g);

// Deterministic irreducibility test for monic g: root search for deg <= 3,
// gcd ladder against X^(q^i) - X for 1 <= i <= deg/2 otherwise.
bool is_irreducible(const Field& f, const Poly& g);

// Enumerates every monic irreducible polynomial of degree t over the field,
// in lexicographic coefficient order (low-degree coefficients vary fastest).
class IrreducibleSeq {
  public:
    IrreducibleSeq(const Field& f, unsigned t);
    std::optional<Poly> next();

    // Candidate polynomial for a raw enumeration index (digits of idx in
    // base q are the non-leading coefficients); not necessarily irreducible.
    static Poly candidate(const Field& f, unsigned t, std::uint64_t idx);
    std::uint64_t candidate_space() const { return space_; }

  private:
    const Field* f_;
    unsigned t_;
    std::uint64_t idx_ = 0;
    std::uint64_t space_;
};

// Exact count of monic irreducible degree-t polynomials over GF(2^m):
// (1/t) * sum_{d | t} mu(d) * q^(t/d).
std::uint64_t irreducible_count(unsigned m, unsigned t);

Poly random_irreducible(const Field& f, unsigned t, SeededRng& rng);

}  // namespace mcx
