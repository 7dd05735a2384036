#include "mcx/gf2m.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace mcx {

namespace {

// Fixed low-weight irreducible moduli, one per extension degree.
constexpr std::array<std::uint32_t, 17> kModuli = {
    0,       0,      0x7,    0xB,    0x13,   0x25,    0x43,   0x83,  0x11D,
    0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443,  0x8003, 0x1100B};

}  // namespace

std::uint32_t Field::modulus_for(unsigned m) {
    if (m < 2 || m > 16) throw std::invalid_argument("Field: m must be in [2, 16]");
    return kModuli[m];
}

Field::Field(unsigned m) : m_(m), modulus_(modulus_for(m)) {
    if (m_ > 8) return;
    // Build log/antilog tables over a generator of the multiplicative group.
    const std::size_t q = size();
    for (FieldElem g = 2; g < q; ++g) {
        exp_.assign(q - 1, 0);
        log_.assign(q, 0);
        FieldElem cur = 1;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < q; ++i) {
            if (i > 0 && cur == 1) {
                ok = false;  // order of g divides i < q-1
                break;
            }
            exp_[i] = cur;
            log_[cur] = static_cast<std::uint16_t>(i);
            cur = mul_shift_reduce(cur, g);
        }
        if (ok && cur == 1) return;
    }
    throw std::logic_error("Field: no multiplicative generator found");
}

FieldElem Field::mul_shift_reduce(FieldElem a, FieldElem b) const {
    std::uint32_t acc = 0;
    std::uint32_t aa = a;
    std::uint32_t bb = b;
    while (bb) {
        if (bb & 1) acc ^= aa;
        aa <<= 1;
        if (aa >> m_ & 1) aa ^= modulus_;
        bb >>= 1;
    }
    return static_cast<FieldElem>(acc);
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) {
        std::size_t s = std::size_t{log_[a]} + log_[b];
        const std::size_t n = size() - 1;
        if (s >= n) s -= n;
        return exp_[s];
    }
    return mul_shift_reduce(a, b);
}

FieldElem Field::inv(FieldElem a) const {
    if (a == 0) throw ZeroInverse();
    if (!exp_.empty()) {
        const std::size_t n = size() - 1;
        return exp_[(n - log_[a]) % n];
    }
    return pow(a, size() - 2);
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
    FieldElem result = 1;
    FieldElem base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Poly::Poly(std::vector<FieldElem> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Poly Poly::x() { return Poly({0, 1}); }

Poly Poly::constant(FieldElem c) { return Poly({c}); }

void Poly::set_coeff(std::size_t i, FieldElem c) {
    if (i >= coeffs_.size()) {
        if (c == 0) return;
        coeffs_.resize(i + 1, 0);
    }
    coeffs_[i] = c;
    normalize();
}

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
    std::vector<FieldElem> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) ^ b.coeff(i);
    return Poly(std::move(c));
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<FieldElem> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeff(i) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] ^= f.mul(a.coeff(i), b.coeff(j));
    }
    return Poly(std::move(c));
}

std::pair<Poly, Poly> poly_divmod(const Field& f, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<FieldElem> rem = a.coeffs();
    std::vector<FieldElem> quo(a.degree() - b.degree() + 1, 0);
    const FieldElem lead_inv = f.inv(b.coeff(b.degree()));
    for (int d = a.degree(); d >= b.degree(); --d) {
        FieldElem c = rem[d];
        if (c == 0) continue;
        FieldElem q = f.mul(c, lead_inv);
        quo[d - b.degree()] = q;
        for (int i = 0; i <= b.degree(); ++i)
            rem[d - b.degree() + i] ^= f.mul(q, b.coeff(i));
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly poly_mod(const Field& f, const Poly& a, const Poly& g) {
    return poly_divmod(f, a, g).second;
}

Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& g) {
    return poly_mod(f, poly_mul(f, a, b), g);
}

FieldElem poly_eval(const Field& f, const Poly& p, FieldElem x) {
    FieldElem acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = f.mul(acc, x) ^ p.coeff(i);
    return acc;
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.coeff(a.degree()) != 1) {
        FieldElem s = f.inv(a.coeff(a.degree()));
        std::vector<FieldElem> c = a.coeffs();
        for (auto& ci : c) ci = f.mul(ci, s);
        a = Poly(std::move(c));
    }
    return a;
}

Poly poly_invmod(const Field& f, const Poly& a, const Poly& g) {
    // Extended Euclid on (g, a mod g), tracking only the coefficient of a.
    Poly r0 = g, r1 = poly_mod(f, a, g);
    Poly s0, s1 = Poly::constant(1);
    if (r1.is_zero()) throw NotInvertible();
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(f, r0, r1);
        Poly s2 = poly_add(s0, poly_mul(f, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw NotInvertible();
    FieldElem scale = f.inv(r0.coeff(0));
    std::vector<FieldElem> c = s0.coeffs();
    for (auto& ci : c) ci = f.mul(ci, scale);
    return poly_mod(f, Poly(std::move(c)), g);
}

Poly poly_sqrtmod(const Field& f, const Poly& a, const Poly& g) {
    // mt - 1 Frobenius squarings: a^(2^(mt-1)) squared equals a^(2^mt) = a.
    Poly r = poly_mod(f, a, g);
    const unsigned steps = f.degree() * static_cast<unsigned>(g.degree()) - 1;
    for (unsigned i = 0; i < steps; ++i) r = poly_mulmod(f, r, r, g);
    return r;
}

bool is_irreducible(const Field& f, const Poly& g) {
    if (g.is_zero() || !g.is_monic() || g.degree() < 1)
        throw std::invalid_argument("is_irreducible: g must be monic of degree >= 1");
    const int t = g.degree();
    if (t == 1) return true;
    if (t <= 3) {
        // A reducible polynomial of degree 2 or 3 has a linear factor.
        for (std::size_t x = 0; x < f.size(); ++x)
            if (poly_eval(f, g, static_cast<FieldElem>(x)) == 0) return false;
        return true;
    }
    // g has no factor of degree <= t/2 iff gcd(g, X^(q^i) - X) = 1 for all
    // i up to t/2; X^(q^i) is computed by iterated Frobenius powers.
    Poly xq = Poly::x();
    for (int i = 1; i <= t / 2; ++i) {
        for (unsigned s = 0; s < f.degree(); ++s) xq = poly_mulmod(f, xq, xq, g);
        Poly diff = poly_add(xq, Poly::x());
        if (poly_gcd(f, g, diff).degree() != 0) return false;
    }
    return true;
}

IrreducibleSeq::IrreducibleSeq(const Field& f, unsigned t) : f_(&f), t_(t) {
    if (t < 1) throw std::invalid_argument("IrreducibleSeq: t must be >= 1");
    if (static_cast<std::uint64_t>(t) * f.degree() > 62)
        throw TooLarge("IrreducibleSeq: candidate space exceeds 2^62");
    space_ = std::uint64_t{1} << (t * f.degree());
}

Poly IrreducibleSeq::candidate(const Field& f, unsigned t, std::uint64_t idx) {
    std::vector<FieldElem> c(t + 1, 0);
    const std::uint64_t mask = f.size() - 1;
    for (unsigned i = 0; i < t; ++i) {
        c[i] = static_cast<FieldElem>(idx & mask);
        idx >>= f.degree();
    }
    c[t] = 1;
    return Poly(std::move(c));
}

std::optional<Poly> IrreducibleSeq::next() {
    while (idx_ < space_) {
        Poly g = candidate(*f_, t_, idx_++);
        if (is_irreducible(*f_, g)) return g;
    }
    return std::nullopt;
}

std::uint64_t irreducible_count(unsigned m, unsigned t) {
    if (static_cast<std::uint64_t>(m) * t > 62)
        throw TooLarge("irreducible_count: 2^(mt) exceeds 2^62");
    // Moebius sum over divisors of t.
    auto mu = [](unsigned n) -> int {
        int result = 1;
        for (unsigned p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                result = -result;
            }
        }
        if (n > 1) result = -result;
        return result;
    };
    std::int64_t total = 0;
    for (unsigned d = 1; d <= t; ++d) {
        if (t % d != 0) continue;
        int mud = mu(d);
        if (mud == 0) continue;
        total += mud * static_cast<std::int64_t>(std::uint64_t{1} << (m * (t / d)));
    }
    return static_cast<std::uint64_t>(total / t);
}

Poly random_irreducible(const Field& f, unsigned t, SeededRng& rng) {
    if (t < 1) throw std::invalid_argument("random_irreducible: t must be >= 1");
    for (;;) {
        std::vector<FieldElem> c(t + 1, 0);
        for (unsigned i = 0; i < t; ++i)
            c[i] = static_cast<FieldElem>(rng.below(f.size()));
        c[t] = 1;
        Poly g(std::move(c));
        if (is_irreducible(f, g)) return g;
    }
}

}  // namespace mcx
