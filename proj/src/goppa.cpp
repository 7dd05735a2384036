#include "mcx/goppa.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace mcx::goppa {

GoppaCode::GoppaCode(Field field, Poly g, std::vector<FieldElem> support)
    : field_(std::move(field)), g_(std::move(g)), support_(std::move(support)) {}

GoppaCode GoppaCode::standard(unsigned m, const Poly& g) {
    Field field(m);
    std::vector<FieldElem> support;
    if (g.degree() == 1) {
        const FieldElem beta = g.coeff(0);  // root of X + beta
        for (std::size_t a = 0; a < field.size(); ++a)
            if (a != beta) support.push_back(static_cast<FieldElem>(a));
    } else {
        for (std::size_t a = 0; a < field.size(); ++a)
            support.push_back(static_cast<FieldElem>(a));
    }
    return build(field, g, std::move(support));
}

GoppaCode GoppaCode::build(const Field& field, const Poly& g, std::vector<FieldElem> support) {
    if (!g.is_monic() || g.degree() < 1)
        throw std::invalid_argument("GoppaCode: g must be monic of degree >= 1");
    if (!is_irreducible(field, g)) throw NotIrreducible();
    {
        std::vector<FieldElem> sorted = support;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("GoppaCode: support entries must be distinct");
    }
    for (FieldElem a : support)
        if (poly_eval(field, g, a) == 0) throw SupportRoot();

    GoppaCode code(field, g, std::move(support));
    const unsigned m = field.degree();
    const unsigned t = static_cast<unsigned>(g.degree());
    const std::size_t n = code.support_.size();

    // (X - a)^{-1} mod g = q_a(X) / g(a), where q_a is the quotient of g by
    // (X - a); the quotient coefficients come out of a Horner sweep.
    code.inv_columns_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FieldElem a = code.support_[i];
        std::vector<FieldElem> q(t, 0);
        FieldElem acc = 0;
        for (int d = static_cast<int>(t); d >= 1; --d) {
            acc = field.mul(acc, a) ^ code.g_.coeff(d);
            q[d - 1] = acc;
        }
        const FieldElem scale = field.inv(field.mul(acc, a) ^ code.g_.coeff(0));
        for (auto& c : q) c = field.mul(c, scale);
        code.inv_columns_[i] = std::move(q);
    }

    // Binary parity check: each field coefficient expands to m rows.
    code.H_ = BitMatrix(static_cast<std::size_t>(m) * t, n);
    for (std::size_t i = 0; i < n; ++i)
        for (unsigned j = 0; j < t; ++j) {
            FieldElem c = code.inv_columns_[i][j];
            for (unsigned l = 0; l < m; ++l)
                if ((c >> l) & 1) code.H_.set(std::size_t{j} * m + l, i, true);
        }

    code.G_ = code.H_.nullspace();
    const std::size_t k = code.G_.rows();
    code.params_ = CodeParams{m, n, k, t, 2 * t + 1};

    // The nullspace basis is systematic on the non-pivot columns of H;
    // those columns form the information set for message recovery.
    auto hr = code.H_.rref();
    std::vector<bool> is_pivot(n, false);
    for (auto p : hr.pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) code.info_cols_.push_back(c);
    return code;
}

BitVector GoppaCode::encode(const BitVector& u) const { return u * G_; }

Poly GoppaCode::syndrome(const BitVector& y) const {
    if (y.size() != params_.n) throw DimensionMismatch("syndrome: length mismatch");
    const unsigned t = params_.t;
    std::vector<FieldElem> acc(t, 0);
    for (std::size_t i = 0; i < params_.n; ++i)
        if (y.get(i))
            for (unsigned j = 0; j < t; ++j) acc[j] ^= inv_columns_[i][j];
    return Poly(std::move(acc));
}

std::optional<GoppaCode::Decoded> GoppaCode::decode(const BitVector& y) const {
    if (y.size() != params_.n) throw DimensionMismatch("decode: length mismatch");
    const unsigned t = params_.t;

    Poly S = syndrome(y);
    if (S.is_zero()) return Decoded{y, BitVector(params_.n)};

    // sigma = a^2 + X b^2 with a = b * sqrt(T + X) mod g, found by running
    // the Euclidean algorithm on (g, R) until deg a <= t/2; the companion
    // coefficient then satisfies deg b <= (t-1)/2.
    Poly T = poly_invmod(field_, S, g_);
    Poly R = poly_sqrtmod(field_, poly_add(T, Poly::x()), g_);

    Poly sigma;
    if (R.is_zero()) {
        sigma = Poly::x();  // T = X exactly: single error at alpha = 0
    } else {
        Poly r_prev = g_, r_cur = R;
        Poly b_prev, b_cur = Poly::constant(1);
        while (r_cur.degree() > static_cast<int>(t / 2)) {
            auto [q, r_next] = poly_divmod(field_, r_prev, r_cur);
            Poly b_next = poly_add(b_prev, poly_mul(field_, q, b_cur));
            r_prev = std::move(r_cur);
            r_cur = std::move(r_next);
            b_prev = std::move(b_cur);
            b_cur = std::move(b_next);
        }
        Poly a2 = poly_mul(field_, r_cur, r_cur);
        Poly b2 = poly_mul(field_, b_cur, b_cur);
        sigma = poly_add(a2, poly_mul(field_, Poly::x(), b2));
    }
    if (sigma.is_zero()) return std::nullopt;

    // Error positions are the support roots of sigma; the locator must
    // split completely over the support.
    BitVector error(params_.n);
    std::size_t roots = 0;
    for (std::size_t i = 0; i < params_.n; ++i)
        if (poly_eval(field_, sigma, support_[i]) == 0) {
            error.set(i, true);
            ++roots;
        }
    if (roots != static_cast<std::size_t>(sigma.degree()) || roots > t) return std::nullopt;

    BitVector codeword = y ^ error;
    if (!syndrome(codeword).is_zero()) return std::nullopt;
    return Decoded{std::move(codeword), std::move(error)};
}

BitVector GoppaCode::message_of_codeword(const BitVector& c) const {
    if (c.size() != params_.n) throw DimensionMismatch("message_of_codeword: length mismatch");
    BitVector u(params_.k);
    for (std::size_t j = 0; j < info_cols_.size(); ++j) u.set(j, c.get(info_cols_[j]));
    if (!(u * G_ == c)) throw NotInCode();
    return u;
}

std::size_t bruteforce_min_distance(const BitMatrix& G) {
    const std::size_t k = G.rows();
    if (k > 16) throw TooLarge("bruteforce_min_distance: 2^k enumeration over budget");
    std::size_t best = G.cols() + 1;
    BitVector word(G.cols());
    // Gray-code walk over all nonzero messages.
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
        word ^= G.row(static_cast<std::size_t>(std::countr_zero(i)));
        best = std::min(best, word.weight());
    }
    return best;
}

}  // namespace mcx::goppa
