#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcx/binmat.hpp"

namespace mcx::equiv {

// Binary linear code given by a generator matrix; the basis is reduced to
// canonical (RREF) form so that equal row spaces compare equal, and the dual
// and hull bases are cached.
class CodeHandle {
  public:
    explicit CodeHandle(const BitMatrix& G);

    std::size_t length() const { return G_.cols(); }
    std::size_t dim() const { return G_.rows(); }
    const BitMatrix& generator() const { return G_; }
    const BitMatrix& dual() const { return dual_; }
    const BitMatrix& hull() const { return hull_; }
    const std::vector<std::uint64_t>& hull_enumerator() const { return hull_enum_; }

  private:
    BitMatrix G_;
    BitMatrix dual_;
    BitMatrix hull_;
    std::vector<std::uint64_t> hull_enum_;
};

// Basis of C ∩ C⊥ in canonical form for a canonical generator basis.
BitMatrix hull_basis(const BitMatrix& G);

// Exact weight distribution of the span of the basis rows by exhaustive
// enumeration; counts[w] = number of codewords of weight w. Throws TooLarge
// for more than 20 basis rows.
std::vector<std::uint64_t> weight_enumerator(const BitMatrix& basis);

// Coordinate deletion: drops the given positions and returns the canonical
// basis of the punctured code.
BitMatrix puncture(const BitMatrix& G, std::span<const std::size_t> positions);

// Support-splitting signature of a position: the hull weight enumerator of
// the code punctured at {i} ∪ pinned. Equivalent codes induce equal
// signature multisets.
std::vector<std::uint64_t> position_signature(const CodeHandle& C, std::size_t i,
                                              std::span<const std::size_t> pinned);

struct SsaResult {
    enum class Status { Found, Inequivalent, Degenerate };
    Status status;
    std::optional<Perm> perm;   // set iff status == Found
    std::uint64_t nodes = 0;    // search nodes consumed
};

// Support Splitting Algorithm: finds a permutation pi with pi(C1) = C2, or
// proves none exists. Position signatures partition the coordinates; when
// classes stay ambiguous the search pins matched positions and refines,
// backtracking over class-respecting assignments. Degenerate is returned
// only when the node budget runs out. Any returned permutation has been
// verified by row-space equality of the permuted generators.
SsaResult ssa_permutation(const CodeHandle& C1, const CodeHandle& C2,
                          std::uint64_t node_budget = 1'000'000);

// Exhaustive oracle for n <= 10 (throws TooLarge beyond): searches all
// permutations with column-signature pruning; nullopt means inequivalent.
std::optional<Perm> bruteforce_permutation(const CodeHandle& C1, const CodeHandle& C2);

// Human-readable dump of the root signature partition: one line per class
// with its positions, plus the hull summary. Diagnostic output for attack
// reports.
std::string signature_partition_dump(const CodeHandle& C);

}  // namespace mcx::equiv
