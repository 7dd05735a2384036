#include "mcx/equivalence.hpp"

#include <bit>
#include <map>

namespace mcx::equiv {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_counts(const std::vector<std::uint64_t>& counts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto c : counts) h = mix64(h ^ c);
    return h;
}

}  // namespace

BitMatrix hull_basis(const BitMatrix& G) {
    // u G lies in the hull iff u (G G^T) = 0; G G^T is symmetric, so its
    // nullspace gives the left kernel directly.
    BitMatrix gram = G * G.transpose();
    BitMatrix kernel = gram.nullspace();
    return (kernel * G).row_space_canonical();
}

std::vector<std::uint64_t> weight_enumerator(const BitMatrix& basis) {
    if (basis.rows() > 20) throw TooLarge("weight_enumerator: more than 20 basis rows");
    std::vector<std::uint64_t> counts(basis.cols() + 1, 0);
    BitVector word(basis.cols());
    counts[0] = 1;
    const std::uint64_t total = std::uint64_t{1} << basis.rows();
    for (std::uint64_t i = 1; i < total; ++i) {
        word ^= basis.row(static_cast<std::size_t>(std::countr_zero(i)));
        ++counts[word.weight()];
    }
    return counts;
}

BitMatrix puncture(const BitMatrix& G, std::span<const std::size_t> positions) {
    std::vector<bool> drop(G.cols(), false);
    for (auto p : positions) drop[p] = true;
    std::vector<std::size_t> keep;
    keep.reserve(G.cols());
    for (std::size_t c = 0; c < G.cols(); ++c)
        if (!drop[c]) keep.push_back(c);
    return G.select_cols(keep).row_space_canonical();
}

CodeHandle::CodeHandle(const BitMatrix& G) : G_(G.row_space_canonical()) {
    dual_ = G_.nullspace().row_space_canonical();
    hull_ = hull_basis(G_);
    if (hull_.rows() <= 20)
        hull_enum_ = weight_enumerator(hull_);
    else
        hull_enum_ = {hull_.rows()};  // too large to enumerate; dimension marker
}

std::vector<std::uint64_t> position_signature(const CodeHandle& C, std::size_t i,
                                              std::span<const std::size_t> pinned) {
    std::vector<std::size_t> cut(pinned.begin(), pinned.end());
    cut.push_back(i);
    return weight_enumerator(hull_basis(puncture(C.generator(), cut)));
}

namespace {

// ---- SSA search engine ----------------------------------------------------
//
// The backtracking state keeps, per code, the enumerated words of whichever
// of the code / its dual are small enough to enumerate. Each word carries a
// running hash of its bits at the pinned positions (in pin order), so a
// position's refinement color can be recomputed from scratch-free word
// scans. All colors are permutation invariants of (code, pinned sequence),
// which keeps the pruning sound; a final row-space check guards the result.

constexpr std::size_t kEnumDimCap = 16;
constexpr std::uint64_t kSeqPrime = 0x100000001b3ULL;          // odd -> invertible mod 2^64
constexpr std::uint64_t kSeqPrimeInv = 0xce965057aff6957bULL;  // kSeqPrime^-1 mod 2^64

struct WordSet {
    std::vector<std::vector<std::uint64_t>> bits;  // packed words
    std::vector<std::uint32_t> weight;
    std::vector<std::uint64_t> seq_hash;  // running pinned-bit sequence hash

    void pin(std::size_t pos) {
        const std::size_t wi = pos >> 6;
        const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
        for (std::size_t w = 0; w < bits.size(); ++w)
            seq_hash[w] = seq_hash[w] * kSeqPrime + ((bits[w][wi] & mask) ? 2 : 1);
    }
    void unpin(std::size_t pos) {
        const std::size_t wi = pos >> 6;
        const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
        for (std::size_t w = 0; w < bits.size(); ++w)
            seq_hash[w] = (seq_hash[w] - ((bits[w][wi] & mask) ? 2 : 1)) * kSeqPrimeInv;
    }
};

std::optional<WordSet> enumerate_words(const BitMatrix& basis) {
    if (basis.rows() > kEnumDimCap) return std::nullopt;
    WordSet set;
    const std::uint64_t total = std::uint64_t{1} << basis.rows();
    set.bits.reserve(total);
    BitVector word(basis.cols());
    set.bits.push_back({word.words().begin(), word.words().end()});
    set.weight.push_back(0);
    for (std::uint64_t i = 1; i < total; ++i) {
        word ^= basis.row(static_cast<std::size_t>(std::countr_zero(i)));
        set.bits.push_back({word.words().begin(), word.words().end()});
        set.weight.push_back(static_cast<std::uint32_t>(word.weight()));
    }
    set.seq_hash.assign(set.bits.size(), 0x9e3779b97f4a7c15ULL);
    return set;
}

struct Side {
    const CodeHandle* C;
    std::vector<WordSet> sets;          // enumerated code and/or dual words
    std::vector<std::size_t> pinned;    // in pin order
    std::vector<bool> is_pinned;
    std::vector<std::uint64_t> root_color;

    void pin(std::size_t pos) {
        for (auto& s : sets) s.pin(pos);
        pinned.push_back(pos);
        is_pinned[pos] = true;
    }
    void unpin() {
        std::size_t pos = pinned.back();
        pinned.pop_back();
        is_pinned[pos] = false;
        for (auto& s : sets) s.unpin(pos);
    }

    // Refinement color of every position under the current pinned sequence.
    std::vector<std::uint64_t> colors() const {
        const std::size_t n = C->length();
        std::vector<std::uint64_t> acc(n, 0);
        for (const auto& s : sets) {
            for (std::size_t w = 0; w < s.bits.size(); ++w) {
                const std::uint64_t hw = mix64(s.seq_hash[w] ^ (std::uint64_t{s.weight[w]} << 32));
                const auto& bw = s.bits[w];
                for (std::size_t wi = 0; wi < bw.size(); ++wi) {
                    std::uint64_t word = bw[wi];
                    while (word) {
                        std::size_t i = wi * 64 + static_cast<std::size_t>(std::countr_zero(word));
                        word &= word - 1;
                        acc[i] += hw;
                    }
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) acc[i] = mix64(root_color[i] ^ acc[i]);
        return acc;
    }

    // Projection of the code onto the pinned coordinates, in pin order.
    BitMatrix projection(const BitMatrix& basis) const {
        return basis.select_cols(pinned).row_space_canonical();
    }
};

class SsaMatcher {
  public:
    SsaMatcher(const CodeHandle& C1, const CodeHandle& C2, std::uint64_t budget)
        : budget_(budget) {
        side_[0].C = &C1;
        side_[1].C = &C2;
    }

    SsaResult run() {
        const std::size_t n = side_[0].C->length();
        for (auto& s : side_) {
            if (auto prim = enumerate_words(s.C->generator())) s.sets.push_back(std::move(*prim));
            if (auto dual = enumerate_words(s.C->dual())) s.sets.push_back(std::move(*dual));
            s.is_pinned.assign(n, false);
            s.root_color.assign(n, 0);
        }
        // Root colors: the support-splitting signature of each position
        // (hull dimension alone when the punctured hull is too big to
        // enumerate -- still a permutation invariant).
        for (int c = 0; c < 2; ++c)
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t pos = i;
                BitMatrix h = hull_basis(puncture(side_[c].C->generator(), {&pos, 1}));
                side_[c].root_color[i] = h.rows() <= 20
                                             ? hash_counts(weight_enumerator(h))
                                             : mix64(h.rows());
            }

        assign_.assign(n, 0);
        int rc = dfs(0);
        if (rc == kFound) {
            Perm perm = Perm::from_mapping(assign_);
            return {SsaResult::Status::Found, std::move(perm), nodes_};
        }
        if (rc == kBudget) return {SsaResult::Status::Degenerate, std::nullopt, nodes_};
        return {SsaResult::Status::Inequivalent, std::nullopt, nodes_};
    }

  private:
    static constexpr int kFound = 0, kDead = 1, kBudget = 2;

    int dfs(std::size_t depth) {
        const std::size_t n = side_[0].C->length();
        if (depth == n) {
            // Verify: the permuted generator must span exactly C2.
            Perm perm = Perm::from_mapping(assign_);
            BitMatrix permuted = side_[0].C->generator().permute_cols(perm).row_space_canonical();
            return permuted == side_[1].C->generator() ? kFound : kDead;
        }

        auto col1 = side_[0].colors();
        auto col2 = side_[1].colors();
        // Class partition: every color must occur equally often on both
        // sides among unpinned positions.
        std::map<std::uint64_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> cls;
        for (std::size_t i = 0; i < n; ++i) {
            if (!side_[0].is_pinned[i]) cls[col1[i]].first.push_back(i);
            if (!side_[1].is_pinned[i]) cls[col2[i]].second.push_back(i);
        }
        const std::pair<std::vector<std::size_t>, std::vector<std::size_t>>* best = nullptr;
        for (const auto& [color, members] : cls) {
            if (members.first.size() != members.second.size()) return kDead;
            if (!members.first.empty() && (!best || members.first.size() < best->first.size()))
                best = &members;
        }

        const std::size_t i = best->first.front();
        for (std::size_t j : best->second) {
            if (++nodes_ > budget_) return kBudget;
            side_[0].pin(i);
            side_[1].pin(j);
            assign_[i] = static_cast<std::uint32_t>(j);
            if (consistent()) {
                int rc = dfs(depth + 1);
                if (rc != kDead) return rc;
            }
            side_[0].unpin();
            side_[1].unpin();
        }
        return kDead;
    }

    bool consistent() const {
        // Both codes, projected onto the pinned coordinates in matching
        // order, must agree (and dually); necessary for any extension.
        return side_[0].projection(side_[0].C->generator()) ==
                   side_[1].projection(side_[1].C->generator()) &&
               side_[0].projection(side_[0].C->dual()) ==
                   side_[1].projection(side_[1].C->dual());
    }

    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    Side side_[2];
    std::vector<std::uint32_t> assign_;
};

}  // namespace

SsaResult ssa_permutation(const CodeHandle& C1, const CodeHandle& C2, std::uint64_t node_budget) {
    if (C1.length() != C2.length() || C1.dim() != C2.dim())
        throw DimensionMismatch("ssa_permutation: codes must share n and k");
    if (C1.hull_enumerator() != C2.hull_enumerator())
        return {SsaResult::Status::Inequivalent, std::nullopt, 0};
    return SsaMatcher(C1, C2, node_budget).run();
}

std::optional<Perm> bruteforce_permutation(const CodeHandle& C1, const CodeHandle& C2) {
    const std::size_t n = C1.length();
    if (n > 10) throw TooLarge("bruteforce_permutation: n > 10");
    if (C2.length() != n || C1.dim() != C2.dim()) return std::nullopt;

    // Column signatures from the full codeword list: per position, the count
    // of codewords of each weight that are nonzero there.
    auto signatures = [n](const CodeHandle& C) {
        std::vector<std::vector<std::uint32_t>> sig(n, std::vector<std::uint32_t>(n + 1, 0));
        const std::uint64_t total = std::uint64_t{1} << C.dim();
        BitVector word(n);
        for (std::uint64_t i = 1; i < total; ++i) {
            word ^= C.generator().row(static_cast<std::size_t>(std::countr_zero(i)));
            const std::size_t w = word.weight();
            for (std::size_t p = 0; p < n; ++p)
                if (word.get(p)) ++sig[p][w];
        }
        return sig;
    };
    auto sig1 = signatures(C1);
    auto sig2 = signatures(C2);

    std::vector<std::uint32_t> assign(n, 0);
    std::vector<bool> used(n, false);
    std::vector<std::size_t> prefix1, prefix2;

    auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == n) {
            Perm perm = Perm::from_mapping(assign);
            return C1.generator().permute_cols(perm).row_space_canonical() == C2.generator();
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || sig1[depth] != sig2[j]) continue;
            prefix1.push_back(depth);
            prefix2.push_back(j);
            bool ok = C1.generator().select_cols(prefix1).row_space_canonical() ==
                      C2.generator().select_cols(prefix2).row_space_canonical();
            if (ok) {
                used[j] = true;
                assign[depth] = static_cast<std::uint32_t>(j);
                if (self(self, depth + 1)) return true;
                used[j] = false;
            }
            prefix1.pop_back();
            prefix2.pop_back();
        }
        return false;
    };
    if (dfs(dfs, 0)) return Perm::from_mapping(assign);
    return std::nullopt;
}

std::string signature_partition_dump(const CodeHandle& C) {
    std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < C.length(); ++i) {
        std::size_t pos = i;
        BitMatrix h = hull_basis(puncture(C.generator(), {&pos, 1}));
        if (h.rows() <= 20)
            classes[weight_enumerator(h)].push_back(i);
        else
            classes[{h.rows()}].push_back(i);
    }
    std::string out = "[" + std::to_string(C.length()) + ", " + std::to_string(C.dim()) +
                      "] code, hull dimension " + std::to_string(C.hull().rows()) + ", " +
                      std::to_string(classes.size()) + " signature class(es)\n";
    std::size_t idx = 0;
    for (const auto& [sig, members] : classes) {
        out += "  class " + std::to_string(idx++) + " (" + std::to_string(members.size()) +
               " positions):";
        for (std::size_t p : members) out += " " + std::to_string(p);
        out += "\n";
    }
    return out;
}

}  // namespace mcx::equiv
