#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace levywn {

/// Multi-index with finitely many nonzero entries, the index set of the
/// chaos basis.  Entries are 1-based positions; the stored form never has
/// trailing zeros, so equality and hashing are well defined.  The empty
/// index is the zero index.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> entries);

    /// Unit index with a single 1 at (1-based) position l.
    static MultiIndex unit(std::size_t l);

    /// Entry at 1-based position; 0 beyond the stored range.
    unsigned at(std::size_t pos) const;

    /// |alpha| = sum of entries.
    std::uint64_t order() const;

    /// Position of the last nonzero entry; 0 for the zero index.
    std::size_t index() const { return entries_.size(); }

    /// alpha! = prod_i alpha_i!, as a double.  Throws std::overflow_error
    /// when the product exceeds the double range.
    double factorial() const;

    /// (2N)^{k alpha} = prod_j (2j)^{k alpha_j}.  k may be negative and need
    /// not be integral.
    double weight(double k) const;

    bool is_zero() const { return entries_.empty(); }

    MultiIndex operator+(const MultiIndex& other) const;

    bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

    /// Graded order: by |alpha| first, then lexicographic on entries.
    bool operator<(const MultiIndex& other) const;

    const std::vector<unsigned>& entries() const { return entries_; }

    /// Text form "[1,0,2]"; the zero index is "[]".
    std::string to_string() const;
    static MultiIndex parse(std::string_view text);

private:
    std::vector<unsigned> entries_;
};

/// Diagonal pairing N x N -> N:  (i,j) -> j + (i+j-2)(i+j-1)/2, i,j >= 1.
std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j);

/// Inverse of cantor_pair; k >= 1.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k);

/// Graded-lexicographic bijection N^d -> N (all components >= 1, 1-based
/// result): tuples sorted by coordinate sum, ties broken lexicographically.
std::uint64_t dim_index(std::span<const unsigned> tuple);

/// Inverse of dim_index for dimension d.
std::vector<unsigned> dim_tuple(std::size_t d, std::uint64_t k);

}  // namespace levywn
