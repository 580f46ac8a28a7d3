#include "levywn/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace levywn {

namespace {

void strip_trailing_zeros(std::vector<unsigned>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// Exact binomial in 64 bits; 0 when r out of range.  The incremental
// multiply/divide stays integral because C(n,i) divides the running product.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < r; ++i) {
        result = result * (n - i) / (i + 1);
    }
    return result;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries)) {
    strip_trailing_zeros(entries_);
}

MultiIndex MultiIndex::unit(std::size_t l) {
    if (l < 1) throw std::invalid_argument("MultiIndex::unit: position must be >= 1");
    std::vector<unsigned> e(l, 0u);
    e[l - 1] = 1u;
    return MultiIndex(std::move(e));
}

unsigned MultiIndex::at(std::size_t pos) const {
    if (pos < 1) throw std::invalid_argument("MultiIndex::at: positions are 1-based");
    return pos <= entries_.size() ? entries_[pos - 1] : 0u;
}

std::uint64_t MultiIndex::order() const {
    std::uint64_t s = 0;
    for (unsigned e : entries_) s += e;
    return s;
}

double MultiIndex::factorial() const {
    double result = 1.0;
    for (unsigned e : entries_) {
        for (unsigned i = 2; i <= e; ++i) result *= static_cast<double>(i);
    }
    if (!std::isfinite(result)) {
        throw std::overflow_error("MultiIndex::factorial: value exceeds double range");
    }
    return result;
}

double MultiIndex::weight(double k) const {
    double result = 1.0;
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        if (entries_[j] == 0) continue;
        result *= std::pow(2.0 * static_cast<double>(j + 1),
                           k * static_cast<double>(entries_[j]));
    }
    return result;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    std::vector<unsigned> e(std::max(entries_.size(), other.entries_.size()), 0u);
    for (std::size_t i = 0; i < entries_.size(); ++i) e[i] += entries_[i];
    for (std::size_t i = 0; i < other.entries_.size(); ++i) e[i] += other.entries_[i];
    return MultiIndex(std::move(e));
}

bool MultiIndex::operator<(const MultiIndex& other) const {
    const std::uint64_t a = order(), b = other.order();
    if (a != b) return a < b;
    return entries_ < other.entries_;
}

std::string MultiIndex::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i > 0) s += ',';
        s += std::to_string(entries_[i]);
    }
    s += ']';
    return s;
}

MultiIndex MultiIndex::parse(std::string_view text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw std::invalid_argument("MultiIndex::parse: expected bracketed list");
    }
    std::string body(text.substr(1, text.size() - 2));
    std::vector<unsigned> entries;
    if (!body.empty()) {
        std::istringstream in(body);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            const long v = std::stol(tok);
            if (v < 0) throw std::invalid_argument("MultiIndex::parse: negative entry");
            entries.push_back(static_cast<unsigned>(v));
        }
    }
    return MultiIndex(std::move(entries));
}

std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j) {
    if (i < 1 || j < 1) throw std::invalid_argument("cantor_pair: arguments must be >= 1");
    const std::uint64_t s = i + j - 2;
    return j + s * (s + 1) / 2;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("cantor_unpair: argument must be >= 1");
    // Largest m with m(m+1)/2 < k; start from the float estimate and correct.
    std::uint64_t m = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
    while (m * (m + 1) / 2 >= k) --m;
    while ((m + 1) * (m + 2) / 2 < k) ++m;
    const std::uint64_t j = k - m * (m + 1) / 2;
    const std::uint64_t i = m + 2 - j;
    return {i, j};
}

std::uint64_t dim_index(std::span<const unsigned> tuple) {
    const std::size_t d = tuple.size();
    if (d == 0) throw std::invalid_argument("dim_index: empty tuple");
    std::uint64_t s = 0;
    for (unsigned t : tuple) {
        if (t < 1) throw std::invalid_argument("dim_index: components must be >= 1");
        s += t;
    }
    if (d == 1) return tuple[0];

    // Tuples with smaller coordinate sum come first.
    std::uint64_t idx = 0;
    for (std::uint64_t sp = d; sp < s; ++sp) idx += binomial(sp - 1, d - 1);

    // Lexicographic rank within the fixed-sum class.
    std::uint64_t rem = s;
    for (std::size_t p = 0; p + 1 < d; ++p) {
        for (unsigned v = 1; v < tuple[p]; ++v) {
            idx += binomial(rem - v - 1, d - p - 2);
        }
        rem -= tuple[p];
    }
    return idx + 1;
}

std::vector<unsigned> dim_tuple(std::size_t d, std::uint64_t k) {
    if (d == 0 || k < 1) throw std::invalid_argument("dim_tuple: need d >= 1, k >= 1");
    if (d == 1) return {static_cast<unsigned>(k)};

    std::uint64_t s = d;
    for (;;) {
        const std::uint64_t c = binomial(s - 1, d - 1);
        if (k <= c) break;
        k -= c;
        ++s;
    }
    std::vector<unsigned> tuple;
    tuple.reserve(d);
    std::uint64_t rem = s;
    for (std::size_t p = 0; p + 1 < d; ++p) {
        unsigned v = 1;
        for (;;) {
            const std::uint64_t c = binomial(rem - v - 1, d - p - 2);
            if (k <= c) break;
            k -= c;
            ++v;
        }
        tuple.push_back(v);
        rem -= v;
    }
    tuple.push_back(static_cast<unsigned>(rem));
    return tuple;
}

}  // namespace levywn
