#include "sphord/dense_model.hpp"

#include <algorithm>

namespace sphord {

namespace {

// Stern's diatomic sequence; fusc(j)/fusc(j+1) walks the Calkin-Wilf tree
// breadth-first and hits every positive rational exactly once.
unsigned long long fusc(unsigned long long n) {
    unsigned long long a = 1, b = 0;
    while (n) {
        if (n & 1) b += a; else a += b;
        n >>= 1;
    }
    return b;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

DenseOracle::DenseOracle(int arity, Kind kind, std::uint64_t seed)
    : arity_(arity), kind_(kind), seed_(seed) {
    if (arity_ < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
}

DenseOracle DenseOracle::standard(int arity) { return DenseOracle(arity, Kind::Standard, 0); }

DenseOracle DenseOracle::seeded(int arity, std::uint64_t seed) {
    return DenseOracle(arity, Kind::Seeded, seed);
}

Rational DenseOracle::element_at(std::uint64_t index) const {
    if (kind_ == Kind::Standard) {
        if (index == 0) return Rational(0);
        std::uint64_t j = (index + 1) / 2;
        auto num = static_cast<long long>(fusc(j));
        auto den = static_cast<long long>(fusc(j + 1));
        return (index % 2 == 1) ? Rational(num, den) : Rational(-num, den);
    }
    // Seeded: walk dyadic levels; level L holds the 2^(L-1) odd-numerator
    // dyadics k/2^L in a per-seed multiplicative shuffle (odd multipliers are
    // units mod 2^L, so each level is a permutation of its odds).
    std::uint64_t level = 1, first = 0;
    while (index - first >= (1ULL << (level - 1))) {
        first += 1ULL << (level - 1);
        ++level;
        if (level > 62) throw Error(errc::overflow, "enumeration index too large");
    }
    std::uint64_t j = index - first;
    std::uint64_t mod = 1ULL << level;
    std::uint64_t mult = splitmix64(seed_ ^ (level * 0x9e3779b97f4a7c15ULL)) | 1ULL;
    std::uint64_t k = (mult * (2 * j + 1)) & (mod - 1);
    return Rational(static_cast<long long>(k), static_cast<long long>(mod));
}

bool spherical_member(const std::vector<Rational>& tuple) {
    int inversions = 0;
    for (size_t i = 0; i < tuple.size(); ++i)
        for (size_t j = i + 1; j < tuple.size(); ++j) {
            if (tuple[i] == tuple[j]) return true;
            if (tuple[j] < tuple[i]) ++inversions;
        }
    return (inversions & 1) == 0;
}

bool DenseOracle::contains(const std::vector<Rational>& tuple) const {
    if (static_cast<int>(tuple.size()) != arity_)
        throw Error(errc::wrong_tuple_length,
                    "expected " + std::to_string(arity_) + " entries, got " +
                        std::to_string(tuple.size()));
    return spherical_member(tuple);
}

Rational DenseOracle::density_witness(const std::vector<Rational>& tuple) const {
    if (!contains(tuple)) throw Error(errc::invalid_argument, "tuple is not a member");
    if (tuple[0] == tuple[1])
        throw Error(errc::invalid_argument, "first two entries must differ");

    std::vector<Rational> sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<Rational> candidates;
    candidates.push_back(sorted.front() - Rational(1));
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
        candidates.push_back(Rational::midpoint(sorted[i], sorted[i + 1]));
    candidates.push_back(sorted.back() + Rational(1));

    for (const auto& b : candidates) {
        std::vector<Rational> first = tuple;
        first[1] = b;
        std::vector<Rational> second = tuple;
        second[0] = b;
        second[1] = tuple[1];
        if (spherical_member(first) && spherical_member(second)) return b;
    }
    throw Error(errc::no_witness, "relation is not dense at this tuple");
}

FiniteSphericalOrder induced_structure(const DenseOracle& oracle,
                                       const std::vector<Rational>& points) {
    std::vector<Rational> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<Label> labels;
    labels.reserve(sorted.size());
    for (const auto& r : sorted) labels.push_back(r.str());

    const int n = oracle.arity();
    const int m = static_cast<int>(sorted.size());
    std::vector<LabelTuple> members;
    if (m >= n) {
        IndexTuple t(static_cast<size_t>(n), 0);
        while (true) {
            if (!has_repeated_entry(t)) {
                std::vector<Rational> vals;
                vals.reserve(t.size());
                for (int i : t) vals.push_back(sorted[static_cast<size_t>(i)]);
                if (oracle.contains(vals)) {
                    LabelTuple lt;
                    for (int i : t) lt.push_back(labels[static_cast<size_t>(i)]);
                    members.push_back(lt);
                }
            }
            int pos = n - 1;
            while (pos >= 0 && ++t[static_cast<size_t>(pos)] == m) {
                t[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return FiniteSphericalOrder::from_tuples(n, labels, members, /*close_under_rotation=*/false);
}

} // namespace sphord
