#pragma once

#include <cstdint>
#include <vector>

#include "sphord/order_core.hpp"
#include "sphord/rational.hpp"

namespace sphord {

// A countable dense n-spherical order on rationals, given as an element
// enumeration plus a membership rule. The rule is the same parity rule the
// finite orders use: a tuple with a repeated entry is a member, an all-distinct
// tuple is a member iff it is an even arrangement of its sorted values. Any
// finite sample therefore induces a structure equal to the derived finite
// order on those points.
//
// Two enumerations are provided:
//   standard  a fixed pairing-function enumeration of all rationals
//             (0, 1, -1, 1/2, -1/2, 2, -2, ...);
//   seeded    deterministic per-seed interleavings of dyadics in (0,1),
//             dense and endpoint-free.
class DenseOracle {
public:
    static DenseOracle standard(int arity);
    static DenseOracle seeded(int arity, std::uint64_t seed);

    int arity() const { return arity_; }
    bool is_seeded() const { return kind_ == Kind::Seeded; }
    std::uint64_t seed() const { return seed_; }

    // Injective, deterministic. standard: element_at(0) == 0.
    Rational element_at(std::uint64_t index) const;

    // Membership of an arity-length tuple of rationals.
    bool contains(const std::vector<Rational>& tuple) const;

    // Given a member tuple with first entry != second entry, returns a
    // rational b outside the tuple with both
    //   contains(a1, b, a3, ..., an)  and  contains(b, a2, a3, ..., an).
    // Candidates are the midpoints of consecutive sorted tuple values plus one
    // point below and one above; the membership rule only depends on b's
    // position in the linear order, so these cover every possible position.
    // Raises errc::no_witness if none passes (never for these oracles — the
    // point of surfacing it), errc::invalid_argument when the request violates
    // its precondition.
    Rational density_witness(const std::vector<Rational>& tuple) const;

private:
    enum class Kind { Standard, Seeded };
    DenseOracle(int arity, Kind kind, std::uint64_t seed);

    int arity_;
    Kind kind_;
    std::uint64_t seed_;
};

// Parity membership rule on raw rational tuples (arity = tuple length).
bool spherical_member(const std::vector<Rational>& tuple);

// The finite structure induced on the given sample points, labeled by their
// "p/q" strings in increasing value order.
FiniteSphericalOrder induced_structure(const DenseOracle& oracle,
                                       const std::vector<Rational>& points);

} // namespace sphord
