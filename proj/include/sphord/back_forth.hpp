#pragma once

#include <cstdint>
#include <vector>

#include "sphord/dense_model.hpp"
#include "sphord/rational.hpp"

namespace sphord {

// A finite partial isomorphism between two dense oracles, grown one pair at a
// time. Steps alternate sides: with an even number of pairs the least-index
// not-yet-mapped source element is matched against the first enumerated target
// element that preserves membership of every tuple over the extended domain
// and keeps the map order-compatible; with an odd number the roles are
// exchanged. The order condition is what makes the growth dead-end free: at
// even arity the early pairs face no all-distinct tuples, so tuple
// preservation alone admits order-scrambled maps that can become unextendable.
// After 2m steps the first m elements of each enumeration are covered.
// Deterministic given oracles and seeds.
class PartialIso {
public:
    struct Entry {
        Rational source_value;
        Rational target_value;
        bool extended_from_source; // which side picked the element to cover
    };

    PartialIso(DenseOracle source, DenseOracle target,
               std::uint64_t search_bound = 100'000);

    const DenseOracle& source() const { return source_; }
    const DenseOracle& target() const { return target_; }
    const std::vector<Entry>& pairs() const { return pairs_; }

    // One extension. Raises errc::search_exhausted when no witness appears
    // among the first search_bound enumerated candidates.
    void step();

    // All member-equivalence checks for tuples involving the pair added last;
    // earlier tuples are untouched by extension, so running this after every
    // step establishes the full preservation invariant over the whole domain.
    bool last_step_preserves() const;

    // Direct re-check of every all-distinct tuple over the whole domain
    // (quadratic-in-domain per tuple; for cross-validation on small runs).
    bool preserves_all_tuples() const;

private:
    bool candidate_preserves(const Rational& new_src, const Rational& new_tgt) const;

    DenseOracle source_;
    DenseOracle target_;
    std::uint64_t search_bound_;
    std::vector<Entry> pairs_;
    std::uint64_t next_source_index_ = 0;
    std::uint64_t next_target_index_ = 0;
};

// Applies `steps` extension steps between two fresh oracles. Arity must match;
// errors from step() propagate.
PartialIso run_back_forth(const DenseOracle& source, const DenseOracle& target,
                          std::uint64_t steps, std::uint64_t search_bound = 100'000);

} // namespace sphord
