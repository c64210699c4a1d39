#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphord/error.hpp"

namespace sphord {

using Label = std::string;
using LabelTuple = std::vector<Label>;
using IndexTuple = std::vector<int>; // entries are positions in the domain list

struct Budget {
    // Operation-count guard for exhaustive checks and enumerations.
    unsigned long long membership_tests = 100'000'000ULL;
    // Guards for the logic module.
    int max_diagram_variables = 7;
    int max_quantifier_depth = 6;
    unsigned long long decide_nodes = 10'000'000ULL;
    // Honors the SPHORD_BUDGET environment variable when set (overrides the
    // operation-count guards).
    static Budget from_env();
};

// True iff some two entries of the tuple are equal. Such tuples are members of
// every spherical order by convention and are never stored explicitly.
bool has_repeated_entry(const IndexTuple& t);

// Parity of the permutation taking the sorted support to the tuple; defined
// for all-distinct entries. false = even, true = odd.
bool arrangement_is_odd(const IndexTuple& t);

// The orientation-preserving rotation: one-step cyclic shift for odd arity,
// two-step shift for even arity (identity at n = 2). This is the rotation under
// which spherical orders are closed; the one-step shift reverses orientation
// when the arity is even.
IndexTuple oriented_rotate(const IndexTuple& t);

// An n-ary spherical order on a finite labeled domain. Tuples with repeated
// entries are always members; the all-distinct part is stored explicitly.
// Immutable after construction.
class FiniteSphericalOrder {
public:
    // The canonical order of the given size: an all-distinct tuple is a member
    // iff it is an even arrangement of its sorted support (sorted = the order
    // the labels are listed in). Requires n >= 2 and distinct labels; the
    // distinct part is empty when the domain is smaller than n.
    static FiniteSphericalOrder derive(int arity, std::vector<Label> domain,
                                       const Budget& budget = {});

    // Build from an explicit tuple list. With close_under_rotation the
    // orientation-preserving rotation orbit of every listed tuple is added
    // (file semantics); without it the tuple set is taken verbatim, which
    // permits structures that violate the rotation axiom (used by tests and
    // the axiom checker's counterexample paths). Repeated-entry tuples are
    // rejected: they are implied.
    static FiniteSphericalOrder from_tuples(int arity, std::vector<Label> domain,
                                            const std::vector<LabelTuple>& tuples,
                                            bool close_under_rotation);

    int arity() const { return arity_; }
    int size() const { return static_cast<int>(domain_.size()); }
    const std::vector<Label>& domain() const { return domain_; }

    int index_of(const Label& l) const;
    const Label& label_at(int i) const { return domain_[static_cast<size_t>(i)]; }

    // Membership. Tuple length must equal the arity and labels must belong to
    // the domain.
    bool contains(const LabelTuple& t) const;
    bool contains(const IndexTuple& t) const;

    // Number of member tuples including the implied repeated-entry ones.
    long long relation_size() const;

    const std::set<IndexTuple>& distinct_part() const { return distinct_; }

    // Members whose first entry is their minimal entry (the generator tuples
    // of a derived order).
    std::vector<LabelTuple> min_first_representatives() const;

    // One representative per orientation-preserving rotation orbit, the
    // lexicographically least; used for the file format.
    std::vector<LabelTuple> canonical_representatives() const;

    // Substructure induced on a subset of the domain (labels keep their
    // relative order).
    FiniteSphericalOrder restrict_to(const std::vector<Label>& subset) const;

    IndexTuple to_indices(const LabelTuple& t) const;
    LabelTuple to_labels(const IndexTuple& t) const;

    friend bool operator==(const FiniteSphericalOrder& a, const FiniteSphericalOrder& b) {
        return a.arity_ == b.arity_ && a.domain_ == b.domain_ && a.distinct_ == b.distinct_;
    }

private:
    FiniteSphericalOrder(int arity, std::vector<Label> domain);

    int arity_;
    std::vector<Label> domain_;
    std::map<Label, int> index_;
    std::set<IndexTuple> distinct_;
};

// Exhaustive axiom verification. Axioms, named by content:
//   rotation        membership is invariant under the orientation-preserving
//                   rotation of the tuple;
//   swap_exclusive  a tuple and a position-swapped copy are both members only
//                   when some two entries are equal;
//   slot_cover      if a tuple is a member then every domain element can
//                   replace some coordinate keeping membership (for ternary
//                   orders: the first or last coordinate, the classical
//                   circular-order form);
//   swap_total      a tuple or its position-swapped copy is always a member.
struct AxiomReport {
    struct Check {
        bool passed = true;
        // Counterexample tuples, empty when passed. slot_cover stores the
        // member tuple followed by the element (as a 1-tuple) with no slot.
        std::vector<LabelTuple> counterexample;
    };
    Check rotation;
    Check swap_exclusive;
    Check slot_cover;
    Check swap_total;
    unsigned long long membership_tests = 0;

    bool all_passed() const {
        return rotation.passed && swap_exclusive.passed && slot_cover.passed && swap_total.passed;
    }
};

AxiomReport check_axioms(const FiniteSphericalOrder& order, const Budget& budget = {});

// m^n - (m!/(m-n)!)/2 in exact integer arithmetic; the member count of the
// spherical order of arity n on m points. Requires m >= n >= 2.
unsigned long long cardinality_formula(int arity, int size);

// Relation-preserving bijection between the domains, if one exists.
// Backtracking search; both structures must have the same arity.
std::optional<std::map<Label, Label>> are_isomorphic(const FiniteSphericalOrder& a,
                                                     const FiniteSphericalOrder& b);

// All relations on the given domain size satisfying the four axioms, grouped
// into isomorphism classes. Returns one representative per class plus the
// number of labeled relations in that class. The search space is one
// orientation choice per n-element subset of the domain (swap_exclusive +
// swap_total force membership on each subset to be one of the two parity
// classes); slot_cover is then checked exhaustively.
struct OrderClass {
    FiniteSphericalOrder representative;
    unsigned long long labeled_count = 0;
};
std::vector<OrderClass> enumerate_all_orders(int arity, int size, const Budget& budget = {});

// Convenience: domain ["1", "2", ..., m].
std::vector<Label> numeric_labels(int m);

} // namespace sphord
