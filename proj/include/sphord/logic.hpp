#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sphord/order_core.hpp"

namespace sphord {

// First-order formulas over the n-ary order relation and equality, written as
// s-expressions:
//   (K v1 ... vn)  (= v w)  (not F)  (and F...)  (or F...)  (implies F G)
//   (exists v F)  (forall v F)
struct Formula {
    enum class Kind { KAtom, EqAtom, Not, And, Or, Implies, Exists, Forall };
    Kind kind;
    std::vector<std::string> vars; // KAtom: arguments; EqAtom: two; binders: the variable
    std::vector<Formula> children;

    friend bool operator==(const Formula&, const Formula&) = default;
};

// Parses one formula; K-atoms must have exactly `arity` arguments. Syntax
// errors carry the byte position.
Formula parse_formula(const std::string& text, int arity);
std::string print_formula(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
bool is_quantifier_free(const Formula& f);
int quantifier_depth(const Formula& f);

// Tarskian evaluation over a finite structure; quantifiers range over the
// domain. Free variables must be assigned.
bool eval_finite(const FiniteSphericalOrder& order, const Formula& f,
                 const std::map<std::string, Label>& assignment);

// A complete atomic type: an equality partition of variables plus a consistent
// spherical order on the classes. Consistent means the class relation is a
// relabeling of the derived order of that size, which is how diagrams are
// generated; members lists the all-distinct class tuples.
struct Diagram {
    int arity = 2;
    std::vector<std::string> vars;
    std::vector<int> class_of; // parallel to vars, classes numbered by first occurrence
    int num_classes = 0;
    std::set<IndexTuple> members;

    int class_of_var(const std::string& v) const;
    // The class relation as a finite structure, classes labeled by their first
    // variable.
    FiniteSphericalOrder class_order() const;
    // Same diagram with vars sorted and classes renumbered by first occurrence.
    Diagram canonical() const;
    // Diagram induced on a subset of the variables.
    Diagram restricted_to(const std::set<std::string>& keep) const;

    friend bool operator==(const Diagram&, const Diagram&) = default;
};

// All distinct consistent class relations on r classes (relabelings of the
// derived order, deduplicated). Memoized.
const std::vector<std::set<IndexTuple>>& consistent_class_relations(int arity, int num_classes);

// Every diagram over the given variables: partitions times consistent class
// relations. Variables are sorted; |vars| is limited by budget.max_diagram_variables.
std::vector<Diagram> enumerate_diagrams(int arity, const std::set<std::string>& vars,
                                        const Budget& budget = {});

// Every diagram on vars + v whose restriction to vars equals d: v joining each
// existing class, plus every consistent relation on one more class that
// restricts to d's relation.
std::vector<Diagram> extend_diagrams(const Diagram& d, const std::string& v);

// A consistent diagram on the free variables satisfying the quantifier-free
// formula, if any (first in enumeration order).
std::optional<Diagram> qf_sat(int arity, const Formula& f, const Budget& budget = {});

// Truth of a sentence in the theory of the countable dense order of this
// arity (the rational model). Structural recursion whose state is the equality
// partition of the bound variables together with the rank pattern of the
// classes; quantifiers branch over joining a class or inserting into a rank
// gap. The rank pattern rather than the induced relation is the state because
// at even arity two patterns with equal induced relations admit different
// one-variable extensions (quantifier-free types do not force complete types
// there), and order-preserving bijections are automorphisms, so the pattern
// determines the complete type at every arity.
bool decide_sentence(int arity, const Formula& sentence, const Budget& budget = {});

// The axiom and density sentences for the given arity, in the exact form the
// axiom checker uses (rotation uses the orientation-preserving shift, the
// ternary slot axiom replaces end coordinates only).
Formula axiom_rotation(int arity);
Formula axiom_swap_exclusive(int arity);
Formula axiom_slot_cover(int arity);
Formula axiom_swap_total(int arity);
Formula density_sentence(int arity);

} // namespace sphord
