#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sphord/error.hpp"

namespace sphord {

// Countable-model spectra of expansions of the dense order theory of a given
// arity. Two expansion modes:
//
//   ehrenfeucht(m)  the theory with a strictly "increasing" constant sequence
//                   plus m-2 dense coloring predicates; exactly m countable
//                   models for m >= 3 (m = 1 is accepted as the unexpanded,
//                   countably categorical theory; 0 and 2 are impossible).
//
//   constants       an abstract description of a constant expansion:
//                   counts[k] = number of nonisolated 1-types with k
//                   independently moving constant sequences. Admissible k:
//                   0 and 2..n-1 (for n = 2 also k = 2, the classic
//                   two-sided example). Spectrum: either continuum (when
//                   there are infinitely many such types) or the exact
//                   product of (2^k + 2)^{counts[k]}.
struct ExpansionSpec {
    enum class Mode { Ehrenfeucht, Constants };
    int arity = 4;
    Mode mode = Mode::Constants;
    int ehrenfeucht_m = 0;
    std::map<int, unsigned> counts;
    bool infinitely_many_types = false;

    static ExpansionSpec ehrenfeucht(int arity, int m);
    static ExpansionSpec constants(int arity, std::map<int, unsigned> counts,
                                   bool infinitely_many_types = false);
};

// Either a finite positive count or the continuum; finite values are exact
// 128-bit products (errors on overflow).
struct SpectrumResult {
    bool is_continuum = false;
    unsigned __int128 value = 1;

    std::string str() const;
    bool operator==(const SpectrumResult&) const = default;
};

SpectrumResult spectrum(const ExpansionSpec& spec);

// The admissible k values for a given arity, ascending; CLI count vectors are
// positional over this list.
std::vector<int> admissible_sequence_counts(int arity);

// Descriptors of the countable models of the ehrenfeucht(m) expansion: one
// prime model omitting the limit type, m-2 prime models over its completions,
// one saturated model.
struct ModelDescriptor {
    enum class Kind { Prime, PrimeOverRealization, Saturated, Limit } kind;
    int completion_index = -1; // for PrimeOverRealization
    std::string type_label;
    std::string description;
};
struct ModelCatalog {
    int arity = 0;
    int m = 0;
    std::vector<ModelDescriptor> models;
};
ModelCatalog ehrenfeucht_catalog(int arity, int m);

// For a nonisolated type with k >= 2 independently moving sequences: the
// number of almost prime models (3), limit models (2^k - 1) and their total
// (2^k + 2).
struct LimitCount {
    unsigned long long almost_prime = 0;
    unsigned long long limit = 0;
    unsigned long long total = 0;
    bool operator==(const LimitCount&) const = default;
};
LimitCount limit_count(int k);

// Hasse diagrams of the Rudin-Keisler preorder with limit-model counts as
// node labels, as DOT text with stable sorted emission.
//   T1        two-node chain labeled 0, 1
//   T2        three-node chain labeled 0, 0, 3
//   limit(k)  three-node chain labeled 0, 0, 2^k-1
// Products ("T1*limit(3)") emit the labeled disjoint union of the factors.
std::string hasse_dot(const std::string& kind);

} // namespace sphord
