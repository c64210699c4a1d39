#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphord/dense_model.hpp"
#include "sphord/logic.hpp"
#include "sphord/order_core.hpp"

namespace testutil {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline std::vector<std::string> var_pool(int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back("v" + std::to_string(i));
    return out;
}

inline sphord::Formula random_atom(Rng& rng, int arity, const std::vector<std::string>& vars) {
    using sphord::Formula;
    if (rng.below(3) == 0) {
        return Formula{Formula::Kind::EqAtom,
                       {vars[rng.below(vars.size())], vars[rng.below(vars.size())]},
                       {}};
    }
    std::vector<std::string> args;
    for (int i = 0; i < arity; ++i) args.push_back(vars[rng.below(vars.size())]);
    return Formula{Formula::Kind::KAtom, std::move(args), {}};
}

// Random quantifier-free formula over the given variables.
inline sphord::Formula random_qf(Rng& rng, int arity, const std::vector<std::string>& vars,
                                 int depth) {
    using sphord::Formula;
    if (depth == 0 || rng.below(3) == 0) return random_atom(rng, arity, vars);
    switch (rng.below(4)) {
    case 0:
        return Formula{Formula::Kind::Not, {}, {random_qf(rng, arity, vars, depth - 1)}};
    case 1: {
        std::vector<Formula> cs;
        int k = 2 + static_cast<int>(rng.below(2));
        for (int i = 0; i < k; ++i) cs.push_back(random_qf(rng, arity, vars, depth - 1));
        return Formula{Formula::Kind::And, {}, std::move(cs)};
    }
    case 2: {
        std::vector<Formula> cs;
        int k = 2 + static_cast<int>(rng.below(2));
        for (int i = 0; i < k; ++i) cs.push_back(random_qf(rng, arity, vars, depth - 1));
        return Formula{Formula::Kind::Or, {}, std::move(cs)};
    }
    default:
        return Formula{Formula::Kind::Implies,
                       {},
                       {random_qf(rng, arity, vars, depth - 1),
                        random_qf(rng, arity, vars, depth - 1)}};
    }
}

// Positive boolean combination of atoms (no negation / implication).
inline sphord::Formula random_positive(Rng& rng, int arity, const std::vector<std::string>& vars,
                                       int depth) {
    using sphord::Formula;
    if (depth == 0 || rng.below(3) == 0) return random_atom(rng, arity, vars);
    std::vector<Formula> cs;
    int k = 2 + static_cast<int>(rng.below(2));
    for (int i = 0; i < k; ++i) cs.push_back(random_positive(rng, arity, vars, depth - 1));
    return Formula{rng.below(2) ? Formula::Kind::And : Formula::Kind::Or, {}, std::move(cs)};
}

// Brute-force satisfiability of a quantifier-free formula: assignments of its
// free variables into the derived order on |vars| points. Independent of the
// diagram machinery.
inline bool brute_force_qf_sat(int arity, const sphord::Formula& f) {
    auto fv = sphord::free_variables(f);
    std::vector<std::string> vars(fv.begin(), fv.end());
    const int m = std::max<int>(1, static_cast<int>(vars.size()));
    auto order = sphord::FiniteSphericalOrder::derive(arity, sphord::numeric_labels(m));
    std::vector<int> choice(vars.size(), 0);
    while (true) {
        std::map<std::string, sphord::Label> asg;
        for (size_t i = 0; i < vars.size(); ++i)
            asg[vars[i]] = order.domain()[static_cast<size_t>(choice[i])];
        if (sphord::eval_finite(order, f, asg)) return true;
        int pos = static_cast<int>(vars.size()) - 1;
        while (pos >= 0 && ++choice[static_cast<size_t>(pos)] == m) {
            choice[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return false;
}

// Direct rational-arithmetic check that a pair list preserves membership of
// every tuple over its domain; the oracle for the pattern-based fast path.
inline bool brute_preserves(int arity,
                            const std::vector<std::pair<sphord::Rational, sphord::Rational>>& map) {
    const int k = static_cast<int>(map.size());
    if (k < arity) return true;
    std::vector<int> t(static_cast<size_t>(arity), 0);
    while (true) {
        std::vector<sphord::Rational> src, tgt;
        for (int i : t) {
            src.push_back(map[static_cast<size_t>(i)].first);
            tgt.push_back(map[static_cast<size_t>(i)].second);
        }
        if (sphord::spherical_member(src) != sphord::spherical_member(tgt)) return false;
        int pos = arity - 1;
        while (pos >= 0 && ++t[static_cast<size_t>(pos)] == k) {
            t[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return true;
}

} // namespace testutil
