#include "sphord/back_forth.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace sphord {

namespace {

struct PatternView {
    std::vector<Rational> src_sorted;
    std::vector<Rational> tgt_sorted;
    std::vector<int> map; // source rank -> target rank
};

int rank_of(const std::vector<Rational>& sorted, const Rational& v) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

PatternView build_pattern(const std::vector<PartialIso::Entry>& pairs,
                          const Rational* extra_src, const Rational* extra_tgt) {
    PatternView pv;
    pv.src_sorted.reserve(pairs.size() + 1);
    pv.tgt_sorted.reserve(pairs.size() + 1);
    for (const auto& e : pairs) {
        pv.src_sorted.push_back(e.source_value);
        pv.tgt_sorted.push_back(e.target_value);
    }
    if (extra_src) pv.src_sorted.push_back(*extra_src);
    if (extra_tgt) pv.tgt_sorted.push_back(*extra_tgt);
    std::sort(pv.src_sorted.begin(), pv.src_sorted.end());
    std::sort(pv.tgt_sorted.begin(), pv.tgt_sorted.end());

    pv.map.assign(pv.src_sorted.size(), -1);
    for (const auto& e : pairs)
        pv.map[static_cast<size_t>(rank_of(pv.src_sorted, e.source_value))] =
            rank_of(pv.tgt_sorted, e.target_value);
    if (extra_src)
        pv.map[static_cast<size_t>(rank_of(pv.src_sorted, *extra_src))] =
            rank_of(pv.tgt_sorted, *extra_tgt);
    return pv;
}

// Do all n-tuples containing `focus` keep their membership under the pattern?
// A tuple with a repeated entry is a member on both sides, so only all-distinct
// tuples matter. For those, membership is "even inversion count", and moving
// the focus through the insertion positions flips both sides' parity in step,
// so checking the focus in front covers every position.
bool pattern_preserves_around(const std::vector<int>& pattern, int arity, int focus) {
    const int k = static_cast<int>(pattern.size());
    if (k < arity) return true;
    const int depth = arity - 1;

    // rest[] holds the chosen ranks after the focus; inv counts inversions of
    // (focus, rest...) on each side, updated as entries are appended.
    std::vector<int> rest(static_cast<size_t>(depth));
    std::vector<int> rest_img(static_cast<size_t>(depth));
    const int focus_img = pattern[static_cast<size_t>(focus)];

    struct Frame { int value; int inv_src; int inv_tgt; };
    std::vector<Frame> stack;
    stack.reserve(static_cast<size_t>(depth));

    int inv_src = 0, inv_tgt = 0;
    int level = 0;
    int next_value = 0;

    while (true) {
        if (level == depth) {
            if (((inv_src ^ inv_tgt) & 1) != 0) return false;
            if (stack.empty()) break;
            // backtrack
            next_value = stack.back().value + 1;
            inv_src = stack.back().inv_src;
            inv_tgt = stack.back().inv_tgt;
            stack.pop_back();
            --level;
            continue;
        }
        bool descended = false;
        for (int v = next_value; v < k; ++v) {
            if (v == focus) continue;
            bool dup = false;
            for (int i = 0; i < level; ++i)
                if (rest[static_cast<size_t>(i)] == v) { dup = true; break; }
            if (dup) continue;

            int add_src = (focus > v) ? 1 : 0;
            for (int i = 0; i < level; ++i)
                if (rest[static_cast<size_t>(i)] > v) ++add_src;
            const int v_img = pattern[static_cast<size_t>(v)];
            int add_tgt = (focus_img > v_img) ? 1 : 0;
            for (int i = 0; i < level; ++i)
                if (rest_img[static_cast<size_t>(i)] > v_img) ++add_tgt;

            stack.push_back(Frame{v, inv_src, inv_tgt});
            rest[static_cast<size_t>(level)] = v;
            rest_img[static_cast<size_t>(level)] = v_img;
            inv_src += add_src;
            inv_tgt += add_tgt;
            ++level;
            next_value = 0;
            descended = true;
            break;
        }
        if (!descended) {
            if (stack.empty()) break;
            next_value = stack.back().value + 1;
            inv_src = stack.back().inv_src;
            inv_tgt = stack.back().inv_tgt;
            stack.pop_back();
            --level;
        }
    }
    return true;
}

} // namespace

PartialIso::PartialIso(DenseOracle source, DenseOracle target, std::uint64_t search_bound)
    : source_(std::move(source)), target_(std::move(target)), search_bound_(search_bound) {
    if (source_.arity() != target_.arity())
        throw Error(errc::arity_mismatch, "oracles have different arities");
}

bool PartialIso::candidate_preserves(const Rational& new_src, const Rational& new_tgt) const {
    PatternView pv = build_pattern(pairs_, &new_src, &new_tgt);
    int focus = rank_of(pv.src_sorted, new_src);
    return pattern_preserves_around(pv.map, source_.arity(), focus);
}

bool PartialIso::last_step_preserves() const {
    if (pairs_.empty()) return true;
    std::vector<Entry> rest(pairs_.begin(), pairs_.end() - 1);
    PatternView pv = build_pattern(rest, &pairs_.back().source_value, &pairs_.back().target_value);
    int focus = rank_of(pv.src_sorted, pairs_.back().source_value);
    return pattern_preserves_around(pv.map, source_.arity(), focus);
}

bool PartialIso::preserves_all_tuples() const {
    PatternView pv = build_pattern(pairs_, nullptr, nullptr);
    const int k = static_cast<int>(pv.map.size());
    const int n = source_.arity();
    if (k < n) return true;
    std::vector<int> t(static_cast<size_t>(n), 0);
    while (true) {
        IndexTuple tup(t.begin(), t.end());
        if (!has_repeated_entry(tup)) {
            IndexTuple img(t.size());
            for (size_t i = 0; i < t.size(); ++i)
                img[i] = pv.map[static_cast<size_t>(t[i])];
            if (arrangement_is_odd(tup) != arrangement_is_odd(img)) return false;
        }
        int pos = n - 1;
        while (pos >= 0 && ++t[static_cast<size_t>(pos)] == k) {
            t[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return true;
}

namespace {

// Open gap the new element must land in so the map stays order-compatible.
// Tuple preservation alone is too weak a candidate filter at even arity: the
// first n-1 pairs face no all-distinct tuples, an order-scrambled pattern can
// pass every tuple check, and an element can then exist with no admissible
// position at all. Membership depends only on rank parity, so an
// order-compatible extension preserves every tuple and always exists in a
// dense endpoint-free enumeration.
struct Gap {
    std::optional<Rational> lo, hi;
    bool admits(const Rational& v) const {
        if (lo && !(*lo < v)) return false;
        if (hi && !(v < *hi)) return false;
        return true;
    }
};

Gap matching_gap(const std::vector<PartialIso::Entry>& pairs, const Rational& fresh,
                 bool fresh_on_source) {
    Gap g;
    for (const auto& e : pairs) {
        const Rational& own = fresh_on_source ? e.source_value : e.target_value;
        const Rational& img = fresh_on_source ? e.target_value : e.source_value;
        if (own < fresh) {
            if (!g.lo || *g.lo < img) g.lo = img;
        } else {
            if (!g.hi || img < *g.hi) g.hi = img;
        }
    }
    return g;
}

} // namespace

void PartialIso::step() {
    std::set<Rational> used_src, used_tgt;
    for (const auto& e : pairs_) {
        used_src.insert(e.source_value);
        used_tgt.insert(e.target_value);
    }

    const bool from_source = pairs_.size() % 2 == 0;
    if (from_source) {
        Rational a;
        while (true) {
            a = source_.element_at(next_source_index_);
            ++next_source_index_;
            if (!used_src.count(a)) break;
        }
        const Gap gap = matching_gap(pairs_, a, /*fresh_on_source=*/true);
        for (std::uint64_t i = 0; i < search_bound_; ++i) {
            Rational v = target_.element_at(i);
            if (used_tgt.count(v) || !gap.admits(v)) continue;
            if (candidate_preserves(a, v)) {
                pairs_.push_back(Entry{a, v, true});
                return;
            }
        }
        throw Error(errc::search_exhausted,
                    "no target witness within " + std::to_string(search_bound_) + " candidates");
    }

    Rational b;
    while (true) {
        b = target_.element_at(next_target_index_);
        ++next_target_index_;
        if (!used_tgt.count(b)) break;
    }
    const Gap gap = matching_gap(pairs_, b, /*fresh_on_source=*/false);
    for (std::uint64_t i = 0; i < search_bound_; ++i) {
        Rational u = source_.element_at(i);
        if (used_src.count(u) || !gap.admits(u)) continue;
        if (candidate_preserves(u, b)) {
            pairs_.push_back(Entry{u, b, false});
            return;
        }
    }
    throw Error(errc::search_exhausted,
                "no source witness within " + std::to_string(search_bound_) + " candidates");
}

PartialIso run_back_forth(const DenseOracle& source, const DenseOracle& target,
                          std::uint64_t steps, std::uint64_t search_bound) {
    PartialIso iso(source, target, search_bound);
    for (std::uint64_t i = 0; i < steps; ++i) iso.step();
    return iso;
}

} // namespace sphord
