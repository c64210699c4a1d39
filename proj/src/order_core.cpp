#include "sphord/order_core.hpp"

#include <algorithm>
#include <cstdlib>

namespace sphord {

Budget Budget::from_env() {
    Budget b;
    if (const char* v = std::getenv("SPHORD_BUDGET")) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) {
            b.membership_tests = parsed;
            b.decide_nodes = parsed;
        }
    }
    return b;
}

bool has_repeated_entry(const IndexTuple& t) {
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j)
            if (t[i] == t[j]) return true;
    return false;
}

bool arrangement_is_odd(const IndexTuple& t) {
    int inversions = 0;
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j)
            if (t[i] > t[j]) ++inversions;
    return (inversions & 1) != 0;
}

IndexTuple oriented_rotate(const IndexTuple& t) {
    const size_t n = t.size();
    const size_t shift = (n % 2 == 1) ? 1 : 2 % n;
    IndexTuple out(n);
    for (size_t i = 0; i < n; ++i) out[i] = t[(i + shift) % n];
    return out;
}

std::vector<Label> numeric_labels(int m) {
    std::vector<Label> out;
    out.reserve(static_cast<size_t>(m));
    for (int i = 1; i <= m; ++i) out.push_back(std::to_string(i));
    return out;
}

FiniteSphericalOrder::FiniteSphericalOrder(int arity, std::vector<Label> domain)
    : arity_(arity), domain_(std::move(domain)) {
    if (arity_ < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    if (domain_.empty()) throw Error(errc::invalid_argument, "domain must not be empty");
    for (size_t i = 0; i < domain_.size(); ++i) {
        if (!index_.emplace(domain_[i], static_cast<int>(i)).second)
            throw Error(errc::duplicate_label, "duplicate label '" + domain_[i] + "'");
    }
}

namespace {

// Visits every length-n tuple over [0, m) in lexicographic order.
template <typename F>
void for_each_tuple(int arity, int m, F&& visit) {
    IndexTuple t(static_cast<size_t>(arity), 0);
    while (true) {
        visit(t);
        int pos = arity - 1;
        while (pos >= 0 && ++t[static_cast<size_t>(pos)] == m) {
            t[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

unsigned long long checked_pow(unsigned long long base, int exp) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > UINT64_MAX) throw Error(errc::overflow, "value exceeds 64-bit range");
    }
    return static_cast<unsigned long long>(acc);
}

// m * (m-1) * ... * (m-n+1)
unsigned long long falling_factorial(int m, int n) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < n; ++i) {
        acc *= static_cast<unsigned long long>(m - i);
        if (acc > UINT64_MAX) throw Error(errc::overflow, "value exceeds 64-bit range");
    }
    return static_cast<unsigned long long>(acc);
}

} // namespace

FiniteSphericalOrder FiniteSphericalOrder::derive(int arity, std::vector<Label> domain,
                                                  const Budget& budget) {
    FiniteSphericalOrder order(arity, std::move(domain));
    const int m = order.size();
    if (m >= arity) {
        unsigned long long total = checked_pow(static_cast<unsigned long long>(m), arity);
        if (total > budget.membership_tests)
            throw Error(errc::budget_exceeded,
                        "derive would enumerate " + std::to_string(total) + " tuples");
        for_each_tuple(arity, m, [&](const IndexTuple& t) {
            if (!has_repeated_entry(t) && !arrangement_is_odd(t)) order.distinct_.insert(t);
        });
    }
    return order;
}

FiniteSphericalOrder FiniteSphericalOrder::from_tuples(int arity, std::vector<Label> domain,
                                                       const std::vector<LabelTuple>& tuples,
                                                       bool close_under_rotation) {
    FiniteSphericalOrder order(arity, std::move(domain));
    for (const auto& lt : tuples) {
        IndexTuple t = order.to_indices(lt);
        if (has_repeated_entry(t))
            throw Error(errc::invalid_argument,
                        "repeated-entry tuples are implied and must not be listed");
        if (close_under_rotation) {
            IndexTuple r = t;
            do {
                order.distinct_.insert(r);
                r = oriented_rotate(r);
            } while (r != t);
        } else {
            order.distinct_.insert(t);
        }
    }
    return order;
}

int FiniteSphericalOrder::index_of(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw Error(errc::unknown_label, "label '" + l + "' not in domain");
    return it->second;
}

IndexTuple FiniteSphericalOrder::to_indices(const LabelTuple& t) const {
    if (static_cast<int>(t.size()) != arity_)
        throw Error(errc::wrong_tuple_length,
                    "expected " + std::to_string(arity_) + " entries, got " + std::to_string(t.size()));
    IndexTuple out;
    out.reserve(t.size());
    for (const auto& l : t) out.push_back(index_of(l));
    return out;
}

LabelTuple FiniteSphericalOrder::to_labels(const IndexTuple& t) const {
    LabelTuple out;
    out.reserve(t.size());
    for (int i : t) out.push_back(domain_[static_cast<size_t>(i)]);
    return out;
}

bool FiniteSphericalOrder::contains(const IndexTuple& t) const {
    if (static_cast<int>(t.size()) != arity_)
        throw Error(errc::wrong_tuple_length,
                    "expected " + std::to_string(arity_) + " entries, got " + std::to_string(t.size()));
    if (has_repeated_entry(t)) return true;
    return distinct_.count(t) > 0;
}

bool FiniteSphericalOrder::contains(const LabelTuple& t) const { return contains(to_indices(t)); }

long long FiniteSphericalOrder::relation_size() const {
    const auto m = static_cast<unsigned long long>(size());
    unsigned long long total = checked_pow(m, arity_);
    unsigned long long all_distinct =
        size() >= arity_ ? falling_factorial(size(), arity_) : 0;
    return static_cast<long long>(total - all_distinct + distinct_.size());
}

std::vector<LabelTuple> FiniteSphericalOrder::min_first_representatives() const {
    std::vector<LabelTuple> out;
    for (const auto& t : distinct_) {
        if (t.front() == *std::min_element(t.begin(), t.end())) out.push_back(to_labels(t));
    }
    return out;
}

std::vector<LabelTuple> FiniteSphericalOrder::canonical_representatives() const {
    std::set<IndexTuple> canonical;
    for (const auto& t : distinct_) {
        IndexTuple best = t;
        IndexTuple r = oriented_rotate(t);
        while (r != t) {
            if (r < best) best = r;
            r = oriented_rotate(r);
        }
        canonical.insert(best);
    }
    std::vector<LabelTuple> out;
    out.reserve(canonical.size());
    for (const auto& t : canonical) out.push_back(to_labels(t));
    return out;
}

FiniteSphericalOrder FiniteSphericalOrder::restrict_to(const std::vector<Label>& subset) const {
    std::vector<int> keep;
    keep.reserve(subset.size());
    for (const auto& l : subset) keep.push_back(index_of(l));
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

    std::vector<Label> labels;
    std::vector<int> new_index(domain_.size(), -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        new_index[static_cast<size_t>(keep[i])] = static_cast<int>(i);
        labels.push_back(domain_[static_cast<size_t>(keep[i])]);
    }

    FiniteSphericalOrder out(arity_, std::move(labels));
    for (const auto& t : distinct_) {
        IndexTuple mapped;
        mapped.reserve(t.size());
        bool inside = true;
        for (int i : t) {
            int ni = new_index[static_cast<size_t>(i)];
            if (ni < 0) { inside = false; break; }
            mapped.push_back(ni);
        }
        if (inside) out.distinct_.insert(mapped);
    }
    return out;
}

AxiomReport check_axioms(const FiniteSphericalOrder& order, const Budget& budget) {
    AxiomReport report;
    const int n = order.arity();
    const int m = order.size();

    unsigned long long tests = 0;
    auto spend = [&](unsigned long long k) {
        tests += k;
        if (tests > budget.membership_tests)
            throw Error(errc::budget_exceeded,
                        "axiom check exceeded budget of " +
                            std::to_string(budget.membership_tests) + " membership tests");
    };

    for_each_tuple(n, m, [&](const IndexTuple& t) {
        const bool member = (spend(1), order.contains(t));
        const bool repeated = has_repeated_entry(t);

        if (report.rotation.passed) {
            IndexTuple r = oriented_rotate(t);
            if (member != (spend(1), order.contains(r))) {
                report.rotation.passed = false;
                report.rotation.counterexample = {order.to_labels(t), order.to_labels(r)};
            }
        }

        if (report.swap_exclusive.passed || report.swap_total.passed) {
            for (int i = 0; i < n && (report.swap_exclusive.passed || report.swap_total.passed); ++i) {
                for (int j = i + 1; j < n; ++j) {
                    IndexTuple s = t;
                    std::swap(s[static_cast<size_t>(i)], s[static_cast<size_t>(j)]);
                    const bool swapped = (spend(1), order.contains(s));
                    if (report.swap_exclusive.passed && (member && swapped) != repeated) {
                        // both directions: distinct entries forbid double
                        // membership, repeated entries force it
                        report.swap_exclusive.passed = false;
                        report.swap_exclusive.counterexample = {order.to_labels(t), order.to_labels(s)};
                    }
                    if (report.swap_total.passed && !member && !swapped) {
                        report.swap_total.passed = false;
                        report.swap_total.counterexample = {order.to_labels(t), order.to_labels(s)};
                    }
                    if (!report.swap_exclusive.passed && !report.swap_total.passed) break;
                }
            }
        }

        if (report.slot_cover.passed && member) {
            for (int u = 0; u < m; ++u) {
                bool covered = false;
                IndexTuple s = t;
                for (int i = 0; i < n; ++i) {
                    // The ternary slot axiom admits replacements at the ends
                    // only; from arity 4 up any coordinate may be replaced
                    // (the end-only form is false there).
                    if (n == 3 && i == 1) continue;
                    int saved = s[static_cast<size_t>(i)];
                    s[static_cast<size_t>(i)] = u;
                    if ((spend(1), order.contains(s))) {
                        covered = true;
                        s[static_cast<size_t>(i)] = saved;
                        break;
                    }
                    s[static_cast<size_t>(i)] = saved;
                }
                if (!covered) {
                    report.slot_cover.passed = false;
                    report.slot_cover.counterexample = {order.to_labels(t),
                                                        {order.label_at(u)}};
                    break;
                }
            }
        }
    });

    report.membership_tests = tests;
    return report;
}

unsigned long long cardinality_formula(int arity, int size) {
    if (arity < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    if (size < arity)
        throw Error(errc::invalid_argument,
                    "size " + std::to_string(size) + " below arity " + std::to_string(arity));
    unsigned long long total = checked_pow(static_cast<unsigned long long>(size), arity);
    unsigned long long distinct = falling_factorial(size, arity);
    return total - distinct / 2;
}

namespace {

bool extend_isomorphism(const FiniteSphericalOrder& a, const FiniteSphericalOrder& b,
                        std::vector<int>& image, std::vector<bool>& used, size_t next) {
    const int n = a.arity();
    const int m = a.size();
    if (next == static_cast<size_t>(m)) return true;

    for (int candidate = 0; candidate < m; ++candidate) {
        if (used[static_cast<size_t>(candidate)]) continue;
        image[next] = candidate;
        used[static_cast<size_t>(candidate)] = true;

        // Check every distinct tuple over the mapped prefix that uses the new
        // element; older tuples were checked at earlier levels.
        bool consistent = true;
        IndexTuple t(static_cast<size_t>(n)), img(static_cast<size_t>(n));
        const int k = static_cast<int>(next) + 1;
        std::vector<int> odo(static_cast<size_t>(n), 0);
        while (consistent) {
            bool uses_new = false;
            for (int i = 0; i < n; ++i)
                if (odo[static_cast<size_t>(i)] == static_cast<int>(next)) uses_new = true;
            if (uses_new) {
                for (int i = 0; i < n; ++i) {
                    t[static_cast<size_t>(i)] = odo[static_cast<size_t>(i)];
                    img[static_cast<size_t>(i)] = image[static_cast<size_t>(odo[static_cast<size_t>(i)])];
                }
                if (!has_repeated_entry(t) &&
                    a.distinct_part().count(t) != b.distinct_part().count(img))
                    consistent = false;
            }
            int pos = n - 1;
            while (pos >= 0 && ++odo[static_cast<size_t>(pos)] == k) {
                odo[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }

        if (consistent && extend_isomorphism(a, b, image, used, next + 1)) return true;
        used[static_cast<size_t>(candidate)] = false;
    }
    image[next] = -1;
    return false;
}

} // namespace

std::optional<std::map<Label, Label>> are_isomorphic(const FiniteSphericalOrder& a,
                                                     const FiniteSphericalOrder& b) {
    if (a.arity() != b.arity())
        throw Error(errc::arity_mismatch, "structures have different arities");
    if (a.size() != b.size()) return std::nullopt;
    if (a.distinct_part().size() != b.distinct_part().size()) return std::nullopt;

    std::vector<int> image(static_cast<size_t>(a.size()), -1);
    std::vector<bool> used(static_cast<size_t>(a.size()), false);
    if (!extend_isomorphism(a, b, image, used, 0)) return std::nullopt;

    std::map<Label, Label> out;
    for (int i = 0; i < a.size(); ++i)
        out[a.label_at(i)] = b.label_at(image[static_cast<size_t>(i)]);
    return out;
}

std::vector<OrderClass> enumerate_all_orders(int arity, int size, const Budget& budget) {
    if (arity < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    if (size < arity) {
        // Only the empty distinct part satisfies the axioms below the arity.
        return {OrderClass{FiniteSphericalOrder::derive(arity, numeric_labels(size), budget), 1}};
    }

    // All n-element subsets of the domain, each carrying its two parity
    // classes of all-distinct tuples.
    std::vector<std::vector<int>> subsets;
    {
        std::vector<int> pick;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(pick.size()) == arity) {
                subsets.push_back(pick);
                return;
            }
            for (int i = start; i < size; ++i) {
                pick.push_back(i);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
    }

    if (subsets.size() >= 63 || (1ULL << subsets.size()) > budget.membership_tests)
        throw Error(errc::budget_exceeded,
                    "orientation search over " + std::to_string(subsets.size()) + " subsets");

    // even[s] / odd[s]: the two parity classes of arrangements of subset s.
    std::vector<std::vector<IndexTuple>> even(subsets.size()), odd(subsets.size());
    for (size_t s = 0; s < subsets.size(); ++s) {
        IndexTuple t = subsets[s];
        std::sort(t.begin(), t.end());
        do {
            (arrangement_is_odd(t) ? odd[s] : even[s]).push_back(t);
        } while (std::next_permutation(t.begin(), t.end()));
    }

    auto labels = numeric_labels(size);
    std::vector<OrderClass> classes;
    for (unsigned long long mask = 0; mask < (1ULL << subsets.size()); ++mask) {
        std::vector<LabelTuple> member_tuples;
        for (size_t s = 0; s < subsets.size(); ++s) {
            const auto& side = (mask >> s) & 1 ? odd[s] : even[s];
            for (const auto& t : side) {
                LabelTuple lt;
                lt.reserve(t.size());
                for (int i : t) lt.push_back(labels[static_cast<size_t>(i)]);
                member_tuples.push_back(lt);
            }
        }
        FiniteSphericalOrder order =
            FiniteSphericalOrder::from_tuples(arity, labels, member_tuples, false);
        if (!check_axioms(order, budget).all_passed()) continue;

        bool matched = false;
        for (auto& cls : classes) {
            if (are_isomorphic(cls.representative, order)) {
                ++cls.labeled_count;
                matched = true;
                break;
            }
        }
        if (!matched) classes.push_back(OrderClass{order, 1});
    }
    return classes;
}

} // namespace sphord
