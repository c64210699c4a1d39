#include "sphord/spectra.hpp"

#include <algorithm>

namespace sphord {

namespace {

std::string u128_str(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

unsigned __int128 checked_mul(unsigned __int128 a, unsigned __int128 b) {
    if (a != 0 && b > static_cast<unsigned __int128>(-1) / a)
        throw Error(errc::overflow, "spectrum product exceeds 128 bits");
    return a * b;
}

} // namespace

std::string SpectrumResult::str() const { return is_continuum ? "continuum" : u128_str(value); }

ExpansionSpec ExpansionSpec::ehrenfeucht(int arity, int m) {
    if (arity < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    ExpansionSpec s;
    s.arity = arity;
    s.mode = Mode::Ehrenfeucht;
    s.ehrenfeucht_m = m;
    return s;
}

ExpansionSpec ExpansionSpec::constants(int arity, std::map<int, unsigned> counts,
                                       bool infinitely_many_types) {
    if (arity < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    ExpansionSpec s;
    s.arity = arity;
    s.mode = Mode::Constants;
    s.counts = std::move(counts);
    s.infinitely_many_types = infinitely_many_types;
    return s;
}

std::vector<int> admissible_sequence_counts(int arity) {
    if (arity < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    std::vector<int> ks{0};
    // k = 1 is excluded throughout (a single moving sequence is the k = 0
    // pattern); for arity 2 the two-sided k = 2 pattern exists on a line.
    int top = std::max(arity - 1, 2);
    for (int k = 2; k <= top; ++k) ks.push_back(k);
    return ks;
}

LimitCount limit_count(int k) {
    if (k < 2)
        throw Error(errc::invalid_argument,
                    "limit-model split is defined for k >= 2 independent sequences");
    if (k >= 62) throw Error(errc::overflow, "2^k exceeds the supported range");
    unsigned long long pow2 = 1ULL << k;
    return LimitCount{3, pow2 - 1, pow2 + 2};
}

SpectrumResult spectrum(const ExpansionSpec& spec) {
    SpectrumResult out;
    if (spec.mode == ExpansionSpec::Mode::Ehrenfeucht) {
        const int m = spec.ehrenfeucht_m;
        if (m == 1) {
            out.value = 1; // unexpanded theory, countably categorical
            return out;
        }
        if (m < 3)
            throw Error(errc::invalid_argument,
                        "ehrenfeucht expansions need m >= 3 (m = 2 is impossible, m = 1 is the "
                        "plain theory)");
        out.value = static_cast<unsigned __int128>(m);
        return out;
    }

    auto admissible = admissible_sequence_counts(spec.arity);
    for (const auto& [k, r] : spec.counts) {
        if (std::find(admissible.begin(), admissible.end(), k) == admissible.end())
            throw Error(errc::invalid_argument,
                        "k = " + std::to_string(k) + " is not admissible for arity " +
                            std::to_string(spec.arity));
        (void)r;
    }
    if (spec.infinitely_many_types) {
        out.is_continuum = true;
        return out;
    }
    out.value = 1;
    for (const auto& [k, r] : spec.counts) {
        // factor 2^k + 2: 3 for k = 0, else the limit-count total
        unsigned long long factor = k == 0 ? 3 : limit_count(k).total;
        for (unsigned i = 0; i < r; ++i) out.value = checked_mul(out.value, factor);
    }
    return out;
}

ModelCatalog ehrenfeucht_catalog(int arity, int m) {
    if (arity < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    if (m < 3)
        throw Error(errc::invalid_argument,
                    "the construction needs m >= 3 (it uses m - 2 coloring predicates)");
    ModelCatalog cat;
    cat.arity = arity;
    cat.m = m;
    cat.models.push_back(ModelDescriptor{
        ModelDescriptor::Kind::Prime, -1, "p_inf",
        "prime model omitting the limit type of the constant sequence"});
    for (int i = 0; i <= m - 3; ++i)
        cat.models.push_back(ModelDescriptor{
            ModelDescriptor::Kind::PrimeOverRealization, i, "p_inf^" + std::to_string(i),
            "prime model over a realization of completion " + std::to_string(i) +
                " (limit element colored " + std::to_string(i) + ")"});
    cat.models.push_back(ModelDescriptor{
        ModelDescriptor::Kind::Saturated, -1, "p_inf",
        "saturated model realizing every completion, no limit for the constants"});
    return cat;
}

// ---------------------------------------------------------------------------
// Hasse diagrams

namespace {

struct Chain {
    std::string name;
    std::vector<std::string> labels; // bottom to top
};

Chain chain_for(const std::string& kind) {
    if (kind == "T1") return Chain{"T1", {"0", "1"}};
    if (kind == "T2") return Chain{"T2", {"0", "0", "3"}};
    if (kind.rfind("limit(", 0) == 0 && kind.back() == ')') {
        const std::string inner = kind.substr(6, kind.size() - 7);
        int k = 0;
        try {
            size_t used = 0;
            k = std::stoi(inner, &used);
            if (used != inner.size()) throw std::invalid_argument(inner);
        } catch (const std::exception&) {
            throw Error(errc::invalid_argument, "bad limit kind '" + kind + "'");
        }
        auto lc = limit_count(k);
        return Chain{"limit" + inner, {"0", "0", std::to_string(lc.limit)}};
    }
    throw Error(errc::invalid_argument,
                "unknown diagram kind '" + kind + "' (T1, T2, limit(k), or products)");
}

} // namespace

std::string hasse_dot(const std::string& kind) {
    std::vector<Chain> chains;
    size_t start = 0;
    while (start <= kind.size()) {
        size_t star = kind.find('*', start);
        std::string part =
            kind.substr(start, star == std::string::npos ? std::string::npos : star - start);
        if (part.empty()) throw Error(errc::invalid_argument, "empty factor in '" + kind + "'");
        chains.push_back(chain_for(part));
        if (star == std::string::npos) break;
        start = star + 1;
    }

    std::string out = "digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n";
    for (size_t c = 0; c < chains.size(); ++c) {
        const auto& chain = chains[c];
        std::string prefix = "f" + std::to_string(c);
        for (size_t i = 0; i < chain.labels.size(); ++i)
            out += "  " + prefix + "_" + std::to_string(i) + " [label=\"" + chain.labels[i] +
                   "\"]; // " + chain.name + "\n";
        for (size_t i = 0; i + 1 < chain.labels.size(); ++i)
            out += "  " + prefix + "_" + std::to_string(i) + " -> " + prefix + "_" +
                   std::to_string(i + 1) + ";\n";
    }
    out += "}\n";
    return out;
}

} // namespace sphord
