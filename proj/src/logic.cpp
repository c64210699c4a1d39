#include "sphord/logic.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <optional>

namespace sphord {

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

struct Token {
    enum class Kind { LParen, RParen, Atom, End } kind;
    std::string text;
    size_t pos;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    size_t pos = 0;
    while (pos < text.size()) {
        char c = text[pos];
        if (std::isspace(static_cast<unsigned char>(c))) { ++pos; continue; }
        if (c == '(') { out.push_back({Token::Kind::LParen, "(", pos}); ++pos; continue; }
        if (c == ')') { out.push_back({Token::Kind::RParen, ")", pos}); ++pos; continue; }
        size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            ++pos;
        out.push_back({Token::Kind::Atom, text.substr(start, pos - start), start});
    }
    out.push_back({Token::Kind::End, "", text.size()});
    return out;
}

struct TokenStream {
    std::vector<Token> tokens;
    size_t at = 0;
    const Token& peek() const { return tokens[at]; }
    const Token& take() { return tokens[at == tokens.size() - 1 ? at : at++]; }
};

[[noreturn]] void fail_at(size_t pos, const std::string& what) {
    throw Error(errc::parse_error, what + " at position " + std::to_string(pos));
}

bool is_keyword(const std::string& s) {
    return s == "K" || s == "=" || s == "not" || s == "and" || s == "or" || s == "implies" ||
           s == "exists" || s == "forall";
}

std::string expect_variable(TokenStream& ts) {
    const Token& t = ts.take();
    if (t.kind != Token::Kind::Atom) fail_at(t.pos, "expected a variable");
    if (is_keyword(t.text)) fail_at(t.pos, "'" + t.text + "' cannot be a variable");
    return t.text;
}

void expect_rparen(TokenStream& ts) {
    const Token& t = ts.take();
    if (t.kind != Token::Kind::RParen) fail_at(t.pos, "expected ')'");
}

Formula parse_form(TokenStream& ts, int arity) {
    const Token& open = ts.take();
    if (open.kind != Token::Kind::LParen) fail_at(open.pos, "expected '('");
    const Token head = ts.take();
    if (head.kind != Token::Kind::Atom) fail_at(head.pos, "expected an operator");

    Formula f;
    if (head.text == "K") {
        f.kind = Formula::Kind::KAtom;
        while (ts.peek().kind == Token::Kind::Atom) f.vars.push_back(expect_variable(ts));
        expect_rparen(ts);
        if (static_cast<int>(f.vars.size()) != arity)
            throw Error(errc::invalid_arity,
                        "K takes " + std::to_string(arity) + " arguments, got " +
                            std::to_string(f.vars.size()));
        return f;
    }
    if (head.text == "=") {
        f.kind = Formula::Kind::EqAtom;
        f.vars.push_back(expect_variable(ts));
        f.vars.push_back(expect_variable(ts));
        expect_rparen(ts);
        return f;
    }
    if (head.text == "exists" || head.text == "forall") {
        f.kind = head.text == "exists" ? Formula::Kind::Exists : Formula::Kind::Forall;
        f.vars.push_back(expect_variable(ts));
        f.children.push_back(parse_form(ts, arity));
        expect_rparen(ts);
        return f;
    }
    if (head.text == "not" || head.text == "and" || head.text == "or" || head.text == "implies") {
        f.kind = head.text == "not"   ? Formula::Kind::Not
               : head.text == "and"   ? Formula::Kind::And
               : head.text == "or"    ? Formula::Kind::Or
                                      : Formula::Kind::Implies;
        while (ts.peek().kind == Token::Kind::LParen) f.children.push_back(parse_form(ts, arity));
        expect_rparen(ts);
        size_t got = f.children.size();
        if (f.kind == Formula::Kind::Not && got != 1)
            fail_at(head.pos, "not takes one subformula");
        if (f.kind == Formula::Kind::Implies && got != 2)
            fail_at(head.pos, "implies takes two subformulas");
        if ((f.kind == Formula::Kind::And || f.kind == Formula::Kind::Or) && got == 0)
            fail_at(head.pos, head.text + " needs at least one subformula");
        return f;
    }
    fail_at(head.pos, "unknown operator '" + head.text + "'");
}

} // namespace

Formula parse_formula(const std::string& text, int arity) {
    if (arity < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    TokenStream ts{tokenize(text)};
    Formula f = parse_form(ts, arity);
    if (ts.peek().kind != Token::Kind::End) fail_at(ts.peek().pos, "trailing input");
    return f;
}

std::string print_formula(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::KAtom: {
        std::string out = "(K";
        for (const auto& v : f.vars) out += " " + v;
        return out + ")";
    }
    case Formula::Kind::EqAtom:
        return "(= " + f.vars[0] + " " + f.vars[1] + ")";
    case Formula::Kind::Not:
        return "(not " + print_formula(f.children[0]) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::string out = f.kind == Formula::Kind::And ? "(and" : "(or";
        for (const auto& c : f.children) out += " " + print_formula(c);
        return out + ")";
    }
    case Formula::Kind::Implies:
        return "(implies " + print_formula(f.children[0]) + " " + print_formula(f.children[1]) + ")";
    case Formula::Kind::Exists:
        return "(exists " + f.vars[0] + " " + print_formula(f.children[0]) + ")";
    case Formula::Kind::Forall:
        return "(forall " + f.vars[0] + " " + print_formula(f.children[0]) + ")";
    }
    throw Error(errc::invalid_argument, "malformed formula node");
}

// ---------------------------------------------------------------------------
// Structural queries

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind) {
    case Formula::Kind::KAtom:
    case Formula::Kind::EqAtom:
        for (const auto& v : f.vars)
            if (!bound.count(v)) out.insert(v);
        return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        bool fresh = bound.insert(f.vars[0]).second;
        collect_free(f.children[0], bound, out);
        if (fresh) bound.erase(f.vars[0]);
        return;
    }
    default:
        for (const auto& c : f.children) collect_free(c, bound, out);
    }
}

} // namespace

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

bool is_quantifier_free(const Formula& f) {
    if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) return false;
    for (const auto& c : f.children)
        if (!is_quantifier_free(c)) return false;
    return true;
}

int quantifier_depth(const Formula& f) {
    int inner = 0;
    for (const auto& c : f.children) inner = std::max(inner, quantifier_depth(c));
    if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) return inner + 1;
    return inner;
}

// ---------------------------------------------------------------------------
// Finite evaluation

namespace {

bool eval_finite_rec(const FiniteSphericalOrder& order, const Formula& f,
                     std::map<std::string, Label>& asg) {
    switch (f.kind) {
    case Formula::Kind::KAtom: {
        LabelTuple t;
        t.reserve(f.vars.size());
        for (const auto& v : f.vars) {
            auto it = asg.find(v);
            if (it == asg.end()) throw Error(errc::unbound_variable, "variable '" + v + "'");
            t.push_back(it->second);
        }
        return order.contains(t);
    }
    case Formula::Kind::EqAtom: {
        auto a = asg.find(f.vars[0]);
        auto b = asg.find(f.vars[1]);
        if (a == asg.end()) throw Error(errc::unbound_variable, "variable '" + f.vars[0] + "'");
        if (b == asg.end()) throw Error(errc::unbound_variable, "variable '" + f.vars[1] + "'");
        return a->second == b->second;
    }
    case Formula::Kind::Not:
        return !eval_finite_rec(order, f.children[0], asg);
    case Formula::Kind::And:
        for (const auto& c : f.children)
            if (!eval_finite_rec(order, c, asg)) return false;
        return true;
    case Formula::Kind::Or:
        for (const auto& c : f.children)
            if (eval_finite_rec(order, c, asg)) return true;
        return false;
    case Formula::Kind::Implies:
        return !eval_finite_rec(order, f.children[0], asg) ||
               eval_finite_rec(order, f.children[1], asg);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        const bool want = f.kind == Formula::Kind::Exists;
        auto saved = asg.find(f.vars[0]) != asg.end()
                         ? std::optional<Label>(asg[f.vars[0]])
                         : std::nullopt;
        for (const auto& l : order.domain()) {
            asg[f.vars[0]] = l;
            if (eval_finite_rec(order, f.children[0], asg) == want) {
                if (saved) asg[f.vars[0]] = *saved; else asg.erase(f.vars[0]);
                return want;
            }
        }
        if (saved) asg[f.vars[0]] = *saved; else asg.erase(f.vars[0]);
        return !want;
    }
    }
    throw Error(errc::invalid_argument, "malformed formula node");
}

} // namespace

bool eval_finite(const FiniteSphericalOrder& order, const Formula& f,
                 const std::map<std::string, Label>& assignment) {
    auto asg = assignment;
    return eval_finite_rec(order, f, asg);
}

// ---------------------------------------------------------------------------
// Diagrams

int Diagram::class_of_var(const std::string& v) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) return class_of[i];
    throw Error(errc::unbound_variable, "variable '" + v + "' not in diagram");
}

FiniteSphericalOrder Diagram::class_order() const {
    std::vector<Label> labels(static_cast<size_t>(num_classes));
    for (size_t i = 0; i < vars.size(); ++i) {
        auto& slot = labels[static_cast<size_t>(class_of[i])];
        if (slot.empty()) slot = vars[i];
    }
    std::vector<LabelTuple> tuples;
    for (const auto& t : members) {
        LabelTuple lt;
        lt.reserve(t.size());
        for (int c : t) lt.push_back(labels[static_cast<size_t>(c)]);
        tuples.push_back(lt);
    }
    return FiniteSphericalOrder::from_tuples(arity, labels, tuples, false);
}

Diagram Diagram::canonical() const {
    std::vector<size_t> idx(vars.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return vars[a] < vars[b]; });

    Diagram out;
    out.arity = arity;
    out.num_classes = num_classes;
    std::vector<int> remap(static_cast<size_t>(num_classes), -1);
    int next = 0;
    for (size_t i : idx) {
        out.vars.push_back(vars[i]);
        int& r = remap[static_cast<size_t>(class_of[i])];
        if (r < 0) r = next++;
        out.class_of.push_back(r);
    }
    for (const auto& t : members) {
        IndexTuple mapped;
        mapped.reserve(t.size());
        for (int c : t) mapped.push_back(remap[static_cast<size_t>(c)]);
        out.members.insert(mapped);
    }
    return out;
}

Diagram Diagram::restricted_to(const std::set<std::string>& keep) const {
    Diagram out;
    out.arity = arity;
    std::vector<int> remap(static_cast<size_t>(num_classes), -1);
    int next = 0;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (!keep.count(vars[i])) continue;
        int& r = remap[static_cast<size_t>(class_of[i])];
        if (r < 0) r = next++;
        out.vars.push_back(vars[i]);
        out.class_of.push_back(r);
    }
    out.num_classes = next;
    for (const auto& t : members) {
        IndexTuple mapped;
        mapped.reserve(t.size());
        bool inside = true;
        for (int c : t) {
            int r = remap[static_cast<size_t>(c)];
            if (r < 0) { inside = false; break; }
            mapped.push_back(r);
        }
        if (inside) out.members.insert(mapped);
    }
    return out;
}

const std::vector<std::set<IndexTuple>>& consistent_class_relations(int arity, int num_classes) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<std::set<IndexTuple>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(arity, num_classes);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::set<IndexTuple> base;
    if (num_classes >= arity) {
        auto derived = FiniteSphericalOrder::derive(arity, numeric_labels(num_classes));
        base = derived.distinct_part();
    }

    std::set<std::set<IndexTuple>> distinct;
    std::vector<int> perm(static_cast<size_t>(num_classes));
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    do {
        std::set<IndexTuple> relabeled;
        for (const auto& t : base) {
            IndexTuple mapped;
            mapped.reserve(t.size());
            for (int c : t) mapped.push_back(perm[static_cast<size_t>(c)]);
            relabeled.insert(mapped);
        }
        distinct.insert(std::move(relabeled));
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto& out = cache[key];
    out.assign(distinct.begin(), distinct.end());
    return out;
}

std::vector<Diagram> enumerate_diagrams(int arity, const std::set<std::string>& vars,
                                        const Budget& budget) {
    if (static_cast<int>(vars.size()) > budget.max_diagram_variables)
        throw Error(errc::budget_exceeded,
                    std::to_string(vars.size()) + " variables exceed the diagram budget of " +
                        std::to_string(budget.max_diagram_variables));
    std::vector<std::string> ordered(vars.begin(), vars.end());
    std::vector<Diagram> out;
    if (ordered.empty()) {
        out.push_back(Diagram{arity, {}, {}, 0, {}});
        return out;
    }

    // Restricted-growth strings enumerate the partitions; each partition pairs
    // with every consistent relation on its classes.
    std::vector<int> rgs(ordered.size(), 0);
    while (true) {
        int num_classes = *std::max_element(rgs.begin(), rgs.end()) + 1;
        for (const auto& rel : consistent_class_relations(arity, num_classes)) {
            Diagram d;
            d.arity = arity;
            d.vars = ordered;
            d.class_of = rgs;
            d.num_classes = num_classes;
            d.members = rel;
            out.push_back(std::move(d));
        }
        // next RGS
        int i = static_cast<int>(rgs.size()) - 1;
        for (; i > 0; --i) {
            int maxPrefix = *std::max_element(rgs.begin(), rgs.begin() + i);
            if (rgs[static_cast<size_t>(i)] <= maxPrefix) {
                ++rgs[static_cast<size_t>(i)];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                break;
            }
            rgs[static_cast<size_t>(i)] = 0;
        }
        if (i == 0) break;
    }
    return out;
}

namespace {

// Relations on one more class restricting to the given one; memoized, decide()
// revisits the same diagrams constantly.
const std::vector<std::set<IndexTuple>>& new_class_relations(int arity, int num_classes,
                                                             const std::set<IndexTuple>& members) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>,
                    std::map<std::set<IndexTuple>, std::vector<std::set<IndexTuple>>>>
        cache;
    // resolve the memo for the next size up front, its lock nests otherwise
    const auto& candidates = consistent_class_relations(arity, num_classes + 1);

    std::lock_guard<std::mutex> lock(mutex);
    auto& per_size = cache[{arity, num_classes}];
    auto it = per_size.find(members);
    if (it != per_size.end()) return it->second;

    std::vector<std::set<IndexTuple>> exts;
    for (const auto& rel : candidates) {
        std::set<IndexTuple> restricted;
        for (const auto& t : rel)
            if (std::find(t.begin(), t.end(), num_classes) == t.end()) restricted.insert(t);
        if (restricted == members) exts.push_back(rel);
    }
    return per_size.emplace(members, std::move(exts)).first->second;
}

} // namespace

std::vector<Diagram> extend_diagrams(const Diagram& d, const std::string& v) {
    for (const auto& existing : d.vars)
        if (existing == v)
            throw Error(errc::invalid_argument, "variable '" + v + "' already in diagram");

    std::vector<Diagram> out;
    // v joins an existing class: the relation is unchanged.
    for (int c = 0; c < d.num_classes; ++c) {
        Diagram j = d;
        j.vars.push_back(v);
        j.class_of.push_back(c);
        out.push_back(std::move(j));
    }
    // v forms a new class.
    for (const auto& rel : new_class_relations(d.arity, d.num_classes, d.members)) {
        Diagram e = d;
        e.vars.push_back(v);
        e.class_of.push_back(d.num_classes);
        e.num_classes = d.num_classes + 1;
        e.members = rel;
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Satisfiability and decision

namespace {

bool eval_on_diagram(const Formula& f, const Diagram& d,
                     const std::map<std::string, int>& cls) {
    switch (f.kind) {
    case Formula::Kind::KAtom: {
        IndexTuple t;
        t.reserve(f.vars.size());
        for (const auto& v : f.vars) {
            auto it = cls.find(v);
            if (it == cls.end()) throw Error(errc::unbound_variable, "variable '" + v + "'");
            t.push_back(it->second);
        }
        if (has_repeated_entry(t)) return true;
        return d.members.count(t) > 0;
    }
    case Formula::Kind::EqAtom: {
        auto a = cls.find(f.vars[0]);
        auto b = cls.find(f.vars[1]);
        if (a == cls.end()) throw Error(errc::unbound_variable, "variable '" + f.vars[0] + "'");
        if (b == cls.end()) throw Error(errc::unbound_variable, "variable '" + f.vars[1] + "'");
        return a->second == b->second;
    }
    case Formula::Kind::Not:
        return !eval_on_diagram(f.children[0], d, cls);
    case Formula::Kind::And:
        for (const auto& c : f.children)
            if (!eval_on_diagram(c, d, cls)) return false;
        return true;
    case Formula::Kind::Or:
        for (const auto& c : f.children)
            if (eval_on_diagram(c, d, cls)) return true;
        return false;
    case Formula::Kind::Implies:
        return !eval_on_diagram(f.children[0], d, cls) || eval_on_diagram(f.children[1], d, cls);
    default:
        throw Error(errc::not_quantifier_free, "quantifier inside quantifier-free evaluation");
    }
}

// Renames bound variables apart so reuse or shadowing cannot leak.
Formula normalize_bound(const Formula& f, std::map<std::string, std::string>& active, int& counter) {
    Formula out = f;
    switch (f.kind) {
    case Formula::Kind::KAtom:
    case Formula::Kind::EqAtom:
        for (auto& v : out.vars) {
            auto it = active.find(v);
            if (it != active.end()) v = it->second;
        }
        return out;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        std::string fresh = "_b" + std::to_string(counter++);
        auto old = active.find(f.vars[0]);
        std::optional<std::string> saved =
            old != active.end() ? std::optional<std::string>(old->second) : std::nullopt;
        active[f.vars[0]] = fresh;
        out.vars[0] = fresh;
        out.children[0] = normalize_bound(f.children[0], active, counter);
        if (saved) active[f.vars[0]] = *saved; else active.erase(f.vars[0]);
        return out;
    }
    default:
        for (auto& c : out.children) c = normalize_bound(c, active, counter);
        return out;
    }
}

struct DecideState {
    int arity;
    const Budget* budget;
    unsigned long long nodes = 0;
};

// Evaluation state for the decision procedure: the equality classes of the
// bound variables plus the rank (linear position) of each class. The rank
// pattern, not the induced relation alone, determines the complete type of a
// tuple in the rational model: order-preserving bijections are automorphisms,
// so tuples with equal patterns are conjugate, while at even arity two
// patterns with the same induced relation can admit different one-variable
// extensions. Quantifiers branch over joining an existing class or inserting
// the new class into one of the rank gaps, which exhausts the 1-types over a
// finite configuration in a dense endpoint-free order.
struct OrderedConfig {
    int num_classes = 0;
    std::vector<int> class_rank; // class id -> position, a permutation of 0..r-1
};

bool eval_on_config(const Formula& f, const OrderedConfig& cfg,
                    const std::map<std::string, int>& cls) {
    switch (f.kind) {
    case Formula::Kind::KAtom: {
        IndexTuple ranks;
        ranks.reserve(f.vars.size());
        for (const auto& v : f.vars) {
            auto it = cls.find(v);
            if (it == cls.end()) throw Error(errc::unbound_variable, "variable '" + v + "'");
            ranks.push_back(cfg.class_rank[static_cast<size_t>(it->second)]);
        }
        if (has_repeated_entry(ranks)) return true;
        return !arrangement_is_odd(ranks);
    }
    case Formula::Kind::EqAtom: {
        auto a = cls.find(f.vars[0]);
        auto b = cls.find(f.vars[1]);
        if (a == cls.end()) throw Error(errc::unbound_variable, "variable '" + f.vars[0] + "'");
        if (b == cls.end()) throw Error(errc::unbound_variable, "variable '" + f.vars[1] + "'");
        return a->second == b->second;
    }
    default:
        throw Error(errc::invalid_argument, "atom expected");
    }
}

bool decide_rec(DecideState& st, const Formula& f, const OrderedConfig& cfg,
                std::map<std::string, int>& cls, int depth) {
    if (++st.nodes > st.budget->decide_nodes)
        throw Error(errc::budget_exceeded, "decision procedure exceeded its node budget");
    switch (f.kind) {
    case Formula::Kind::KAtom:
    case Formula::Kind::EqAtom:
        return eval_on_config(f, cfg, cls);
    case Formula::Kind::Not:
        return !decide_rec(st, f.children[0], cfg, cls, depth);
    case Formula::Kind::And:
        for (const auto& c : f.children)
            if (!decide_rec(st, c, cfg, cls, depth)) return false;
        return true;
    case Formula::Kind::Or:
        for (const auto& c : f.children)
            if (decide_rec(st, c, cfg, cls, depth)) return true;
        return false;
    case Formula::Kind::Implies:
        return !decide_rec(st, f.children[0], cfg, cls, depth) ||
               decide_rec(st, f.children[1], cfg, cls, depth);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
        if (depth >= st.budget->max_quantifier_depth)
            throw Error(errc::budget_exceeded,
                        "quantifier depth exceeds " +
                            std::to_string(st.budget->max_quantifier_depth));
        const bool want = f.kind == Formula::Kind::Exists;
        const std::string& v = f.vars[0];
        const int r = cfg.num_classes;
        // v equals one of the existing classes
        for (int c = 0; c < r; ++c) {
            cls[v] = c;
            bool value = decide_rec(st, f.children[0], cfg, cls, depth + 1);
            cls.erase(v);
            if (value == want) return want;
        }
        // v lands in one of the r+1 rank gaps
        for (int gap = 0; gap <= r; ++gap) {
            OrderedConfig next;
            next.num_classes = r + 1;
            next.class_rank.resize(static_cast<size_t>(r + 1));
            for (int c = 0; c < r; ++c) {
                int rank = cfg.class_rank[static_cast<size_t>(c)];
                next.class_rank[static_cast<size_t>(c)] = rank >= gap ? rank + 1 : rank;
            }
            next.class_rank[static_cast<size_t>(r)] = gap;
            cls[v] = r;
            bool value = decide_rec(st, f.children[0], next, cls, depth + 1);
            cls.erase(v);
            if (value == want) return want;
        }
        return !want;
    }
    }
    throw Error(errc::invalid_argument, "malformed formula node");
}

} // namespace

std::optional<Diagram> qf_sat(int arity, const Formula& f, const Budget& budget) {
    if (!is_quantifier_free(f))
        throw Error(errc::not_quantifier_free, "formula contains quantifiers");
    auto vars = free_variables(f);
    for (const auto& d : enumerate_diagrams(arity, vars, budget)) {
        std::map<std::string, int> cls;
        for (size_t i = 0; i < d.vars.size(); ++i) cls[d.vars[i]] = d.class_of[i];
        if (eval_on_diagram(f, d, cls)) return d;
    }
    return std::nullopt;
}

bool decide_sentence(int arity, const Formula& sentence, const Budget& budget) {
    if (arity < 2) throw Error(errc::invalid_arity, "arity must be at least 2");
    if (!free_variables(sentence).empty())
        throw Error(errc::unbound_variable, "sentence has free variables");
    std::map<std::string, std::string> active;
    int counter = 0;
    Formula normalized = normalize_bound(sentence, active, counter);

    DecideState st{arity, &budget, 0};
    OrderedConfig empty;
    std::map<std::string, int> cls;
    return decide_rec(st, normalized, empty, cls, 0);
}

// ---------------------------------------------------------------------------
// Axiom sentences

namespace {

std::vector<std::string> numbered_vars(int n) {
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

Formula k_atom(std::vector<std::string> args) {
    return Formula{Formula::Kind::KAtom, std::move(args), {}};
}

Formula eq(const std::string& a, const std::string& b) {
    return Formula{Formula::Kind::EqAtom, {a, b}, {}};
}

Formula neg(Formula f) { return Formula{Formula::Kind::Not, {}, {std::move(f)}}; }

Formula conj(std::vector<Formula> fs) { return Formula{Formula::Kind::And, {}, std::move(fs)}; }

Formula disj(std::vector<Formula> fs) { return Formula{Formula::Kind::Or, {}, std::move(fs)}; }

Formula implies(Formula a, Formula b) {
    return Formula{Formula::Kind::Implies, {}, {std::move(a), std::move(b)}};
}

Formula iff(Formula a, Formula b) {
    return conj({implies(a, b), implies(b, a)});
}

Formula forall_all(const std::vector<std::string>& vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = Formula{Formula::Kind::Forall, {*it}, {std::move(body)}};
    return body;
}

Formula some_pair_equal(const std::vector<std::string>& vars) {
    std::vector<Formula> eqs;
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j) eqs.push_back(eq(vars[i], vars[j]));
    return disj(std::move(eqs));
}

} // namespace

Formula axiom_rotation(int arity) {
    auto xs = numbered_vars(arity);
    std::vector<std::string> rotated(xs.size());
    const size_t shift = (arity % 2 == 1) ? 1 : 2 % static_cast<size_t>(arity);
    for (size_t i = 0; i < xs.size(); ++i) rotated[i] = xs[(i + shift) % xs.size()];
    return forall_all(xs, implies(k_atom(xs), k_atom(rotated)));
}

Formula axiom_swap_exclusive(int arity) {
    auto xs = numbered_vars(arity);
    std::vector<Formula> parts;
    for (int i = 0; i < arity; ++i)
        for (int j = i + 1; j < arity; ++j) {
            auto swapped = xs;
            std::swap(swapped[static_cast<size_t>(i)], swapped[static_cast<size_t>(j)]);
            parts.push_back(iff(conj({k_atom(xs), k_atom(swapped)}), some_pair_equal(xs)));
        }
    return forall_all(xs, conj(std::move(parts)));
}

Formula axiom_slot_cover(int arity) {
    auto xs = numbered_vars(arity);
    std::vector<Formula> slots;
    for (int i = 0; i < arity; ++i) {
        if (arity == 3 && i == 1) continue;
        auto replaced = xs;
        replaced[static_cast<size_t>(i)] = "t";
        slots.push_back(k_atom(replaced));
    }
    Formula inner = Formula{Formula::Kind::Forall, {"t"}, {disj(std::move(slots))}};
    return forall_all(xs, implies(k_atom(xs), std::move(inner)));
}

Formula axiom_swap_total(int arity) {
    auto xs = numbered_vars(arity);
    std::vector<Formula> parts;
    for (int i = 0; i < arity; ++i)
        for (int j = i + 1; j < arity; ++j) {
            auto swapped = xs;
            std::swap(swapped[static_cast<size_t>(i)], swapped[static_cast<size_t>(j)]);
            parts.push_back(disj({k_atom(xs), k_atom(swapped)}));
        }
    return forall_all(xs, conj(std::move(parts)));
}

Formula density_sentence(int arity) {
    auto xs = numbered_vars(arity);
    std::vector<Formula> distinct;
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j) distinct.push_back(neg(eq(xs[i], xs[j])));

    std::vector<Formula> witness_parts;
    for (const auto& x : xs) witness_parts.push_back(neg(eq("b", x)));
    auto first = xs;
    first[1] = "b";
    auto second = xs;
    second[0] = "b";
    witness_parts.push_back(k_atom(first));
    witness_parts.push_back(k_atom(second));

    Formula inner = Formula{Formula::Kind::Exists, {"b"}, {conj(std::move(witness_parts))}};
    Formula antecedent = conj({conj(std::move(distinct)), k_atom(xs)});
    return forall_all(xs, implies(std::move(antecedent), std::move(inner)));
}

} // namespace sphord
