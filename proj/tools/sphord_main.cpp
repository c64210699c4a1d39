#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sphord/back_forth.hpp"
#include "sphord/dense_model.hpp"
#include "sphord/logic.hpp"
#include "sphord/order_core.hpp"
#include "sphord/spectra.hpp"
#include "sphord/structure_io.hpp"

using nlohmann::json;
using namespace sphord;

namespace {

FiniteSphericalOrder load_structure(const std::string& path) {
    if (path == "-") return read_structure(std::cin);
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open '" + path + "'");
    return read_structure(in);
}

void store_structure(const std::string& path, const FiniteSphericalOrder& order) {
    if (path == "-" || path.empty()) {
        write_structure(std::cout, order);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(errc::io_error, "cannot open '" + path + "' for writing");
    write_structure(out, order);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw Error(errc::invalid_argument, "empty entry in tuple");
        out.push_back(Rational::parse(item));
    }
    return out;
}

json axiom_check_json(const AxiomReport::Check& c) {
    json j;
    j["passed"] = c.passed;
    if (!c.counterexample.empty()) j["counterexample"] = c.counterexample;
    return j;
}

json report_json(const AxiomReport& rep) {
    json j;
    j["rotation"] = axiom_check_json(rep.rotation);
    j["swap_exclusive"] = axiom_check_json(rep.swap_exclusive);
    j["slot_cover"] = axiom_check_json(rep.slot_cover);
    j["swap_total"] = axiom_check_json(rep.swap_total);
    j["membership_tests"] = rep.membership_tests;
    j["all_passed"] = rep.all_passed();
    return j;
}

void print_check_text(const AxiomReport& rep) {
    auto line = [](const char* name, const AxiomReport::Check& c) {
        std::cout << name << ": " << (c.passed ? "pass" : "FAIL");
        if (!c.counterexample.empty()) {
            std::cout << "  witness:";
            for (const auto& t : c.counterexample) {
                std::cout << " (";
                for (size_t i = 0; i < t.size(); ++i) std::cout << (i ? " " : "") << t[i];
                std::cout << ")";
            }
        }
        std::cout << "\n";
    };
    line("rotation      ", rep.rotation);
    line("swap_exclusive", rep.swap_exclusive);
    line("slot_cover    ", rep.slot_cover);
    line("swap_total    ", rep.swap_total);
    std::cout << "membership tests: " << rep.membership_tests << "\n";
}

std::map<int, unsigned> counts_from_csv(int arity, const std::string& csv) {
    auto ks = admissible_sequence_counts(arity);
    std::vector<unsigned> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            unsigned long parsed = std::stoul(item, &used);
            if (used != item.size() || parsed > UINT32_MAX) throw std::invalid_argument(item);
            values.push_back(static_cast<unsigned>(parsed));
        } catch (const std::exception&) {
            throw Error(errc::invalid_argument, "bad count '" + item + "'");
        }
    }
    if (values.size() != ks.size())
        throw Error(errc::invalid_argument,
                    "expected " + std::to_string(ks.size()) + " counts for arity " +
                        std::to_string(arity) + " (k = 0" +
                        [&] {
                            std::string s;
                            for (size_t i = 1; i < ks.size(); ++i)
                                s += ", " + std::to_string(ks[i]);
                            return s;
                        }() +
                        ")");
    std::map<int, unsigned> counts;
    for (size_t i = 0; i < ks.size(); ++i) counts[ks[i]] = values[i];
    return counts;
}

json diagram_json(const Diagram& d) {
    json j;
    j["arity"] = d.arity;
    json classes = json::array();
    for (int c = 0; c < d.num_classes; ++c) {
        json cls = json::array();
        for (size_t i = 0; i < d.vars.size(); ++i)
            if (d.class_of[i] == c) cls.push_back(d.vars[i]);
        classes.push_back(cls);
    }
    j["classes"] = classes;
    json members = json::array();
    for (const auto& t : d.members) members.push_back(t);
    j["member_class_tuples"] = members;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sphord -- finite and dense spherical orders: construction, axiom checking,\n"
                 "decision procedure, back-and-forth runs, countable-model spectra"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "structured JSON output");

    Budget budget = Budget::from_env();

    // generate
    auto* generate = app.add_subcommand("generate", "construct the order of arity n on m points");
    int gen_n = 4, gen_m = 4;
    std::string gen_out = "-";
    generate->add_option("--n", gen_n, "arity")->required();
    generate->add_option("--m", gen_m, "domain size")->required();
    generate->add_option("-o,--output", gen_out, "output file ('-' = stdout)");

    // check
    auto* check = app.add_subcommand("check", "verify the axioms of a structure file");
    std::string check_path;
    check->add_option("file", check_path, "structure file ('-' = stdin)")->required();

    // count
    auto* count = app.add_subcommand("count", "relation size of the order of arity n on m points");
    int count_n = 4, count_m = 4;
    count->add_option("--n", count_n, "arity")->required();
    count->add_option("--m", count_m, "domain size")->required();

    // iso
    auto* iso = app.add_subcommand("iso", "find a relation-preserving bijection between two files");
    std::string iso_a, iso_b;
    iso->add_option("a", iso_a, "first structure file")->required();
    iso->add_option("b", iso_b, "second structure file")->required();

    // unique
    auto* unique = app.add_subcommand("unique", "enumerate all orders on m points up to isomorphism");
    int uniq_n = 3, uniq_m = 4;
    unique->add_option("--n", uniq_n, "arity")->required();
    unique->add_option("--m", uniq_m, "domain size")->required();

    // witness
    auto* witness = app.add_subcommand("witness", "density witness for a member tuple");
    int wit_n = 3;
    std::string wit_tuple;
    std::uint64_t wit_seed = 0;
    witness->add_option("--n", wit_n, "arity")->required();
    witness->add_option("--tuple", wit_tuple, "comma-separated rationals (p/q or integers)")
        ->required();
    witness->add_option("--seed", wit_seed, "use the seeded oracle");

    // backforth
    auto* backforth = app.add_subcommand("backforth", "partial-isomorphism run between two oracles");
    int bf_n = 4;
    std::uint64_t bf_steps = 200, bf_seed_a = 0, bf_seed_b = 0, bf_bound = 100'000;
    bool bf_trace = false;
    backforth->add_option("--n", bf_n, "arity")->required();
    backforth->add_option("--steps", bf_steps, "number of extension steps")->required();
    backforth->add_option("--seed-a", bf_seed_a, "seed of the source oracle");
    backforth->add_option("--seed-b", bf_seed_b, "seed of the target oracle");
    backforth->add_option("--bound", bf_bound, "witness search bound");
    backforth->add_flag("--trace", bf_trace, "emit each added pair as a JSON line");

    // decide
    auto* decide = app.add_subcommand("decide", "truth of a sentence in the dense theory");
    int dec_n = 3;
    std::string dec_formula;
    decide->add_option("--n", dec_n, "arity")->required();
    decide->add_option("sentence", dec_formula, "sentence in s-expression syntax")->required();

    // sat
    auto* sat = app.add_subcommand("sat", "satisfiability of a quantifier-free formula");
    int sat_n = 3;
    std::string sat_formula;
    sat->add_option("--n", sat_n, "arity")->required();
    sat->add_option("formula", sat_formula, "quantifier-free formula")->required();

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "countable-model spectrum of an expansion");
    int spec_n = 4;
    std::string spec_counts;
    int spec_ehrenfeucht = -1;
    bool spec_infinite = false;
    spectrum_cmd->add_option("--n", spec_n, "arity")->required();
    spectrum_cmd->add_option("--counts", spec_counts,
                             "per-k counts of nonisolated types (positional over admissible k)");
    spectrum_cmd->add_option("--ehrenfeucht", spec_ehrenfeucht, "ehrenfeucht expansion with m models");
    spectrum_cmd->add_flag("--infinite-types", spec_infinite,
                           "infinitely many nonisolated 1-types");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "countable models of the ehrenfeucht expansion");
    int cat_n = 4, cat_m = 3;
    catalog->add_option("--n", cat_n, "arity")->required();
    catalog->add_option("--m", cat_m, "number of countable models")->required();

    // hasse
    auto* hasse = app.add_subcommand("hasse", "DOT Hasse diagram of the Rudin-Keisler preorder");
    std::string hasse_kind;
    hasse->add_option("--kind", hasse_kind, "T1 | T2 | limit(k) | products like T1*limit(3)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*generate) {
            store_structure(gen_out, FiniteSphericalOrder::derive(gen_n, numeric_labels(gen_m), budget));
            return 0;
        }
        if (*check) {
            auto order = load_structure(check_path);
            auto rep = check_axioms(order, budget);
            if (as_json) std::cout << report_json(rep).dump(2) << "\n";
            else print_check_text(rep);
            return rep.all_passed() ? 0 : 1;
        }
        if (*count) {
            auto value = cardinality_formula(count_n, count_m);
            if (as_json) std::cout << json{{"count", value}}.dump() << "\n";
            else std::cout << value << "\n";
            return 0;
        }
        if (*iso) {
            auto a = load_structure(iso_a);
            auto b = load_structure(iso_b);
            auto mapping = are_isomorphic(a, b);
            if (as_json) {
                json j;
                j["isomorphic"] = mapping.has_value();
                if (mapping) j["mapping"] = *mapping;
                std::cout << j.dump(2) << "\n";
            } else if (mapping) {
                for (const auto& [from, to] : *mapping) std::cout << from << " -> " << to << "\n";
            } else {
                std::cout << "not isomorphic\n";
            }
            return mapping ? 0 : 1;
        }
        if (*unique) {
            auto classes = enumerate_all_orders(uniq_n, uniq_m, budget);
            unsigned long long labeled = 0;
            for (const auto& c : classes) labeled += c.labeled_count;
            if (as_json) {
                json j;
                j["classes"] = classes.size();
                j["labeled_relations"] = labeled;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << classes.size() << " isomorphism class(es), " << labeled
                          << " labeled relation(s)\n";
            }
            return 0;
        }
        if (*witness) {
            auto oracle = witness->count("--seed") ? DenseOracle::seeded(wit_n, wit_seed)
                                                   : DenseOracle::standard(wit_n);
            auto tuple = parse_rational_list(wit_tuple);
            auto b = oracle.density_witness(tuple);
            if (as_json) std::cout << json{{"witness", b.str()}}.dump() << "\n";
            else std::cout << b.str() << "\n";
            return 0;
        }
        if (*backforth) {
            auto a = backforth->count("--seed-a") ? DenseOracle::seeded(bf_n, bf_seed_a)
                                                  : DenseOracle::standard(bf_n);
            auto b = backforth->count("--seed-b") ? DenseOracle::seeded(bf_n, bf_seed_b)
                                                  : DenseOracle::standard(bf_n);
            PartialIso iso_run(a, b, bf_bound);
            bool preserved = true;
            for (std::uint64_t i = 0; i < bf_steps; ++i) {
                iso_run.step();
                preserved = preserved && iso_run.last_step_preserves();
                if (bf_trace) {
                    const auto& e = iso_run.pairs().back();
                    json line;
                    line["step"] = i + 1;
                    line["side"] = e.extended_from_source ? "source" : "target";
                    line["source"] = e.source_value.str();
                    line["target"] = e.target_value.str();
                    std::cout << line.dump() << "\n";
                }
            }
            json j;
            j["pairs"] = iso_run.pairs().size();
            j["preserving"] = preserved;
            if (as_json) std::cout << j.dump() << "\n";
            else
                std::cout << iso_run.pairs().size() << " pairs, preservation "
                          << (preserved ? "verified" : "FAILED") << "\n";
            return preserved ? 0 : 1;
        }
        if (*decide) {
            Formula f = parse_formula(dec_formula, dec_n);
            bool value = decide_sentence(dec_n, f, budget);
            if (as_json) std::cout << json{{"true", value}}.dump() << "\n";
            else std::cout << (value ? "true" : "false") << "\n";
            return 0;
        }
        if (*sat) {
            Formula f = parse_formula(sat_formula, sat_n);
            auto model = qf_sat(sat_n, f, budget);
            if (as_json) {
                json j;
                j["satisfiable"] = model.has_value();
                if (model) j["diagram"] = diagram_json(*model);
                std::cout << j.dump(2) << "\n";
            } else if (model) {
                std::cout << "SAT " << diagram_json(*model).dump() << "\n";
            } else {
                std::cout << "UNSAT\n";
            }
            return model ? 0 : 1;
        }
        if (*spectrum_cmd) {
            ExpansionSpec spec =
                spec_ehrenfeucht >= 0
                    ? ExpansionSpec::ehrenfeucht(spec_n, spec_ehrenfeucht)
                    : ExpansionSpec::constants(
                          spec_n,
                          spec_counts.empty() ? std::map<int, unsigned>{}
                                              : counts_from_csv(spec_n, spec_counts),
                          spec_infinite);
            auto result = spectrum(spec);
            if (as_json) std::cout << json{{"spectrum", result.str()}}.dump() << "\n";
            else std::cout << result.str() << "\n";
            return 0;
        }
        if (*catalog) {
            auto cat = ehrenfeucht_catalog(cat_n, cat_m);
            if (as_json) {
                json models = json::array();
                for (const auto& m : cat.models) {
                    json jm;
                    jm["kind"] = m.kind == ModelDescriptor::Kind::Prime ? "prime"
                               : m.kind == ModelDescriptor::Kind::PrimeOverRealization
                                   ? "prime_over_realization"
                               : m.kind == ModelDescriptor::Kind::Saturated ? "saturated"
                                                                            : "limit";
                    if (m.completion_index >= 0) jm["completion"] = m.completion_index;
                    jm["type"] = m.type_label;
                    jm["description"] = m.description;
                    models.push_back(jm);
                }
                std::cout << json{{"models", models}}.dump(2) << "\n";
            } else {
                for (const auto& m : cat.models) std::cout << m.description << "\n";
            }
            return 0;
        }
        if (*hasse) {
            std::cout << hasse_dot(hasse_kind);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", e.code()}, {"detail", e.detail()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}
