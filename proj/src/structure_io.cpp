#include "sphord/structure_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace sphord {

using nlohmann::json;

std::string to_json_string(const FiniteSphericalOrder& order) {
    json j;
    j["n"] = order.arity();
    j["elements"] = order.domain();
    json tuples = json::array();
    for (const auto& t : order.canonical_representatives()) tuples.push_back(t);
    j["tuples"] = std::move(tuples);
    return j.dump(2);
}

void write_structure(std::ostream& out, const FiniteSphericalOrder& order) {
    out << to_json_string(order) << "\n";
}

FiniteSphericalOrder parse_structure(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(errc::io_error, std::string("bad structure JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("elements") || !j.contains("tuples"))
        throw Error(errc::io_error, "structure JSON needs fields n, elements, tuples");
    if (!j["n"].is_number_integer())
        throw Error(errc::io_error, "field 'n' must be an integer");
    int arity = j["n"].get<int>();

    std::vector<Label> elements;
    for (const auto& e : j["elements"]) {
        if (!e.is_string()) throw Error(errc::io_error, "elements must be strings");
        elements.push_back(e.get<std::string>());
    }

    std::vector<LabelTuple> tuples;
    for (const auto& jt : j["tuples"]) {
        LabelTuple t;
        for (const auto& e : jt) {
            if (!e.is_string()) throw Error(errc::io_error, "tuple entries must be strings");
            t.push_back(e.get<std::string>());
        }
        tuples.push_back(std::move(t));
    }
    return FiniteSphericalOrder::from_tuples(arity, std::move(elements), tuples,
                                             /*close_under_rotation=*/true);
}

FiniteSphericalOrder read_structure(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_structure(buf.str());
}

} // namespace sphord
