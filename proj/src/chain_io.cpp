#include "isofill/chain_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "isofill/errors.hpp"

namespace isofill {

using nlohmann::json;

std::string serialize_chain(const Chain& chain)
{
    using Record = std::tuple<int, int, std::string, std::string>;
    std::vector<Record> records;
    records.reserve(chain.size());
    for (const auto& [cell, q] : chain.terms())
        records.emplace_back(cell.dimension, cell.orbit, cell.translate.canonical_form(), to_string(q));
    std::sort(records.begin(), records.end());

    json rows = json::array();
    for (const auto& [dim, orbit, form, value] : records)
        rows.push_back(json::array({dim, orbit, form, value}));
    json doc = {{"type", "chain"}, {"dimension", chain.dimension()}, {"records", rows}};
    return doc.dump() + "\n";
}

Chain parse_chain(const Presentation& presentation, std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ParseError(std::string("chain file is not valid JSON: ") + e.what());
    }
    json records;
    std::optional<int> dimension;
    if (doc.is_array())
    {
        records = doc;
    }
    else if (doc.is_object() && doc.value("type", "") == "chain" && doc.contains("records"))
    {
        records = doc.at("records");
        if (doc.contains("dimension"))
        {
            if (!doc.at("dimension").is_number_integer())
                throw ParseError("chain 'dimension' must be an integer");
            dimension = doc.at("dimension").get<int>();
        }
    }
    else
    {
        throw ParseError("expected a chain object with 'type': 'chain' and 'records'");
    }
    if (!records.is_array())
        throw ParseError("chain 'records' must be an array");

    Chain out(dimension.value_or(records.empty() ? 1 : -1));
    bool first = true;
    for (const json& r : records)
    {
        if (!r.is_array() || r.size() != 4 || !r[0].is_number_integer() || !r[1].is_number_integer() ||
            !r[2].is_string() || !r[3].is_string())
            throw ParseError("chain record must be [dimension, orbit, canonical-form, \"num/den\"]");
        const Cell cell{r[0].get<int>(), r[1].get<int>(), presentation.element_from_canonical(r[2].get<std::string>())};
        check_cell(presentation, cell);
        if (first && !dimension)
            out = Chain(cell.dimension);
        first = false;
        if (cell.dimension != out.dimension())
            throw ParseError("chain mixes cells of different dimensions");
        out.add(cell, parse_rational(r[3].get<std::string>()));
    }
    return out;
}

Chain load_chain(const Presentation& presentation, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open chain file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_chain(presentation, buffer.str());
}

void save_chain(const Chain& chain, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write chain file '" + path + "'");
    out << serialize_chain(chain);
}

}  // namespace isofill
