#include "hatlab/cli.hpp"

#include "hatlab/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hatlab::cli {

Rational parse_exact(std::string_view text)
{
    const auto dot = text.find('.');
    if (dot == std::string_view::npos)
        return parse_fraction(text);
    const std::string whole(text.substr(0, dot));
    const std::string frac(text.substr(dot + 1));
    if (frac.empty() || ! std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    const bool negative = ! whole.empty() && whole[0] == '-';
    Rational integral = whole.empty() || whole == "-" ? Rational(0) : parse_fraction(whole);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational part(BigInt(frac), scale);
    part.canonicalize();
    return negative ? Rational(integral - part) : Rational(integral + part);
}

Json number_json(const Rational & value)
{
    return Json{{"exact", fraction_string(value)}, {"decimal", to_double(value)}};
}

std::string bitset_hex(const Bitset & set)
{
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t count = std::max<std::size_t>(1, (set.size() + 3) / 4);
    std::string out(count, '0');
    for (std::size_t d = 0; d < count; ++d) {
        unsigned nibble = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const std::size_t bit = d * 4 + b;
            if (bit < set.size() && set.test(bit))
                nibble |= 1u << b;
        }
        out[count - 1 - d] = digits[nibble];
    }
    return "0x" + out;
}

Json strategy_json(const game::Strategy & strategy)
{
    return Json{{"t", strategy.t}, {"n", strategy.n}, {"tables", strategy.tables}};
}

game::Strategy strategy_from_json(const Json & doc)
{
    game::Strategy s;
    s.t = doc.at("t").get<unsigned>();
    s.n = doc.at("n").get<unsigned>();
    s.tables = doc.at("tables").get<std::vector<std::vector<game::FamilyIndex>>>();
    return s;
}

Json family_json(const game::WinningFamily & family)
{
    Json sets = Json::array();
    for (const auto & s : family.sets)
        sets.push_back(bitset_hex(s));
    return Json{{"kind", game::to_string(family.kind)}, {"n", family.n}, {"r", family.r()}, {"sets", sets}};
}

Json blocker_family_json(const blockers::BlockerFamily & family, std::uint64_t seed, bool certified,
                         std::size_t max_emit)
{
    Json doc{{"t", family.t},
             {"n", family.n},
             {"k", family.k},
             {"beta", fraction_string(family.beta)},
             {"beta_decimal", to_double(family.beta)},
             {"count", family.size()}};

    const bool truncated = family.size() > max_emit;
    Json list = Json::array();
    if (! truncated)
        for (std::size_t i = 0; i < family.size(); ++i)
            list.push_back(family.member(i).points);
    doc["blockers"] = std::move(list);
    doc["truncated"] = truncated;
    doc["seed"] = seed;
    doc["certified"] = certified;
    if (family.product)
        doc["factors"] = Json{{"first", family.product->first}, {"second", family.product->second}};
    return doc;
}

blockers::BlockerFamily blocker_family_from_json(const Json & doc)
{
    blockers::BlockerFamily family;
    family.t = doc.at("t").get<unsigned>();
    family.n = doc.at("n").get<unsigned>();
    family.k = doc.at("k").get<std::size_t>();
    family.beta = parse_fraction(doc.at("beta").get<std::string>());
    if (family.n < 1 || family.n * family.t > game::max_tuple_bits + 6)
        throw UnsupportedSize("blocker family: unsupported (t, n)");

    if (doc.contains("factors")) {
        blockers::ProductForm product;
        product.first = doc["factors"].at("first").get<std::vector<std::vector<game::Point>>>();
        product.second = doc["factors"].at("second").get<std::vector<std::vector<game::Point>>>();
        family.product = std::move(product);
        return family;
    }
    if (doc.value("truncated", false))
        throw std::invalid_argument("blocker family: member list truncated and no factors given");
    for (const auto & points : doc.at("blockers")) {
        blockers::Blocker b{family.t, family.n, points.get<std::vector<game::TupleIndex>>(), false};
        family.listed.push_back(std::move(b));
    }
    return family;
}

namespace {

void flatten_into(const Json & value, const std::string & key, std::vector<std::string> & keys,
                  std::vector<std::string> & values)
{
    if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it)
            flatten_into(it.value(), key.empty() ? it.key() : key + "." + it.key(), keys, values);
        return;
    }
    if (value.is_array())
        return;
    keys.push_back(key);
    values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
}

std::string csv_field(const std::string & s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string csv_lines(const Json & result)
{
    std::vector<std::string> keys, values;
    flatten_into(result, "", keys, values);
    std::ostringstream out;
    for (std::size_t i = 0; i < keys.size(); ++i)
        out << (i ? "," : "") << csv_field(keys[i]);
    out << '\n';
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (i ? "," : "") << csv_field(values[i]);
    out << '\n';
    return out.str();
}

} // namespace hatlab::cli
