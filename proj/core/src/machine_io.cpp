#include "ppnear/io.hpp"

#include "ppnear/error.hpp"

#include "json_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ppnear {

using nlohmann::json;

namespace {

json group_to_json(const GroupSpec& s)
{
    switch (s.kind) {
    case GroupSpec::Kind::cyclic:
        return {{"kind", "cyclic"}, {"n", s.n}};
    case GroupSpec::Kind::product: {
        json factors = json::array();
        for (const auto& f : s.factors)
            factors.push_back(group_to_json(f));
        return {{"kind", "product"}, {"factors", factors}};
    }
    case GroupSpec::Kind::table:
        return {{"kind", "table"}, {"add", s.add}};
    }
    return {};
}

GroupSpec group_from_json(const json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "cyclic")
        return GroupSpec::cyclic(j.at("n").get<std::size_t>());
    if (kind == "product") {
        std::vector<GroupSpec> factors;
        for (const auto& f : j.at("factors"))
            factors.push_back(group_from_json(f));
        return GroupSpec::product(std::move(factors));
    }
    if (kind == "table")
        return GroupSpec::table(j.at("add").get<std::vector<std::vector<Element>>>());
    throw Error(Errc::parse_error, "unknown group kind \"" + kind + "\"");
}

template <class T>
std::vector<std::vector<T>> rows(const std::vector<T>& flat, std::size_t width)
{
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < flat.size(); i += width)
        out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i),
                         flat.begin() + static_cast<std::ptrdiff_t>(i + width));
    return out;
}

template <class T>
std::vector<T> flatten(const std::vector<std::vector<T>>& rs, std::size_t width, const char* what)
{
    std::vector<T> out;
    for (const auto& r : rs) {
        if (r.size() != width)
            throw Error(Errc::parse_error, std::string(what) + " rows must have one entry per group element");
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

// Runs a parser and converts JSON library failures to Errc::parse_error.
template <class F>
auto guarded(std::string_view what, F&& f)
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, std::string(what) + ": " + e.what());
    }
}

json parse_json(std::string_view text, std::string_view what)
{
    return guarded(what, [&] { return json::parse(text); });
}

std::size_t parse_size(std::string_view s)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error(Errc::parse_error, "expected a nonnegative integer, got \"" + std::string(s) + "\"");
    return v;
}

} // namespace

std::string serialize_group(const FiniteGroup& g) { return detail::format_json(group_to_json(g.spec())); }

FiniteGroup parse_group(std::string_view text)
{
    const auto j = parse_json(text, "group");
    return FiniteGroup::from_spec(guarded("group", [&] { return group_from_json(j); }));
}

FiniteGroup parse_group_argument(std::string_view arg)
{
    if (!arg.empty() && arg.front() == '{')
        return parse_group(arg);
    const auto colon = arg.find(':');
    if (colon == std::string_view::npos)
        throw Error(Errc::parse_error, "group must be cyclic:N, product:N1,N2,... or a JSON object");
    const auto kind = arg.substr(0, colon);
    auto rest = arg.substr(colon + 1);
    if (kind == "cyclic")
        return FiniteGroup::cyclic(parse_size(rest));
    if (kind == "product") {
        std::vector<FiniteGroup> factors;
        while (true) {
            const auto comma = rest.find(',');
            factors.push_back(FiniteGroup::cyclic(parse_size(rest.substr(0, comma))));
            if (comma == std::string_view::npos)
                break;
            rest = rest.substr(comma + 1);
        }
        return FiniteGroup::product(factors);
    }
    throw Error(Errc::parse_error, "unknown group kind \"" + std::string(kind) + "\"");
}

std::string serialize_machine(const MealyMachine& m)
{
    const std::size_t order = m.group().order();
    json j;
    j["group"] = group_to_json(m.group().spec());
    j["states"] = m.state_count();
    j["start"] = m.start();
    j["trans"] = rows(m.transitions(), order);
    j["out"] = rows(m.outputs(), order);
    return detail::format_json(j);
}

MealyMachine parse_machine(std::string_view text)
{
    const auto j = parse_json(text, "machine");
    return guarded("machine", [&] {
        auto g = FiniteGroup::from_spec(group_from_json(j.at("group")));
        const auto states = j.at("states").get<std::size_t>();
        const auto start = j.at("start").get<State>();
        auto trans = flatten(j.at("trans").get<std::vector<std::vector<State>>>(), g.order(), "trans");
        auto out = flatten(j.at("out").get<std::vector<std::vector<Element>>>(), g.order(), "out");
        return MealyMachine(std::move(g), states, start, std::move(trans), std::move(out));
    });
}

std::string serialize_scheme(const EncodingScheme& s)
{
    json j;
    j["K"] = group_to_json(s.K.spec());
    j["G"] = group_to_json(s.G.spec());
    j["n"] = s.n;
    j["S"] = s.S;
    j["beta"] = s.beta;
    j["alpha_section"] = s.alpha_section;
    return detail::format_json(j);
}

EncodingScheme parse_scheme(std::string_view text)
{
    const auto j = parse_json(text, "scheme");
    return guarded("scheme", [&] {
        return EncodingScheme{
            FiniteGroup::from_spec(group_from_json(j.at("K"))),
            j.at("n").get<std::size_t>(),
            j.at("S").get<std::vector<std::vector<Element>>>(),
            j.at("beta").get<std::vector<Element>>(),
            j.at("alpha_section").get<std::vector<std::size_t>>(),
            FiniteGroup::from_spec(group_from_json(j.at("G"))),
        };
    });
}

std::string serialize_decomposition(const AmnesiacDecomposition& d)
{
    auto tables = [](const std::vector<FunctionTable>& fs) {
        json a = json::array();
        for (const auto& f : fs)
            a.push_back(f.values());
        return a;
    };
    json j;
    j["transient"] = tables(d.transient);
    j["cycle"] = tables(d.cycle);
    return detail::format_json(j);
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::parse_error, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::invalid_argument, "cannot write " + path.string());
    out << text;
}

} // namespace ppnear
