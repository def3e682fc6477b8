#include "json_format.hpp"

#include <algorithm>

namespace ppnear::detail {

namespace {

bool flat(const nlohmann::json& j)
{
    if (j.is_object())
        return j.empty();
    if (!j.is_array())
        return true;
    return std::all_of(j.begin(), j.end(), [](const nlohmann::json& e) { return e.is_primitive(); });
}

void write(const nlohmann::json& j, int indent, std::string& out)
{
    if (flat(j)) {
        out += j.dump();
        return;
    }
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const bool object = j.is_object();
    out += object ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first)
            out += ",\n";
        first = false;
        out += pad;
        if (object)
            out += nlohmann::json(it.key()).dump() + ": ";
        write(*it, indent + 2, out);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + (object ? "}" : "]");
}

} // namespace

std::string format_json(const nlohmann::json& j)
{
    std::string out;
    write(j, 0, out);
    out += "\n";
    return out;
}

} // namespace ppnear::detail
