#pragma once

#include "ppnear/embedding.hpp"
#include "ppnear/group.hpp"
#include "ppnear/mealy.hpp"
#include "ppnear/radical.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace ppnear {

// Text formats are JSON objects. Serialization is deterministic: keys are
// sorted, arrays of numbers stay on one line, and the output ends with '\n',
// so a fixed value always produces the same bytes.
//
// Group:   {"kind":"cyclic","n":3}
//          {"kind":"product","factors":[<group>, ...]}
//          {"kind":"table","add":[[...], ...]}
// Machine: {"group":<group>,"states":Q,"start":s,"trans":[[...]],"out":[[...]]}
//          with one row per state and one column per input element.
// Scheme:  {"K":<group>,"n":n,"S":[[...]],"beta":[...],"alpha_section":[...],"G":<group>}
//          where alpha_section[g] is an index into S.

[[nodiscard]] std::string serialize_group(const FiniteGroup& g);
[[nodiscard]] FiniteGroup parse_group(std::string_view text);

/// Shorthand used on the command line: "cyclic:N", "product:N1,N2,..."
/// (direct product of cyclic groups), or an inline JSON group object.
[[nodiscard]] FiniteGroup parse_group_argument(std::string_view arg);

[[nodiscard]] std::string serialize_machine(const MealyMachine& m);
[[nodiscard]] MealyMachine parse_machine(std::string_view text);

[[nodiscard]] std::string serialize_scheme(const EncodingScheme& s);
[[nodiscard]] EncodingScheme parse_scheme(std::string_view text);

[[nodiscard]] std::string serialize_decomposition(const AmnesiacDecomposition& d);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace ppnear
