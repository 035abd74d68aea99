#ifndef SHIFTSIM_JSON_IO_HPP
#define SHIFTSIM_JSON_IO_HPP

#include <string>
#include <variant>

#include "shiftsim/houghton.hpp"

namespace shiftsim {

// Canonical JSON forms:
//   permutation: {"p": int, "T": int, "table": [int...]}
//   triple:      {"n": int, "class": str, "minus": [[k,i]...],
//                 "sigma": [[[k,i],[k,i]]...], "gs": [perm...], "plus": [[k,i]...]}
//   element:     {"n": int, "flat": perm}
// Deserialization re-validates every invariant.

std::string to_json_string(const EPPerm& g, int indent = -1);
std::string to_json_string(const Triple& t, int indent = -1);
std::string to_json_string(const HoughtonElement& e, int indent = -1);

EPPerm epperm_from_json_string(const std::string& text);
Triple triple_from_json_string(const std::string& text);
HoughtonElement element_from_json_string(const std::string& text);

using JsonValue = std::variant<EPPerm, Triple, HoughtonElement>;
// Dispatches on the fields present ("table" / "gs" / "flat").
JsonValue value_from_json_string(const std::string& text);
JsonValue value_from_json_file(const std::string& path);

}  // namespace shiftsim

#endif
