#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbivol/numberfields.hpp"

namespace fixtures {

inline std::string field_table_path() {
    if (const char* p = std::getenv("ORBIVOL_FIELD_TABLE")) return p;
    return ORBIVOL_FIELD_TABLE;
}

inline const std::vector<orbivol::FieldDescriptor>& table() {
    static const auto t = orbivol::load_field_table(field_table_path());
    return t;
}

inline const orbivol::FieldDescriptor& field(const std::string& label) {
    const auto* f = orbivol::find_field(table(), label);
    if (!f) throw std::runtime_error("field " + label + " missing from the bundled table");
    return *f;
}

inline const orbivol::FieldDescriptor& sqrt5() { return field("2.2.5.1"); }
inline const orbivol::FieldDescriptor& sqrt2() { return field("2.2.8.1"); }

}  // namespace fixtures
