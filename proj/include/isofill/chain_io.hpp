#pragma once

#include <string>
#include <string_view>

#include "isofill/complex.hpp"

namespace isofill {

/**
 * JSON form of a chain:
 *
 *     {"type": "chain", "dimension": 1,
 *      "records": [[1, 0, "x", "1/4"], [1, 1, "", "-1/4"], ...]}
 *
 * Each record is [dimension, orbit, canonical form, "num/den"]; records are
 * sorted by (dimension, orbit, canonical form), so equal chains serialise to
 * identical bytes.
 */
std::string serialize_chain(const Chain& chain);

/// Parses serialize_chain output (or a bare record array); throws ParseError.
Chain parse_chain(const Presentation& presentation, std::string_view text);

Chain load_chain(const Presentation& presentation, const std::string& path);
void save_chain(const Chain& chain, const std::string& path);

}  // namespace isofill
