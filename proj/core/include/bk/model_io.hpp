#ifndef BK_MODEL_IO_HPP
#define BK_MODEL_IO_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "bk/model.hpp"

namespace bk {

/// Largest carrier accepted by load_model.
inline constexpr std::size_t kMaxCarrier = 65536;

/// Parses and validates a JSON model document:
///
///   {"sorts": {"Ua": 2, ...},
///    "relations": {"Ra": {"from": "Ua", "to": "Ub", "pairs": [[0, 1], ...]}},
///    "predicates": {"p": {"sort": "Ua", "members": [1]}},
///    "families": {"P": {"sort": "Ub", "nonempty": true, "predicates": [[0], [1]]}},
///    "cycles": {"c": ["Ra", "Rb"]}}
///
/// "predicates", "families" and "cycles" are optional; unknown keys are
/// rejected. Throws ParseError (byte offset) for malformed JSON and
/// ValidationError (JSON pointer) for anything that breaks a model invariant.
BeliefStructure load_model(std::string_view text);

/// Reads `path` and calls load_model. I/O failures raise bk::Error.
BeliefStructure load_model_file(const std::string& path);

/// Canonical JSON text: sorts in declaration order, everything else by name,
/// pairs row-major, members ascending. load_model(serialize_model(m)) == m.
std::string serialize_model(const BeliefStructure& m, int indent = 2);

}  // namespace bk

#endif  // BK_MODEL_IO_HPP
