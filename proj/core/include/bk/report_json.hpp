#ifndef BK_REPORT_JSON_HPP
#define BK_REPORT_JSON_HPP

#include <nlohmann/json.hpp>

#include "bk/coalgebra.hpp"
#include "bk/completeness.hpp"
#include "bk/composition.hpp"
#include "bk/fixpoint.hpp"
#include "bk/model.hpp"

// JSON renderings of the report types. Keys keep insertion order so equal
// inputs serialize byte-identically.
namespace bk::json {

using Json = nlohmann::ordered_json;

Json members(const BitSet& b);
Json relation(const Relation& r);
Json witness_report(const WitnessReport& r);
Json bk_assumptions(const BkAssumptions& a);
Json diagonal_certificate(const DiagonalCertificate& c);
Json composition_report(const CompositionReport& r);
Json counterexample(const Counterexample& c);
Json characterization(const Characterization& c);
Json stage_sizes(const TerminalSequence& seq);
Json retraction(const RetractionReport& r);
Json closure(const ClosureReport& r);

/// Indented text with trailing newline. Arrays whose elements are scalars or
/// arrays of scalars stay on one line, so pairs and member lists read as
/// [[0, 1], [1, 1]].
std::string dump(const Json& j, int indent = 2);

}  // namespace bk::json

#endif  // BK_REPORT_JSON_HPP
