// Deterministic text and JSON renderings of models and solve results.

#pragma once

#include <json.hpp>

#include "engine.hpp"
#include "oracle.hpp"

namespace extensia {

using Json = nlohmann::ordered_json;

Json truthJson(TruthValue v);  // {"sign":"T|F|0","level":n}; no level for 0
std::optional<TruthValue> truthFromJson(const Json& j);

// Emitted by a plain serializer: model tables can run to hundreds of
// thousands of cells, which rules out building a DOM-style object per cell.
std::string interpretationJsonText(const Interpretation& m, bool collapsed);
std::string interpretationText(const Interpretation& m, bool collapsed);

// {"model": ..., "collapsed": ..., "stats": {...}}
std::string solveResultJsonText(const SolveResult& r);

Json wfsJson(const std::map<std::string, ThreeValued>& wfm);
std::string wfsText(const std::map<std::string, ThreeValued>& wfm);

}  // namespace extensia
