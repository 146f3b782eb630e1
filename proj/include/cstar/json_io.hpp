#pragma once

// JSON encodings shared by the CLI and the tests.
//
//   matrix:    {"dim": n, "rows": [[[re, im], ...], ...]}
//   function:  {"kind": "sqrt"} | {"kind": "power", "r": 0.5}
//              | {"kind": "indicator", "lo": 0.5, "hi": 1.5}
//              | {"kind": "piecewise_linear", "points": [[t, y], ...]}
//   weight:    {"kind": "density", "h": matrix} | {"kind": "infinite"}
//   sequence:  {"dim": n, "entries": [matrix, ...], "tail_fraction": 0.5}
//
// Doubles are written in shortest round-trip form. Non-finite reals that
// appear in results (an unbounded indicator edge, an infinite weight value)
// are written as the strings "inf" / "-inf".

#include <optional>

#include <nlohmann/json.hpp>

#include "cstar/functional_calculus.hpp"
#include "cstar/hull_model.hpp"
#include "cstar/matrix.hpp"
#include "cstar/projection_geometry.hpp"
#include "cstar/weights.hpp"

namespace cstar::json {

using Json = nlohmann::json;

Json real_to_json(double x);
double real_from_json(const Json& j, const char* what);

Json to_json(Complex z);
Json to_json(const MatElement& a);
Json to_json(const FnDescriptor& f);
Json to_json(const Weight& w);
Json to_json(const MatrixSequence& s);
Json to_json(const Spectrum& s);
Json to_json(const SpectralDecomposition& d);
Json to_json(const PStarApprox& p);
Json to_json(const RetractionResult& r);
Json to_json(const EquivWitness& w);
Json to_json(const WeightFlags& f);
Json to_json(const LeqNResult& r);
Json to_json(const ApsCertificate& c);
Json to_json(const ApisCertificate& c);
Json to_json(const SimAWitness& w);
Json to_json(const ThresholdIndexResult& r);
Json to_json(const InfinitenessReport& r);

/// All parsers throw ParseError on malformed input; semantic violations
/// (e.g. a non-positive density) surface as PreconditionError.
MatElement matrix_from_json(const Json& j);
FnDescriptor fn_from_json(const Json& j);
Weight weight_from_json(const Json& j);
/// tail_fraction falls back to default_tail when the document omits it.
MatrixSequence sequence_from_json(const Json& j, double default_tail = 0.5);

Json parse(std::string_view text);

}  // namespace cstar::json
