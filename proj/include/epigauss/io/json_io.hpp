#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "epigauss/core/convex_function.hpp"
#include "epigauss/core/measure.hpp"
#include "epigauss/functionals/moment_measure.hpp"
#include "epigauss/functionals/spherical.hpp"
#include "epigauss/solver/minkowski.hpp"
#include "epigauss/variation/first_variation.hpp"

namespace epigauss::io {

using Json = nlohmann::json;

/// Numbers that may be infinite are written as the strings "inf" / "-inf".
Json number(double v);
double to_number(const Json& j, const std::string& where);

DiscreteMeasure measure_from_json(const Json& j);
Json to_json(const DiscreteMeasure& mu);

/// Function files:
///   grid        first line {"type":"grid","domain":{"lo":[..],"hi":[..]},"shape":[..]},
///               then the values as CSV in row-major order, `inf` for +∞
///   pl          {"type":"pl","pieces":[{"slope":[..],"intercept":b}],
///                "domain":[{"normal":[..],"offset":c}]}
///   separable   {"type":"separable","axes":[{"breaks":[..],"pieces":[[a,b,c],..]}]}
///               (piece a x²/2 + b x + c)
ConvexFunction read_function(std::istream& in);
ConvexFunction read_function_file(const std::string& path);
void write_function(std::ostream& out, const ConvexFunction& f);
void write_function_file(const std::string& path, const ConvexFunction& f);

Json to_json(const PLConvexFunction& f);
PLConvexFunction pl_from_json(const Json& j);

Json to_json(const MomentMeasureEstimate& m);
Json to_json(const SphericalMeasureEstimate& m);
Json to_json(const VariationReport& r);
Json to_json(const ConditionCertificate& c);
Json to_json(const SolverResult& r);
Json to_json(const VerificationReport& r);
/// v is read back; the other fields are recomputed by callers as needed.
SolverResult solver_result_from_json(const Json& j, const ValidatedMeasure& mu);

/// iteration,residual,objective
void write_history_csv(std::ostream& out, const SolverResult& r);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace epigauss::io
