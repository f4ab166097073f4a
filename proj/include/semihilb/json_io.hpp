#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "semihilb/block_operator.hpp"
#include "semihilb/certify.hpp"
#include "semihilb/gauges.hpp"
#include "semihilb/linalg.hpp"

namespace semihilb {

using Json = nlohmann::ordered_json;

/// Complex scalars are [re, im]; a bare number is read as real.
Scalar parse_complex(const Json& j);
/// Matrices are arrays of rows.
Matrix parse_matrix(const Json& j);
Vector parse_vector(const Json& j);

Json to_json(Scalar z);
Json to_json(const Matrix& m);
Json to_json(const Vector& v);

/// Contents of an instance file. Only A is mandatory.
struct Instance {
  int n = 0;
  Matrix a;
  std::optional<Matrix> t;
  std::optional<Matrix> s;
  std::optional<Vector> x;
  std::optional<Vector> y;
  int d = 0;
  BlockGrid blocks;
  std::string check;
};

/// Throws Error(ParseError) on malformed JSON or missing/ill-typed fields and
/// Error(DimensionMismatch) on inconsistent shapes.
Instance parse_instance(const std::string& text);
Instance parse_instance(const Json& j);
Json to_json(const Instance& inst);

Json to_json(const Verdict& v);
Json to_json(const CrosscheckResult& c);
Json to_json(const BridgeReport& b);
Json to_json(const BlockReport& r);
Json to_json(const SweepMeta& m);
/// Gauge summary plus, when `with_samples`, the support samples and polygon.
Json to_json(const RangeProfile& p, bool with_samples = true);

/// Writes the profile as .json, .csv or .svg, chosen by the file extension.
/// Throws Error(ParseError) for any other extension.
void write_profile(const RangeProfile& p, const std::string& path);
std::string profile_csv(const RangeProfile& p);
std::string profile_svg(const RangeProfile& p);

}  // namespace semihilb
