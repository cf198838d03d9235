#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricmmp/algebra.hpp"
#include "toricmmp/mmp.hpp"

namespace toricmmp::io {

using Json = nlohmann::ordered_json;

/// "p/q" for rationals, {"a": "p/q", "b": "p/q", "root": s} otherwise. Strings of
/// the form "a+b*sqrt(s)" are also accepted.
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

/// {"rank": n, "rays": [["1","0"], ...], "max_cones": [[0,1], ...]}.
Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);

/// {"coeffs": {"0": "1/2", ...}}; zero coefficients are omitted.
Json to_json(const TDivisor& d);
TDivisor divisor_from_json(const Json& j, int num_rays);

/// {"fan": ..., "boundary": {"coeffs": ...}, "ghosts": [{"class": [...], "weight": ...}]}.
/// Ghosts may list their "vertices" (characters of the linear system); without
/// them the class must be free on the fan.
Json to_json(const ToricPair& p);
ToricPair pair_from_json(const Json& j);

/// {"kind": ..., "wall": [...], "j_plus": [...], "j_minus": [...], "removed_ray": i}.
Json to_json(const ContractionResult& c);

struct TraceStep {
  int step = 0;
  std::optional<Scalar> t;
  std::vector<int> ray;
  std::string kind;
  std::vector<int> j_plus, j_minus;
  std::optional<int> removed_ray;
  std::string model_hash;
};

struct TraceRecord {
  ToricPair initial;
  std::optional<TDivisor> h;
  std::optional<Scalar> t0;
  std::vector<TraceStep> steps;
  std::string outcome;
  std::string reason;
  ToricPair final_pair;
};

TraceRecord record(const MMPTrace& t);
Json to_json(const TraceRecord& r);
Json to_json(const MMPTrace& t);
TraceRecord trace_from_json(const Json& j);

std::string hash_string(const Fan& f);

/// {"m": [...], "b": scalar, "d": optional scalar}.
Json to_json(const CurveAlgebraInstance& inst);
CurveAlgebraInstance instance_from_json(const Json& j);

/// {"numerical": [3, 5]} or {"cone": {"alpha": scalar, "beta": scalar}}.
GradedSemigroup semigroup_from_json(const Json& j);

/// Reads a JSON file. Throws ParseError.
Json read_file(const std::string& path);
/// Two-space indented dump followed by a newline.
void write_file(const std::string& path, const Json& j);

}  // namespace toricmmp::io
