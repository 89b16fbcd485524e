#ifndef OVOID_IO_HPP
#define OVOID_IO_HPP

#include <istream>
#include <optional>
#include <vector>

#include "json.hpp"

#include "ovoid/constructions.hpp"
#include "ovoid/ovoid.hpp"
#include "ovoid/quadric.hpp"
#include "ovoid/search.hpp"
#include "ovoid/spread.hpp"

namespace ovoid::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Field elements are written as their integer codes.
json encode(const Mat2& X);
json encode(const ProjectivePoint5& P);
json encode(const Point4& x);
json encode(const PluckerLine& L);

// {"v":1,"type":"ovoid","q":..,"model":..,"size":..,"points":[[e1,e2,e3,e4],..]}
json ovoid_record(const Field& F, const AffineOvoid& O);
json verify_record(const Field& F, const AffineOvoid& O, const VerifyReport& r);
json violation_record(const AffineOvoid& O, std::size_t i, std::size_t j);
json section_record(const Field& F, const TraceSection& s);
json spread_line_record(const Field& F, std::size_t index, const SpreadLine& L);
// Wall time is left out unless asked for, so the record is reproducible.
json search_record(const SearchResult& r, bool with_timing);
json known_record(const KnownReport& r);

// An ovoid read back from JSON-lines. Points given with five coordinates
// are kept projective.
struct ParsedOvoid {
  std::size_t line = 0;
  int q = 0;
  Model model = Model::Matrix;
  bool projective = false;
  std::vector<Mat2> points;
  std::vector<ProjectivePoint5> projective_points;
};

// One ovoid per record carrying "points"; header records are skipped.
// `q` overrides or must match the record's q. Throws InputError with the
// 1-based line number.
std::vector<ParsedOvoid> read_ovoids(std::istream& in, std::optional<int> q);

}  // namespace ovoid::io

#endif  // OVOID_IO_HPP
