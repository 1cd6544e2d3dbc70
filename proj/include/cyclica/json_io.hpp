#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cyclica/certify.hpp"
#include "cyclica/decomp.hpp"
#include "cyclica/hautus.hpp"
#include "cyclica/mrb.hpp"
#include "cyclica/switched.hpp"

namespace cyclica::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "v1";

/// Input that does not match a schema. `path` locates the offending field
/// ("$.modes[1].A[0]"); parse failures carry line and column instead.
class SchemaError : public InputError {
 public:
  SchemaError(std::string path, const std::string& message)
      : InputError(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Parses text, reporting syntax errors with line and column.
Json parse(std::string_view text, const std::string& origin = "input");

/// Scalars: integers, decimals, "p/q" strings, or [re, im] pairs of those.
Exact parse_scalar(const Json& j, const std::string& path);
Vector<Exact> parse_vector(const Json& j, const std::string& path);
/// A list of equally long rows.
Matrix<Exact> parse_matrix(const Json& j, const std::string& path);

/// Required "schema": "v1" when the field is present with another value.
void check_schema(const Json& j);

GeneratorSet<Exact> parse_generators(const Json& j);
SwitchedSystem<Exact> parse_system(const Json& j);
mrb::MrbSystem parse_mrb(const Json& j);

Json to_json(const Exact& x);
Json to_json(const Float& x);
template <class T>
Json to_json(const Vector<T>& v);
template <class T>
Json to_json(const Matrix<T>& m);
/// {"dim", "ambient", "basis": rows}
template <class T>
Json to_json(const Subspace<T>& s);

template <class T>
Json to_json(const Obstruction<T>& ob);
template <class T>
Json to_json(const Certificate<T>& c);
template <class T>
Json to_json(const RankDropLocus<T>& l);
template <class T>
Json to_json(const Decomposition<T>& d);
template <class T>
Json to_json(const MinimalDimension<T>& md);
template <class T>
Json to_json(const DesignResult<T>& d);
Json to_json(const mrb::MrbReport& r);

}  // namespace cyclica::io
