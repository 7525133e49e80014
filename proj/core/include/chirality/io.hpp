#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "chirality/census.hpp"
#include "chirality/double_six.hpp"
#include "chirality/errors.hpp"

namespace chiral {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct InputDocument {
  PairSet pairs;
  ArithmeticMode mode = ArithmeticMode::kExact;
};

// JSON with numbers kept as their source text, so decimals stay exact.
nlohmann::json parse_json_exact(std::string_view text);

// {"pairs": [{"u": [x, y], "v": [x, y]}, ...], "mode": "exact" | "float"}
// Coordinates are integers, decimals or "p/q" strings.
InputDocument parse_input(std::string_view text);
InputDocument read_input_file(const std::filesystem::path& path);

inline constexpr const char* kReportSchema = "chirality-report/1";

nlohmann::json to_json(const Scalar& s);
nlohmann::json to_json(const Vec3& v);
nlohmann::json to_json(const Vec4& v);
nlohmann::json to_json(const Mat3& m);
nlohmann::json to_json(const Mat34& m);
nlohmann::json to_json(const PairSet& pairs);
nlohmann::json to_json(const CornerReport& c);
nlohmann::json to_json(const Reconstruction& r);
nlohmann::json to_json(const ChiralCertificate& c);
nlohmann::json to_json(const Decision& d, bool include_witness = true);
nlohmann::json to_json(const SixthPair& s);
nlohmann::json to_json(const Conic& c);
nlohmann::json to_json(const SurfaceLine& l);
nlohmann::json to_json(const DoubleSix& ds);
nlohmann::json to_json(const RegionReport& r);
nlohmann::json to_json(const CensusStats& s);
nlohmann::json to_json(const PerturbationReport& p);

Scalar scalar_from_json(const nlohmann::json& j);
Reconstruction reconstruction_from_json(const nlohmann::json& j);

}  // namespace chiral
