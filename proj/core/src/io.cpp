#include "chirality/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "chirality/errors.hpp"

namespace chiral {
namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Builds a DOM in which every number is stored as its source text.
class ExactSax : public json::json_sax_t {
 public:
  explicit ExactSax(std::string_view text) : text_(text) {}

  bool null() override { return put(nullptr); }
  bool boolean(bool v) override { return put(v); }
  bool number_integer(number_integer_t v) override { return put(std::to_string(v)); }
  bool number_unsigned(number_unsigned_t v) override { return put(std::to_string(v)); }
  bool number_float(number_float_t, const string_t& s) override { return put(s); }
  bool string(string_t& v) override { return put(v); }
  bool binary(binary_t&) override { return put(nullptr); }
  bool start_object(std::size_t) override { return open(json::object()); }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(json::array()); }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    auto [line, column] = line_column(text_, position == 0 ? 0 : position - 1);
    std::string msg = ex.what();
    if (auto colon = msg.rfind(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError("malformed JSON (" + msg + ")", line, column);
  }

  json result() { return std::move(root_); }

 private:
  bool put(json v) {
    if (stack_.empty()) {
      root_ = std::move(v);
    } else if (stack_.back()->is_array()) {
      stack_.back()->push_back(std::move(v));
    } else {
      (*stack_.back())[key_] = std::move(v);
    }
    return true;
  }
  bool open(json v) {
    if (stack_.empty()) {
      root_ = std::move(v);
      stack_.push_back(&root_);
    } else if (stack_.back()->is_array()) {
      stack_.back()->push_back(std::move(v));
      stack_.push_back(&stack_.back()->back());
    } else {
      json& slot = (*stack_.back())[key_];
      slot = std::move(v);
      stack_.push_back(&slot);
    }
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }

  std::string_view text_;
  json root_;
  std::vector<json*> stack_;
  std::string key_;
};

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw InvalidInput("input " + where + ": " + what);
}

HPoint2 point_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3)) schema_error(where, "expected [x, y] or [x, y, w]");
  if (j.size() == 2) return HPoint2::affine(scalar_from_json(j[0]), scalar_from_json(j[1]));
  Scalar w = scalar_from_json(j[2]);
  if (w.is_zero()) schema_error(where, "point at infinity");
  return HPoint2::affine(scalar_from_json(j[0]) / w, scalar_from_json(j[1]) / w);
}

template <typename V>
json vec_json(const V& v) {
  json out = json::array();
  for (const Scalar& s : v.c) out.push_back(to_json(s));
  return out;
}

template <std::size_t R, std::size_t C>
json mat_json(const Mat<R, C>& m) {
  json out = json::array();
  for (std::size_t r = 0; r < R; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < C; ++c) row.push_back(to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

template <std::size_t R, std::size_t C>
Mat<R, C> mat_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.size() != R) throw InvalidInput(std::string(name) + " must have " + std::to_string(R) + " rows");
  Mat<R, C> m;
  for (std::size_t r = 0; r < R; ++r) {
    if (!j[r].is_array() || j[r].size() != C)
      throw InvalidInput(std::string(name) + " rows must have " + std::to_string(C) + " entries");
    for (std::size_t c = 0; c < C; ++c) m(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

json signs_json(const std::vector<int>& s) {
  std::string out;
  for (int x : s) out += x > 0 ? '+' : x < 0 ? '-' : '0';
  return out;
}

}  // namespace

json parse_json_exact(std::string_view text) {
  ExactSax sax(text);
  json::sax_parse(text.begin(), text.end(), &sax);
  return sax.result();
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_number_float()) {
    std::ostringstream s;
    s.precision(17);
    s << j.get<double>();
    return Scalar::parse(s.str());
  }
  throw InvalidInput("expected a number or a \"p/q\" string, got " + j.dump());
}

InputDocument parse_input(std::string_view text) {
  json doc = parse_json_exact(text);
  if (!doc.is_object()) schema_error("root", "expected an object");
  InputDocument in;
  if (doc.contains("mode")) {
    const json& m = doc["mode"];
    if (m == "exact") {
      in.mode = ArithmeticMode::kExact;
    } else if (m == "float") {
      in.mode = ArithmeticMode::kFloat;
    } else {
      schema_error("mode", "expected \"exact\" or \"float\"");
    }
  }
  if (!doc.contains("pairs") || !doc["pairs"].is_array()) schema_error("pairs", "expected an array of point pairs");
  ScopedArithmeticMode scope(in.mode);
  std::vector<PointPair> pairs;
  const json& list = doc["pairs"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "pairs[" + std::to_string(i) + "]";
    const json& p = list[i];
    if (!p.is_object() || !p.contains("u") || !p.contains("v")) schema_error(where, "expected {\"u\": [x, y], \"v\": [x, y]}");
    pairs.push_back({point_from_json(p["u"], where + ".u"), point_from_json(p["v"], where + ".v")});
  }
  in.pairs = PairSet(std::move(pairs));
  return in;
}

InputDocument read_input_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_input(buf.str());
}

json to_json(const Scalar& s) { return s.str(); }
json to_json(const Vec3& v) { return vec_json(v); }
json to_json(const Vec4& v) { return vec_json(v); }
json to_json(const Mat3& m) { return mat_json(m); }
json to_json(const Mat34& m) { return mat_json(m); }

json to_json(const PairSet& pairs) {
  json out = json::array();
  for (const PointPair& p : pairs.pairs())
    out.push_back({{"u", {to_json(p.u[0]), to_json(p.u[1])}}, {"v", {to_json(p.v[0]), to_json(p.v[1])}}});
  return out;
}

json to_json(const CornerReport& c) {
  return {{"i", c.i + 1},
          {"j", c.j + 1},
          {"rest", {c.rest[0] + 1, c.rest[1] + 1, c.rest[2] + 1}},
          {"D", {to_json(c.values[0]), to_json(c.values[1]), to_json(c.values[2])}},
          {"pass", c.pass}};
}

json to_json(const Reconstruction& r) {
  json points = json::array();
  for (const HPoint3& q : r.points) points.push_back(to_json(q.h));
  json w1 = json::array(), w2 = json::array();
  for (const Scalar& w : r.w1) w1.push_back(to_json(w));
  for (const Scalar& w : r.w2) w2.push_back(to_json(w));
  return {{"first", to_json(r.first.matrix())},
          {"second", to_json(r.second.matrix())},
          {"points", points},
          {"w1", w1},
          {"w2", w2},
          {"depth1", r.depth1},
          {"depth2", r.depth2}};
}

json to_json(const ChiralCertificate& c) {
  json points = json::array();
  for (const PointProducts& p : c.points)
    points.push_back({{"inf_first", p.inf_first}, {"inf_second", p.inf_second}, {"first_second", p.first_second}});
  json out{{"passed", c.passed}, {"points", points}};
  if (!c.passed) out["violation"] = c.violation;
  return out;
}

json to_json(const Decision& d, bool include_witness) {
  json out{{"status", to_string(d.status)}, {"method", d.method}, {"flags", d.flags}};
  if (d.status == Status::kUnknown) out["reason"] = d.reason;
  if (d.certificate) {
    const Certificate& c = *d.certificate;
    json cert{{"kind", c.kind}, {"summary", c.summary}};
    if (!c.corners.empty()) {
      json rows = json::array();
      for (const CornerReport& r : c.corners) rows.push_back(to_json(r));
      cert["corners"] = rows;
    }
    if (!c.subset.empty()) {
      json s = json::array();
      for (std::size_t i : c.subset) s.push_back(i + 1);
      cert["subset"] = s;
    }
    if (!c.v_signs.empty()) cert["v_signs"] = signs_json(c.v_signs);
    if (!c.u_signs.empty()) {
      json s = json::array();
      for (const auto& v : c.u_signs) s.push_back(signs_json(v));
      cert["u_signs"] = s;
    }
    out["certificate"] = cert;
  }
  if (d.witness) {
    json w{{"X", to_json(d.witness->x.matrix())},
           {"left_kernel", to_json(d.witness->x.left_kernel())},
           {"right_kernel", to_json(d.witness->x.right_kernel())}};
    if (include_witness) w["reconstruction"] = to_json(d.witness->reconstruction);
    out["witness"] = w;
  }
  return out;
}

json to_json(const SixthPair& s) {
  return {{"u0", to_json(s.u.h)}, {"v0", to_json(s.v.h)}, {"rank_one_in_span", s.in_span_rank_one}};
}

json to_json(const Conic& c) {
  json coeff = json::array();
  for (const Scalar& s : c.coeff) coeff.push_back(to_json(s));
  return {{"label", c.label}, {"coefficients", coeff}, {"monomials", {"x^2", "xy", "y^2", "xz", "yz", "z^2"}}};
}

json to_json(const SurfaceLine& l) { return {{"label", l.label()}, {"points", {to_json(l.first), to_json(l.second)}}}; }

json to_json(const DoubleSix& ds) {
  json u = json::array(), v = json::array(), res = json::array(), labels = json::array();
  for (const auto& l : ds.u_walls) u.push_back(to_json(l));
  for (const auto& l : ds.v_walls) v.push_back(to_json(l));
  for (const auto& l : ds.residual) res.push_back(to_json(l));
  for (const auto& l : ds.u_walls) labels.push_back(l.label());
  for (const auto& l : ds.v_walls) labels.push_back(l.label());
  for (const auto& l : ds.residual) labels.push_back(l.label());
  json incidence = json::array();
  for (const auto& row : ds.incidence) {
    std::string s;
    for (bool b : row) s += b ? '1' : '0';
    incidence.push_back(s);
  }
  return {{"u_walls", u}, {"v_walls", v}, {"residual", res}, {"line_count", labels.size()}, {"labels", labels}, {"incidence", incidence}};
}

json to_json(const RegionReport& r) {
  auto boundary = [](const std::vector<BoundaryEntry>& entries, const char* point, const char* conic) {
    json out = json::array();
    for (const BoundaryEntry& e : entries) {
      json names = json::array();
      for (std::size_t l : e.conics) names.push_back(std::string(conic) + std::to_string(l + 1));
      out.push_back({{"point", std::string(point) + std::to_string(e.point + 1)}, {"conics", names}});
    }
    return out;
  };
  json corners = json::array();
  for (auto [i, j] : r.passing_corners) corners.push_back({i + 1, j + 1});
  json c1 = json::array(), c2 = json::array();
  for (const Conic& c : r.first_image) c1.push_back(to_json(c));
  for (const Conic& c : r.second_image) c2.push_back(to_json(c));
  return {{"empty", r.empty()},
          {"passing_corners", corners},
          {"first_image", {{"conics", c1}, {"boundary", boundary(r.first_boundary, "u", "C_")}}},
          {"second_image", {{"conics", c2}, {"boundary", boundary(r.second_boundary, "v", "C^")}}}};
}

json to_json(const CensusStats& s) {
  json out{{"yes", s.yes}, {"no", s.no}, {"unknown", s.unknown}, {"total", s.total()}, {"seconds", s.seconds}};
  if (s.yes_example) out["yes_example"] = to_json(*s.yes_example);
  if (s.no_example) out["no_example"] = to_json(*s.no_example);
  if (s.unknown_example) out["unknown_example"] = to_json(*s.unknown_example);
  return out;
}

json to_json(const PerturbationReport& p) {
  json outcomes = json::object();
  for (auto [status, count] : p.outcomes) outcomes[to_string(status)] = count;
  return {{"baseline", to_string(p.baseline)},
          {"trials", p.trials},
          {"preserved", p.preserved},
          {"fraction", p.fraction()},
          {"outcomes", outcomes}};
}

Reconstruction reconstruction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("first") || !j.contains("second") || !j.contains("points"))
    throw InvalidInput("reconstruction needs \"first\", \"second\" and \"points\"");
  Reconstruction r;
  r.first = Camera(mat_from_json<3, 4>(j["first"], "first"));
  r.second = Camera(mat_from_json<3, 4>(j["second"], "second"));
  for (const json& q : j["points"]) {
    if (!q.is_array() || q.size() != 4) throw InvalidInput("world points need four coordinates");
    r.points.push_back(HPoint3(Vec4{scalar_from_json(q[0]), scalar_from_json(q[1]), scalar_from_json(q[2]), scalar_from_json(q[3])}));
  }
  for (const char* key : {"w1", "w2"}) {
    if (!j.contains(key)) continue;
    auto& dst = std::string(key) == "w1" ? r.w1 : r.w2;
    for (const json& w : j[key]) dst.push_back(scalar_from_json(w));
  }
  return r;
}

}  // namespace chiral
