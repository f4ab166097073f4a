#include "semihilb/json_io.hpp"

#include <cmath>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "semihilb/error.hpp"

namespace semihilb {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { raise(ErrorCode::ParseError, what); }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

}  // namespace

Scalar parse_complex(const Json& j) {
  if (j.is_number()) return Scalar(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Scalar(j[0].get<double>(), j[1].get<double>());
  parse_fail("expected a number or [re, im], got " + j.dump());
}

Matrix parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) parse_fail("matrix rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      raise(ErrorCode::DimensionMismatch, "matrix row " + std::to_string(r + 1) +
                                              " does not have " + std::to_string(cols) +
                                              " entries");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<size_t>(c)]);
  }
  return m;
}

Vector parse_vector(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("expected a non-empty array of entries");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i]);
  return v;
}

Json to_json(Scalar z) { return Json::array({finite_or_null(z.real()), finite_or_null(z.imag())}); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(j);
}

Instance parse_instance(const Json& j) {
  if (!j.is_object()) parse_fail("instance must be a JSON object");
  if (!j.contains("A")) parse_fail("instance has no \"A\"");
  Instance inst;
  inst.a = parse_matrix(j["A"]);
  if (inst.a.rows() != inst.a.cols()) raise(ErrorCode::DimensionMismatch, "A is not square");
  inst.n = static_cast<int>(inst.a.rows());
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) parse_fail("\"n\" must be an integer");
    if (j["n"].get<int>() != inst.n)
      raise(ErrorCode::DimensionMismatch, "\"n\" = " + std::to_string(j["n"].get<int>()) +
                                              " but A is " + std::to_string(inst.n) + "x" +
                                              std::to_string(inst.n));
  }
  auto square = [&](const char* key) -> std::optional<Matrix> {
    if (!j.contains(key)) return std::nullopt;
    Matrix m = parse_matrix(j[key]);
    if (m.rows() != inst.n || m.cols() != inst.n)
      raise(ErrorCode::DimensionMismatch, std::string(key) + " must be " +
                                              std::to_string(inst.n) + "x" +
                                              std::to_string(inst.n));
    return m;
  };
  auto vec = [&](const char* key) -> std::optional<Vector> {
    if (!j.contains(key)) return std::nullopt;
    Vector v = parse_vector(j[key]);
    if (v.size() != inst.n)
      raise(ErrorCode::DimensionMismatch,
            std::string(key) + " must have " + std::to_string(inst.n) + " entries");
    return v;
  };
  inst.t = square("T");
  inst.s = square("S");
  inst.x = vec("x");
  inst.y = vec("y");

  if (j.contains("blocks")) {
    const Json& b = j["blocks"];
    if (!b.is_array() || b.empty()) parse_fail("\"blocks\" must be a non-empty array of rows");
    const size_t d = b.size();
    for (size_t i = 0; i < d; ++i) {
      if (!b[i].is_array() || b[i].size() != d)
        raise(ErrorCode::DimensionMismatch,
              "\"blocks\" row " + std::to_string(i + 1) + " must hold " + std::to_string(d) +
                  " matrices");
      std::vector<Matrix> row;
      for (size_t k = 0; k < d; ++k) {
        Matrix m = parse_matrix(b[i][k]);
        if (m.rows() != inst.n || m.cols() != inst.n)
          raise(ErrorCode::DimensionMismatch, "block (" + std::to_string(i + 1) + "," +
                                                  std::to_string(k + 1) + ") must be " +
                                                  std::to_string(inst.n) + "x" +
                                                  std::to_string(inst.n));
        row.push_back(std::move(m));
      }
      inst.blocks.push_back(std::move(row));
    }
    inst.d = static_cast<int>(d);
  }
  if (j.contains("d")) {
    if (!j["d"].is_number_integer()) parse_fail("\"d\" must be an integer");
    const int d = j["d"].get<int>();
    if (!inst.blocks.empty() && d != inst.d)
      raise(ErrorCode::DimensionMismatch, "\"d\" disagrees with the block layout");
    inst.d = d;
  }
  if (j.contains("check")) {
    if (!j["check"].is_string()) parse_fail("\"check\" must be a string");
    inst.check = j["check"].get<std::string>();
  }
  return inst;
}

Json to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.n;
  j["A"] = to_json(inst.a);
  if (inst.t) j["T"] = to_json(*inst.t);
  if (inst.s) j["S"] = to_json(*inst.s);
  if (inst.x) j["x"] = to_json(*inst.x);
  if (inst.y) j["y"] = to_json(*inst.y);
  if (!inst.blocks.empty()) {
    j["d"] = inst.d;
    Json rows = Json::array();
    for (const auto& row : inst.blocks) {
      Json r = Json::array();
      for (const auto& m : row) r.push_back(to_json(m));
      rows.push_back(std::move(r));
    }
    j["blocks"] = std::move(rows);
  }
  if (!inst.check.empty()) j["check"] = inst.check;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["relation"] = std::string(to_string(v.relation));
  j["holds"] = v.holds;
  j["margin"] = finite_or_null(v.margin);
  j["extremal"] = finite_or_null(v.extremal);
  j["reference"] = finite_or_null(v.reference);
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  if (v.witness_vector) j["witness_vector"] = to_json(*v.witness_vector);
  j["tolerances"] = {{"decision_tol", v.decision_tol}, {"scale", v.scale}};
  if (v.sweep_grid > 0) j["tolerances"]["sweep_grid"] = v.sweep_grid;
  j["method"] = v.method;
  if (v.cross_check_value) {
    j["cross_check"] = {{"value", finite_or_null(*v.cross_check_value)},
                        {"agrees", v.cross_check_agrees.value_or(false)}};
  }
  return j;
}

Json to_json(const CrosscheckResult& c) {
  Json j;
  j["evaluated"] = c.evaluated;
  j["passed"] = c.passed;
  j["beta_count"] = c.beta_count;
  j["misses"] = c.misses;
  j["worst"] = finite_or_null(c.worst);
  j["attaining_angles"] = c.attaining_angles;
  return j;
}

Json to_json(const BridgeReport& b) {
  Json j;
  j["t_normaloid"] = b.t_normaloid;
  j["t_square_null"] = b.t_square_null;
  j["s_normaloid"] = b.s_normaloid;
  j["bj"] = to_json(b.bj);
  j["wa"] = to_json(b.wa);
  if (b.norm_par) j["norm_parallel"] = to_json(*b.norm_par);
  if (b.wa_par) j["wa_parallel"] = to_json(*b.wa_par);
  j["conforms"] = b.conforms;
  return j;
}

Json to_json(const BlockReport& r) {
  Json j;
  j["check"] = r.check;
  j["passed"] = r.passed();
  j["min_slack"] = finite_or_null(r.min_slack());
  j["scale"] = r.scale;
  j["tol"] = r.tol;
  Json values = Json::object();
  for (const auto& [k, v] : r.values) values[k] = finite_or_null(v);
  j["values"] = std::move(values);
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"label", e.label},
                       {"lhs", finite_or_null(e.lhs)},
                       {"rhs", finite_or_null(e.rhs)},
                       {"slack", finite_or_null(e.slack)}});
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const SweepMeta& m) {
  return {{"grid", m.grid},
          {"refinements", m.refinements},
          {"evaluations", m.evaluations},
          {"grid_error_bound", m.grid_error_bound},
          {"error_bound", m.error_bound}};
}

Json to_json(const RangeProfile& p, bool with_samples) {
  Json j;
  j["omega"] = p.omega;
  j["crawford"] = p.crawford;
  j["sweep"] = to_json(p.meta);
  if (with_samples) {
    j["thetas"] = p.thetas;
    j["support"] = p.support;
    Json poly = Json::array();
    for (const auto& z : p.polygon) poly.push_back(to_json(z));
    j["polygon"] = std::move(poly);
  }
  return j;
}

std::string profile_csv(const RangeProfile& p) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "theta,support,boundary_re,boundary_im\n";
  const size_t k = p.thetas.size();
  for (size_t i = 0; i < k; ++i) {
    out << p.thetas[i] << ',' << p.support[i];
    if (i < p.polygon.size()) out << ',' << p.polygon[i].real() << ',' << p.polygon[i].imag();
    else out << ",,";
    out << '\n';
  }
  if (p.polygon.size() == k + 1 && k > 0)
    out << kTwoPi << ',' << p.support[0] << ',' << p.polygon[k].real() << ','
        << p.polygon[k].imag() << '\n';
  return out.str();
}

std::string profile_svg(const RangeProfile& p) {
  double extent = p.omega;
  for (const auto& z : p.polygon) extent = std::max(extent, std::abs(z));
  if (!(extent > 0)) extent = 1.0;
  const double half = 200.0;
  const double unit = 0.9 * half / extent;
  auto px = [&](double x) { return half + unit * x; };
  auto py = [&](double y) { return half - unit * y; };

  std::ostringstream out;
  out << std::setprecision(8);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
         "viewBox=\"0 0 400 400\">\n";
  out << "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  out << "<line x1=\"0\" y1=\"200\" x2=\"400\" y2=\"200\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
  out << "<line x1=\"200\" y1=\"0\" x2=\"200\" y2=\"400\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
  out << "<circle cx=\"200\" cy=\"200\" r=\"" << unit * p.omega
      << "\" fill=\"none\" stroke=\"#c33\" stroke-dasharray=\"4 3\"/>\n";
  if (!p.polygon.empty()) {
    out << "<polygon fill=\"#36c\" fill-opacity=\"0.25\" stroke=\"#36c\" points=\"";
    for (size_t i = 0; i < p.polygon.size(); ++i) {
      if (i) out << ' ';
      out << px(p.polygon[i].real()) << ',' << py(p.polygon[i].imag());
    }
    out << "\"/>\n";
  }
  out << "<text x=\"8\" y=\"18\" font-family=\"monospace\" font-size=\"12\">omega = " << p.omega
      << ", crawford = " << p.crawford << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

void write_profile(const RangeProfile& p, const std::string& path) {
  const std::string ext = lower_ext(path);
  std::string body;
  if (ext == "json") body = to_json(p, true).dump(2) + "\n";
  else if (ext == "csv") body = profile_csv(p);
  else if (ext == "svg") body = profile_svg(p);
  else parse_fail("profile path must end in .json, .csv or .svg: " + path);
  std::ofstream f(path);
  if (!f) parse_fail("cannot open " + path + " for writing");
  f << body;
}

}  // namespace semihilb
