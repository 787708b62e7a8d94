// SPDX-License-Identifier: MIT
#include "koebe/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "koebe/errors.hpp"
#include "koebe/fields.hpp"

namespace koebe {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kCapsFormat = "koebe-caps/1";
constexpr const char* kTransformFormat = "koebe-transform/1";

void require(bool ok, const std::string& msg) {
  if (!ok) throw parse_error(msg);
}

double number_at(const ordered_json& j, const std::string& where) {
  require(j.is_number(), where + " must be a number");
  const double v = j.get<double>();
  require(std::isfinite(v), where + " must be finite");
  return v;
}

ordered_json meta_json(const DocumentMeta& meta) {
  ordered_json m = ordered_json::object();
  if (!meta.name.empty()) m["name"] = meta.name;
  if (!meta.provenance.empty()) m["provenance"] = meta.provenance;
  if (meta.seed) m["seed"] = *meta.seed;
  if (meta.rapidity) m["rapidity"] = *meta.rapidity;
  if (meta.center_spec) m["center_spec"] = *meta.center_spec;
  return m;
}

DocumentMeta meta_from(const ordered_json& j) {
  DocumentMeta meta;
  if (!j.contains("metadata")) return meta;
  const ordered_json& m = j.at("metadata");
  require(m.is_object(), "metadata must be an object");
  if (m.contains("name")) {
    require(m.at("name").is_string(), "metadata.name must be a string");
    meta.name = m.at("name").get<std::string>();
  }
  if (m.contains("provenance")) {
    require(m.at("provenance").is_string(),
            "metadata.provenance must be a string");
    meta.provenance = m.at("provenance").get<std::string>();
  }
  if (m.contains("seed")) {
    require(m.at("seed").is_number_unsigned() || m.at("seed").is_number_integer(),
            "metadata.seed must be an integer");
    meta.seed = m.at("seed").get<std::uint64_t>();
  }
  if (m.contains("rapidity"))
    meta.rapidity = number_at(m.at("rapidity"), "metadata.rapidity");
  if (m.contains("center_spec")) {
    require(m.at("center_spec").is_string(),
            "metadata.center_spec must be a string");
    meta.center_spec = m.at("center_spec").get<std::string>();
  }
  return meta;
}

ordered_json cap_json(const hyp::SphericalCap& cap) {
  ordered_json c = ordered_json::object();
  ordered_json center = ordered_json::array();
  for (int k = 0; k < cap.center.size(); ++k)
    center.push_back(cap.center(k));
  c["center"] = std::move(center);
  c["radius"] = cap.radius;
  return c;
}

hyp::SphericalCap cap_from(const ordered_json& j, int dimension,
                           const std::string& where) {
  require(j.is_object(), where + " must be an object");
  require(j.contains("center") && j.contains("radius"),
          where + " needs center and radius");
  const ordered_json& cj = j.at("center");
  require(cj.is_array() && static_cast<int>(cj.size()) == dimension + 1,
          where + ".center must be an array of " +
              std::to_string(dimension + 1) + " numbers");
  Vec center(dimension + 1);
  for (int k = 0; k <= dimension; ++k)
    center(k) = number_at(cj.at(k), where + ".center");
  const double radius = number_at(j.at("radius"), where + ".radius");
  try {
    return hyp::SphericalCap::checked(std::move(center), radius);
  } catch (const error& e) {
    throw parse_error(where + ": " + e.what());
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

std::string format_of(const ordered_json& j) {
  require(j.is_object(), "document must be a JSON object");
  require(j.contains("format") && j.at("format").is_string(),
          "document needs a string \"format\" field");
  return j.at("format").get<std::string>();
}

// Restores <Mx, My> = <x, y> exactly enough for the strict internal check
// after a document was produced with slightly lossy arithmetic. One Newton
// step for X^T J X = J: X <- X (3I - J X^T J X) / 2; quadratic, so two
// steps cover anything the 1e-8 gate lets through.
Mat restore_form(Mat m) {
  const auto j_of = [](int n) {
    Vec d = Vec::Ones(n);
    d(n - 1) = -1.0;
    return Mat(d.asDiagonal());
  };
  const Mat J = j_of(static_cast<int>(m.rows()));
  for (int pass = 0; pass < 4; ++pass) {
    const Mat G = J * m.transpose() * J * m;
    const double err = (G - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
    if (err < 1e-12) break;
    m = m * (3.0 * Mat::Identity(m.rows(), m.cols()) - G) / 2.0;
  }
  return m;
}

} // namespace

// ---------------------------------------------------------------------------
// Cap documents

CapSystem CapsDocument::to_system() const {
  if (bare())
    throw parse_error("document carries no faces: not a full tangent system");
  if (dimension != 2)
    throw parse_error("full tangent systems live on S^2");
  Combinatorics combo =
      Combinatorics::from_faces(static_cast<int>(vertex_caps.size()), faces);
  if (static_cast<int>(face_caps.size()) != combo.n_faces())
    throw parse_error("face_caps count does not match the face list");
  return CapSystem{std::move(combo), vertex_caps, face_caps};
}

CapsDocument CapsDocument::of_system(const CapSystem& sys, DocumentMeta meta) {
  CapsDocument doc;
  doc.dimension = sys.sphere_dim();
  doc.vertex_caps = sys.vertex_caps;
  doc.face_caps = sys.face_caps;
  doc.faces = sys.combo.faces;
  doc.meta = std::move(meta);
  return doc;
}

CapsDocument CapsDocument::of_caps(std::vector<hyp::SphericalCap> caps,
                                   DocumentMeta meta) {
  if (caps.empty()) throw parse_error("a cap document needs at least one cap");
  CapsDocument doc;
  doc.dimension = caps.front().sphere_dim();
  doc.vertex_caps = std::move(caps);
  doc.meta = std::move(meta);
  return doc;
}

std::string to_json(const CapsDocument& doc) {
  ordered_json j = ordered_json::object();
  j["format"] = kCapsFormat;
  j["dimension"] = doc.dimension;
  j["metadata"] = meta_json(doc.meta);
  ordered_json vc = ordered_json::array();
  for (const auto& cap : doc.vertex_caps) vc.push_back(cap_json(cap));
  j["vertex_caps"] = std::move(vc);
  if (!doc.bare()) {
    ordered_json fc = ordered_json::array();
    for (const auto& cap : doc.face_caps) fc.push_back(cap_json(cap));
    j["face_caps"] = std::move(fc);
    ordered_json faces = ordered_json::array();
    for (const auto& cycle : doc.faces) {
      ordered_json f = ordered_json::array();
      for (int v : cycle) f.push_back(v);
      faces.push_back(std::move(f));
    }
    j["faces"] = std::move(faces);
  }
  return dump(j);
}

CapsDocument caps_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  require(format_of(j) == kCapsFormat,
          std::string("expected format \"") + kCapsFormat + "\"");

  CapsDocument doc;
  if (j.contains("dimension")) {
    require(j.at("dimension").is_number_integer(),
            "dimension must be an integer");
    doc.dimension = j.at("dimension").get<int>();
    require(doc.dimension >= 2, "dimension must be at least 2");
  }
  doc.meta = meta_from(j);

  require(j.contains("vertex_caps") && j.at("vertex_caps").is_array() &&
              !j.at("vertex_caps").empty(),
          "vertex_caps must be a non-empty array");
  int idx = 0;
  for (const auto& cj : j.at("vertex_caps"))
    doc.vertex_caps.push_back(
        cap_from(cj, doc.dimension, "vertex_caps[" + std::to_string(idx++) + "]"));

  const bool has_fc = j.contains("face_caps");
  const bool has_faces = j.contains("faces");
  require(has_fc == has_faces,
          "face_caps and faces must appear together or not at all");
  if (has_fc) {
    require(j.at("face_caps").is_array() && !j.at("face_caps").empty(),
            "face_caps must be a non-empty array");
    idx = 0;
    for (const auto& cj : j.at("face_caps"))
      doc.face_caps.push_back(
          cap_from(cj, doc.dimension, "face_caps[" + std::to_string(idx++) + "]"));
    require(j.at("faces").is_array() &&
                j.at("faces").size() == j.at("face_caps").size(),
            "faces must be an array matching face_caps");
    const int n = static_cast<int>(doc.vertex_caps.size());
    for (const auto& fj : j.at("faces")) {
      require(fj.is_array() && fj.size() >= 3,
              "each face must be a cycle of at least 3 vertex indices");
      std::vector<int> cycle;
      for (const auto& vj : fj) {
        require(vj.is_number_integer(), "face entries must be vertex indices");
        const int v = vj.get<int>();
        require(v >= 0 && v < n, "face vertex index out of range");
        cycle.push_back(v);
      }
      doc.faces.push_back(std::move(cycle));
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Transform documents

std::string to_json(const TransformDocument& doc) {
  ordered_json j = ordered_json::object();
  j["format"] = kTransformFormat;
  j["dimension"] = doc.map.sphere_dim();
  j["metadata"] = meta_json(doc.meta);
  ordered_json rows = ordered_json::array();
  const Mat& m = doc.map.m;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) rows.push_back(m(r, c));
  j["matrix"] = std::move(rows);
  return dump(j);
}

TransformDocument transform_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  require(format_of(j) == kTransformFormat,
          std::string("expected format \"") + kTransformFormat + "\"");
  require(j.contains("matrix") && j.at("matrix").is_array(),
          "document needs a \"matrix\" array");
  const auto& mj = j.at("matrix");

  int n = 0;
  if (j.contains("dimension")) {
    require(j.at("dimension").is_number_integer(),
            "dimension must be an integer");
    n = j.at("dimension").get<int>() + 2;
  } else {
    n = static_cast<int>(std::llround(std::sqrt(double(mj.size()))));
  }
  require(n >= 4 && static_cast<int>(mj.size()) == n * n,
          "matrix must hold (dimension + 2)^2 row-major entries");

  Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) = number_at(mj.at(r * n + c), "matrix");

  Vec d = Vec::Ones(n);
  d(n - 1) = -1.0;
  const Mat J = d.asDiagonal();
  const double err = (m.transpose() * J * m - J).cwiseAbs().maxCoeff();
  require(err <= 1e-8,
          "matrix does not preserve the Minkowski form (deviation " +
              double_text(err) + ", allowed 1e-08)");
  require(m(n - 1, n - 1) > 0.0, "matrix must be orthochronous");
  try {
    return TransformDocument{hyp::LorentzMap::checked(restore_form(std::move(m))),
                             meta_from(j)};
  } catch (const error& e) {
    throw parse_error(std::string("transform rejected: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Files

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof())
    throw parse_error("error while reading file: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw parse_error("cannot write file: " + path);
  out << text;
  out.flush();
  if (!out.good()) throw parse_error("error while writing file: " + path);
}

// ---------------------------------------------------------------------------
// OBJ / CSV

std::string double_text(double value) {
  if (!std::isfinite(value))
    throw parse_error("non-finite number in output");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_obj(const Polyhedron& poly, const Combinatorics& combo) {
  std::ostringstream out;
  out << "# tangent polyhedron reconstructed from a cap system\n";
  out << "o polyhedron\n";
  for (const Vec& v : poly.vertices)
    out << "v " << double_text(v(0)) << ' ' << double_text(v(1)) << ' '
        << double_text(v(2)) << '\n';
  for (const auto& cycle : combo.faces) {
    out << 'f';
    for (int v : cycle) out << ' ' << v + 1;
    out << '\n';
  }
  out << "o tangency_points\n";
  const int base = static_cast<int>(poly.vertices.size());
  for (const Vec& t : poly.edge_tangency)
    out << "v " << double_text(t(0)) << ' ' << double_text(t(1)) << ' '
        << double_text(t(2)) << '\n';
  if (!poly.edge_tangency.empty()) {
    out << 'p';
    for (int k = 0; k < static_cast<int>(poly.edge_tangency.size()); ++k)
      out << ' ' << base + k + 1;
    out << '\n';
  }
  return out.str();
}

std::string trace_csv(const CapSystem& sys, const CenterSpec& spec,
                      const std::vector<IntegralCurve>& curves) {
  std::ostringstream out;
  const int dim = sys.sphere_dim() + 1;
  out << "curve,arc";
  for (int k = 0; k < dim; ++k) out << ",y" << k;
  out << ",residual,endpoint,plane\n";
  for (int c = 0; c < static_cast<int>(curves.size()); ++c) {
    const IntegralCurve& curve = curves[c];
    const std::string tail = to_string(curve.endpoint) + "," +
                             std::to_string(curve.plane_index);
    for (const auto& [arc, p] : curve.samples) {
      out << c << ',' << double_text(arc);
      const Vec y = hyp::ball_chart(p);
      for (int k = 0; k < dim; ++k) out << ',' << double_text(y(k));
      double residual = std::numeric_limits<double>::quiet_NaN();
      try {
        residual = lift_field(spec, sys, p).residual;
      } catch (const error&) {
        // Sample pinned on the domain boundary: leave the residual blank.
      }
      out << ',';
      if (std::isfinite(residual)) out << double_text(residual);
      out << ',' << tail << '\n';
    }
  }
  return out.str();
}

} // namespace koebe
