// SPDX-License-Identifier: MIT

#include "koebe/centers.hpp"

#include <cmath>
#include <sstream>

namespace koebe {

// --- CenterSpec -------------------------------------------------------------

CenterSpec CenterSpec::parse(const std::string& text) {
  CenterSpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);

  auto want_arg = [&](const char* why) {
    if (arg.empty())
      throw parse_error(std::string(head) + " needs an argument: " + why);
    try {
      size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw parse_error("bad numeric argument in center spec: " + text);
    }
  };
  auto no_arg = [&] {
    if (colon != std::string::npos)
      throw parse_error(head + " takes no argument");
  };

  if (head == "cc") { no_arg(); spec.kind = CenterKind::CC; }
  else if (head == "ic") { no_arg(); spec.kind = CenterKind::IC; }
  else if (head == "cm0") { no_arg(); spec.kind = CenterKind::CM0; }
  else if (head == "cm1") { no_arg(); spec.kind = CenterKind::CM1; }
  else if (head == "cm2") { no_arg(); spec.kind = CenterKind::CM2; }
  else if (head == "cm3") { no_arg(); spec.kind = CenterKind::CM3; }
  else if (head == "ccm") { no_arg(); spec.kind = CenterKind::CCM; }
  else if (head == "tangency") { no_arg(); spec.kind = CenterKind::Tangency; }
  else if (head == "euler") {
    spec.kind = CenterKind::Euler;
    spec.lambda = want_arg("blend factor in [0,1)");
    if (!(spec.lambda >= 0.0 && spec.lambda < 1.0))
      throw parse_error("euler blend must lie in [0,1)");
  } else if (head == "sec") {
    no_arg();
    spec.kind = CenterKind::WeightedCaps;
    spec.family = WeightFamily::Sec;
  } else if (head == "tan") {
    no_arg();
    spec.kind = CenterKind::WeightedCaps;
    spec.family = WeightFamily::Tan;
  } else if (head == "powsec") {
    spec.kind = CenterKind::WeightedCaps;
    spec.family = WeightFamily::PowSec;
    spec.power = want_arg("exponent");
    if (!(spec.power > 0.0))
      throw parse_error("powsec exponent must be positive");
  } else {
    throw parse_error("unknown center spec: " + text);
  }
  return spec;
}

std::string CenterSpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case CenterKind::CC: return "cc";
    case CenterKind::IC: return "ic";
    case CenterKind::CM0: return "cm0";
    case CenterKind::CM1: return "cm1";
    case CenterKind::CM2: return "cm2";
    case CenterKind::CM3: return "cm3";
    case CenterKind::CCM: return "ccm";
    case CenterKind::Tangency: return "tangency";
    case CenterKind::Euler: os << "euler:" << lambda; return os.str();
    case CenterKind::WeightedCaps:
      switch (family) {
        case WeightFamily::Sec: return "sec";
        case WeightFamily::Tan: return "tan";
        case WeightFamily::PowSec: os << "powsec:" << power; return os.str();
      }
  }
  return "?";
}

// --- mass centers -------------------------------------------------------

namespace {

double tangent_length(const CapSystem& sys, int i) {
  return std::tan(sys.vertex_caps[i].radius);
}

Vec vertex_point(const CapSystem& sys, int i) {
  return sys.vertex_caps[i].center / std::cos(sys.vertex_caps[i].radius);
}

CenterValue finish(std::vector<Vec> terms, double normalizer) {
  CenterValue out;
  out.normalizer = normalizer;
  out.point = Vec::Zero(3);
  for (const Vec& t : terms) out.point += t;
  out.point /= normalizer;
  out.terms = std::move(terms);
  return out;
}

// Centroid-direction numerator shared by the surface and solid mass
// centers: for the kite of incidence (i, j) it is
//   (2t^2 + s^2) * incenter + (t^2 + 2s^2) * vertex, all over t^2 + s^2,
// with t the tangent length at i and s the sine of face radius j.
Vec kite_centroid_numerator(const CapSystem& sys, int i, int j) {
  const double t2 = std::pow(tangent_length(sys, i), 2);
  const double s = std::sin(sys.face_caps[j].radius);
  const double s2 = s * s;
  const Vec incenter = sys.face_caps[j].center * std::cos(sys.face_caps[j].radius);
  return ((2.0 * t2 + s2) * incenter + (t2 + 2.0 * s2) * vertex_point(sys, i)) /
         (t2 + s2);
}

} // namespace

CenterValue cm0(const CapSystem& sys) {
  std::vector<Vec> terms;
  for (int i = 0; i < sys.n_vertices(); ++i) terms.push_back(vertex_point(sys, i));
  return finish(std::move(terms), static_cast<double>(sys.n_vertices()));
}

CenterValue cm1(const CapSystem& sys) {
  std::vector<Vec> terms;
  double total_length = 0.0;
  for (const auto& e : sys.combo.edges) {
    const double len = tangent_length(sys, e[0]) + tangent_length(sys, e[1]);
    total_length += len;
    terms.push_back(len * (vertex_point(sys, e[0]) + vertex_point(sys, e[1])));
  }
  return finish(std::move(terms), 2.0 * total_length);
}

CenterValue cm2(const CapSystem& sys) {
  std::vector<Vec> terms;
  double area = 0.0;
  for (int j = 0; j < sys.combo.n_faces(); ++j) {
    const double s = std::sin(sys.face_caps[j].radius);
    for (int i : sys.combo.faces[j]) {
      const double w = tangent_length(sys, i) * s;
      area += w;
      terms.push_back(w * kite_centroid_numerator(sys, i, j));
    }
  }
  return finish(std::move(terms), 3.0 * area);
}

CenterValue cm3(const CapSystem& sys) {
  std::vector<Vec> terms;
  double three_vol = 0.0;
  for (int j = 0; j < sys.combo.n_faces(); ++j) {
    const double s = std::sin(sys.face_caps[j].radius);
    const double c = std::cos(sys.face_caps[j].radius);
    for (int i : sys.combo.faces[j]) {
      const double w = tangent_length(sys, i) * s * c;
      three_vol += w;
      terms.push_back(w * kite_centroid_numerator(sys, i, j));
    }
  }
  return finish(std::move(terms), 4.0 * three_vol);
}

// --- circumcentric machinery ----------------------------------------------

double simplex_volume(double t_a, double t_b, double t_c) {
  if (!(t_a > 0.0 && t_b > 0.0 && t_c > 0.0))
    throw geometry_error("tangent lengths must be positive");
  const double radicand = t_a * t_b * t_c * (t_a + t_b + t_c - t_a * t_b * t_c);
  if (!(radicand > 0.0))
    throw geometry_error("tangent lengths violate the face angle bound "
                         "(t_a + t_b + t_c must exceed t_a t_b t_c)");
  return std::sqrt(radicand) / 3.0;
}

namespace {

std::array<int, 3> triangle_face(const CapSystem& sys, int face) {
  if (face < 0 || face >= sys.combo.n_faces())
    throw combinatorics_error("face index out of range");
  const auto& f = sys.combo.faces[face];
  if (f.size() != 3)
    throw not_supported_error("cone circumcenters need triangle faces");
  return {f[0], f[1], f[2]};
}

} // namespace

Vec cone_circumcenter(const CapSystem& sys, int face) {
  const auto f = triangle_face(sys, face);
  Eigen::Matrix3d gram;
  Eigen::Vector3d rhs;
  for (int r = 0; r < 3; ++r) {
    const double ar = sys.vertex_caps[f[r]].radius;
    rhs(r) = 1.0 / (2.0 * std::cos(ar));
    for (int s = 0; s < 3; ++s)
      gram(r, s) = r == s
                       ? 1.0
                       : std::cos(ar + sys.vertex_caps[f[s]].radius);
  }

  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(2) <= 0.0 ||
      svd.singularValues()(0) / svd.singularValues()(2) > 1e12)
    throw geometry_error("degenerate cone: cap-center Gram matrix is "
                         "numerically singular");
  const Eigen::Vector3d coeff = svd.solve(rhs);

  Vec p = Vec::Zero(3);
  for (int s = 0; s < 3; ++s) p += coeff(s) * sys.vertex_caps[f[s]].center;
  return p;
}

Vec cone_circumcenter_closed_form(const CapSystem& sys, int face) {
  const auto f = triangle_face(sys, face);
  const double t[3] = {tangent_length(sys, f[0]), tangent_length(sys, f[1]),
                       tangent_length(sys, f[2])};
  const double denom_core = t[0] + t[1] + t[2] - t[0] * t[1] * t[2];

  Vec p = Vec::Zero(3);
  for (int s = 0; s < 3; ++s) {
    const double ta = t[s], tb = t[(s + 1) % 3], tc = t[(s + 2) % 3];
    const double num =
        (tb + tc) * ((tb + tc) * ta * ta +
                     (2.0 * tb * tb * tc * tc + tb * tb + tc * tc) * ta -
                     tb * tc * (tb + tc));
    const double coeff = num / (4.0 * ta * tb * tc * denom_core);
    p += coeff * sys.vertex_caps[f[s]].center;
  }
  return p;
}

CenterValue ccm(const CapSystem& sys) {
  if (!sys.combo.simplicial())
    throw not_supported_error("circumcenter of mass needs triangle faces");
  std::vector<Vec> terms;
  double total = 0.0;
  for (int j = 0; j < sys.combo.n_faces(); ++j) {
    const auto& f = sys.combo.faces[j];
    const double m = simplex_volume(tangent_length(sys, f[0]),
                                    tangent_length(sys, f[1]),
                                    tangent_length(sys, f[2]));
    total += m;
    terms.push_back(m * cone_circumcenter(sys, j));
  }
  return finish(std::move(terms), total);
}

CenterValue euler_point(const CapSystem& sys, double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw not_supported_error("euler blend must lie in [0,1); the solid mass "
                              "center alone has no centering guarantee");
  const CenterValue a = cm3(sys);
  const CenterValue b = ccm(sys);
  CenterValue out;
  out.point = lambda * a.point + (1.0 - lambda) * b.point;
  out.normalizer = lambda * a.normalizer + (1.0 - lambda) * b.normalizer;
  return out;
}

CenterValue tangency_barycenter(const CapSystem& sys) {
  std::vector<Vec> terms = edge_tangency_points(sys);
  return finish(std::move(terms), static_cast<double>(sys.combo.n_edges()));
}

// --- dispatch ---------------------------------------------------------------

CenterValue evaluate_center(const CapSystem& sys, const CenterSpec& spec) {
  switch (spec.kind) {
    case CenterKind::CM0: return cm0(sys);
    case CenterKind::CM1: return cm1(sys);
    case CenterKind::CM2: return cm2(sys);
    case CenterKind::CM3: return cm3(sys);
    case CenterKind::CCM: return ccm(sys);
    case CenterKind::Euler: return euler_point(sys, spec.lambda);
    case CenterKind::Tangency: return tangency_barycenter(sys);
    case CenterKind::CC: {
      const auto cert = cc_certificate(sys);
      CenterValue out;
      out.point = min_norm_point([&] {
        std::vector<Vec> pts;
        for (int i : cert.tied) pts.push_back(sys.vertex_caps[i].center);
        return pts;
      }());
      out.normalizer = static_cast<double>(cert.tied.size());
      return out;
    }
    case CenterKind::IC: {
      const auto cert = ic_certificate(sys);
      CenterValue out;
      out.point = min_norm_point([&] {
        std::vector<Vec> pts;
        for (int j : cert.tied) pts.push_back(sys.face_caps[j].center);
        return pts;
      }());
      out.normalizer = static_cast<double>(cert.tied.size());
      return out;
    }
    case CenterKind::WeightedCaps:
      throw not_supported_error(
          "weighted-caps functionals act on plain cap collections; use the "
          "weighted cap field interface");
  }
  throw parse_error("unknown center kind");
}

} // namespace koebe
