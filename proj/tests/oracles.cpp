// SPDX-License-Identifier: MIT
#include "oracles.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "koebe/errors.hpp"

namespace oracle {
namespace {

using Mat = Eigen::MatrixXd;

Vec cross3(const Vec& a, const Vec& b) {
  Vec c(3);
  c << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
      a(0) * b(1) - a(1) * b(0);
  return c;
}

double tri_area(const Vec& a, const Vec& b, const Vec& c) {
  return 0.5 * cross3(b - a, c - a).norm();
}

} // namespace

Vec vertex_mean(const Polyhedron& poly) {
  Vec sum = Vec::Zero(3);
  for (const Vec& v : poly.vertices) sum += v;
  return sum / static_cast<double>(poly.vertices.size());
}

std::pair<Vec, double> wire_center(const Polyhedron& poly,
                                   const Combinatorics& combo) {
  Vec sum = Vec::Zero(3);
  double total = 0.0;
  for (const auto& e : combo.edges) {
    const Vec& a = poly.vertices[e[0]];
    const Vec& b = poly.vertices[e[1]];
    const double len = (b - a).norm();
    sum += len * 0.5 * (a + b);
    total += len;
  }
  return {sum / total, total};
}

std::pair<Vec, double> surface_center(const Polyhedron& poly,
                                      const Combinatorics& combo) {
  Vec sum = Vec::Zero(3);
  double total = 0.0;
  for (const auto& cycle : combo.faces) {
    const Vec& a = poly.vertices[cycle[0]];
    for (std::size_t k = 1; k + 1 < cycle.size(); ++k) {
      const Vec& b = poly.vertices[cycle[k]];
      const Vec& c = poly.vertices[cycle[k + 1]];
      const double area = tri_area(a, b, c);
      sum += area * (a + b + c) / 3.0;
      total += area;
    }
  }
  return {sum / total, total};
}

std::pair<Vec, double> solid_center(const Polyhedron& poly,
                                    const Combinatorics& combo) {
  Vec sum = Vec::Zero(3);
  double total = 0.0;
  for (const auto& cycle : combo.faces) {
    const Vec& a = poly.vertices[cycle[0]];
    for (std::size_t k = 1; k + 1 < cycle.size(); ++k) {
      const Vec& b = poly.vertices[cycle[k]];
      const Vec& c = poly.vertices[cycle[k + 1]];
      const double vol = a.dot(cross3(b, c)) / 6.0; // signed, apex at origin
      sum += vol * (a + b + c) / 4.0;
      total += vol;
    }
  }
  return {sum / total, total};
}

double cayley_menger_volume(double t_a, double t_b, double t_c) {
  const double oa2 = 1.0 + t_a * t_a;
  const double ob2 = 1.0 + t_b * t_b;
  const double oc2 = 1.0 + t_c * t_c;
  const double ab2 = (t_a + t_b) * (t_a + t_b);
  const double ac2 = (t_a + t_c) * (t_a + t_c);
  const double bc2 = (t_b + t_c) * (t_b + t_c);
  Mat m(5, 5);
  m << 0, 1, 1, 1, 1,
       1, 0, oa2, ob2, oc2,
       1, oa2, 0, ab2, ac2,
       1, ob2, ab2, 0, bc2,
       1, oc2, ac2, bc2, 0;
  const double det = m.determinant();
  if (det <= 0.0)
    throw koebe::geometry_error("distances admit no tetrahedron");
  return std::sqrt(det / 288.0);
}

Vec equidistant_point(const std::vector<Vec>& points) {
  Mat a(static_cast<int>(points.size()), 3);
  Eigen::VectorXd rhs(static_cast<int>(points.size()));
  for (int r = 0; r < static_cast<int>(points.size()); ++r) {
    a.row(r) = 2.0 * points[r].transpose();
    rhs(r) = points[r].squaredNorm();
  }
  return a.colPivHouseholderQr().solve(rhs);
}

namespace {

bool covers(const SimpleBall& ball, const std::vector<Vec>& points,
            double slack) {
  for (const Vec& p : points)
    if ((p - ball.center).norm() > ball.radius + slack) return false;
  return true;
}

SimpleBall ball_of_two(const Vec& a, const Vec& b) {
  return {0.5 * (a + b), 0.5 * (b - a).norm()};
}

// Circumcircle of a triangle, inside its own plane: center = a + s u + t v
// with equal distances to a, b, c, giving a 2x2 Gram system.
bool ball_of_three(const Vec& a, const Vec& b, const Vec& c, SimpleBall& out) {
  const Vec u = b - a, v = c - a;
  Eigen::Matrix2d g;
  g << u.dot(u), u.dot(v), u.dot(v), v.dot(v);
  if (std::abs(g.determinant()) < 1e-20) return false;
  const Eigen::Vector2d rhs(0.5 * u.dot(u), 0.5 * v.dot(v));
  const Eigen::Vector2d st = g.colPivHouseholderQr().solve(rhs);
  const Vec center = a + st(0) * u + st(1) * v;
  out = {center, (center - a).norm()};
  return true;
}

bool ball_of_four(const Vec& a, const Vec& b, const Vec& c, const Vec& d,
                  SimpleBall& out) {
  Mat m(3, 3);
  m.row(0) = 2.0 * (b - a).transpose();
  m.row(1) = 2.0 * (c - a).transpose();
  m.row(2) = 2.0 * (d - a).transpose();
  if (std::abs(m.determinant()) < 1e-12) return false;
  Vec rhs(3);
  rhs << b.squaredNorm() - a.squaredNorm(), c.squaredNorm() - a.squaredNorm(),
      d.squaredNorm() - a.squaredNorm();
  const Vec center = m.colPivHouseholderQr().solve(rhs);
  out = {center, (center - a).norm()};
  return true;
}

} // namespace

SimpleBall brute_force_ball(const std::vector<Vec>& points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw koebe::geometry_error("no points");
  SimpleBall best{points[0], 0.0};
  if (n == 1) return best;
  best.radius = std::numeric_limits<double>::infinity();
  const double slack = 1e-10;
  const auto consider = [&](const SimpleBall& cand) {
    if (cand.radius < best.radius && covers(cand, points, slack)) best = cand;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      consider(ball_of_two(points[i], points[j]));
      for (int k = j + 1; k < n; ++k) {
        SimpleBall cand;
        if (ball_of_three(points[i], points[j], points[k], cand))
          consider(cand);
        for (int l = k + 1; l < n; ++l)
          if (ball_of_four(points[i], points[j], points[k], points[l], cand))
            consider(cand);
      }
    }
  return best;
}

} // namespace oracle
