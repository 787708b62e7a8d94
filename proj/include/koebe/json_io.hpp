// SPDX-License-Identifier: MIT
//
// Document formats. Cap systems travel as "koebe-caps/1" JSON, centering
// transformations as "koebe-transform/1". Serialization is canonical:
// fixed key order, two-space indent, shortest round-tripping number text,
// trailing newline — so write -> read -> write reproduces a file byte for
// byte. Meshes leave as Wavefront OBJ, traced curves and batch results as
// CSV.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "koebe/solver.hpp"

namespace koebe {

// Provenance block carried alongside a document. Absent fields stay absent
// on write; unknown fields in an incoming document are ignored.
struct DocumentMeta {
  std::string name;                       // "tetrahedron", "cube", ...
  std::string provenance;                 // "canonical", "random", ...
  std::optional<std::uint64_t> seed;      // RNG seed that produced it
  std::optional<double> rapidity;         // sampling bound, when random
  std::optional<std::string> center_spec; // functional a transform centers
};

// A "koebe-caps/1" document: either a full tangent cap system (vertex and
// face caps plus the face cycles tying them together) or a bare cap
// collection on S^d (weighted centering input; no faces, any d >= 2).
struct CapsDocument {
  int dimension = 2;
  std::vector<hyp::SphericalCap> vertex_caps;
  std::vector<hyp::SphericalCap> face_caps;
  std::vector<std::vector<int>> faces;
  DocumentMeta meta;

  bool bare() const { return faces.empty(); }

  // Full documents only (d must be 2): rebuilds combinatorics from the face
  // cycles. Throws combinatorics_error / parse_error; geometric validation
  // is validate()'s job, not performed here.
  CapSystem to_system() const;

  static CapsDocument of_system(const CapSystem& sys, DocumentMeta meta);
  static CapsDocument of_caps(std::vector<hyp::SphericalCap> caps,
                              DocumentMeta meta);
};

std::string to_json(const CapsDocument& doc);
// Throws parse_error on malformed text, wrong format tag, bad shapes, or
// cap data outside the representable range.
CapsDocument caps_from_json(const std::string& text);

// A "koebe-transform/1" document: one (d+2) x (d+2) matrix, row-major.
struct TransformDocument {
  hyp::LorentzMap map = hyp::LorentzMap::identity(2);
  DocumentMeta meta;
};

std::string to_json(const TransformDocument& doc);
// Checks the Minkowski-form property to 1e-8 on load (parse_error beyond
// that); mild rounding below it is repaired by a form-restoring iteration.
TransformDocument transform_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Files

// Both throw parse_error when the file cannot be read or written.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// ---------------------------------------------------------------------------
// Mesh and CSV output

// Wavefront OBJ. Object "polyhedron" holds the vertices and the faces in
// the document's cycle order; object "tangency_points" appends one vertex
// per edge (the point where the edge touches the sphere) and exposes them
// as point records, so viewers show them without affecting the surface.
std::string to_obj(const Polyhedron& poly, const Combinatorics& combo);

// One row per retained sample:
// curve,arc,y0,...,y{d-? },residual,endpoint,plane
// The endpoint class and plane index of a curve repeat on each of its rows.
// Residuals are recomputed from the field at each sample.
std::string trace_csv(const CapSystem& sys, const CenterSpec& spec,
                      const std::vector<IntegralCurve>& curves);

// Minimal CSV quoting: wraps a value in quotes when it contains a comma,
// quote, or newline, doubling embedded quotes.
std::string csv_escape(const std::string& value);

// Shortest text that parses back to exactly this double ("1e999" never
// appears; non-finite values are an error in every document this library
// writes).
std::string double_text(double value);

} // namespace koebe
