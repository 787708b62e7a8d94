// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace koebe {

// Base class for everything thrown by this library.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Geometric invariant violated: non-unit pole, point off the hyperboloid,
// cap radius outside (0, pi/2), transformed cap flipping past a hemisphere,
// argument outside a formula's domain.
class geometry_error : public error {
public:
  using error::error;
};

// Face lists that do not describe a closed polyhedral surface
// (edge not shared by exactly two faces, degenerate cycle, Euler count off).
class combinatorics_error : public error {
public:
  using error::error;
};

// Malformed input document (JSON shape, format tag, array sizes).
class parse_error : public error {
public:
  using error::error;
};

// The solvability hypothesis of the weighted-cap existence result fails
// for the given caps/weights; solving is refused rather than attempted.
class hypothesis_error : public error {
public:
  using error::error;
};

// Operation requested on a system outside its defined scope
// (e.g. a circumcenter-based center on a non-simplicial polyhedron).
class not_supported_error : public error {
public:
  using error::error;
};

} // namespace koebe
