// Copyright 2026 The Hyra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef HYRA_SETREP_HPP_
#define HYRA_SETREP_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "hyra/ir.hpp"

namespace hyra {

// Axis-aligned box lo <= x <= hi.
struct Box {
  Vector lo;
  Vector hi;

  Box() = default;
  Box(Vector lo_, Vector hi_);
  static Box from_intervals(const std::vector<Interval>& intervals);
  static Box point(const Vector& x);

  std::size_t dim() const { return static_cast<std::size_t>(lo.size()); }
  Vector center() const { return 0.5 * (lo + hi); }
  Vector radius() const { return 0.5 * (hi - lo); }
  Interval interval(std::size_t i) const;
  std::vector<Interval> intervals() const;
  bool contains(const Vector& x, double slack = 0.0) const;
  bool contains(const Box& other, double slack = 0.0) const;
  bool intersects(const Box& other) const;
  // Largest absolute coordinate over the box.
  double max_abs() const;
  Box bloated(double r) const;

  bool operator==(const Box& other) const;
};

Box hull(const Box& a, const Box& b);

// center + generators * [-1, 1]^p
struct Zonotope {
  Vector center;
  Matrix generators;  // n x p

  Zonotope() = default;
  Zonotope(Vector c, Matrix g);
  static Zonotope from_box(const Box& box);
  static Zonotope point(const Vector& x);

  std::size_t dim() const { return static_cast<std::size_t>(center.size()); }
  std::size_t num_generators() const { return static_cast<std::size_t>(generators.cols()); }
};

// directions * x <= offsets
struct TemplatePolytope {
  Matrix directions;  // k x n
  Vector offsets;

  // The 2n axis directions followed by the 2n(n-1) octagonal ones (+-e_i +- e_j, i < j).
  static Matrix box_octagon_directions(std::size_t n);
  static TemplatePolytope enclose(const Zonotope& z, const Matrix& directions);

  bool contains(const Vector& x, double slack = 0.0) const;
};

// e^{A t} by scaling and squaring with a truncated Taylor series.
// Throws Error(Overflow) when the result is not finite.
Matrix matrix_exponential(const Matrix& A, double t);

Zonotope linear_map(const Matrix& M, const Zonotope& z);
Zonotope translate(const Zonotope& z, const Vector& offset);
Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b);

// Zonotope enclosing the convex hull of z and M z + offset.
Zonotope enclose_hull(const Zonotope& z, const Matrix& M, const Vector& offset);
// Zonotope enclosing the convex hull of a and b; the generator lists are
// zero-padded to a common length.
Zonotope enclose_union(const Zonotope& a, const Zonotope& b);

double support(const Zonotope& z, const Vector& d);
double support(const Box& b, const Vector& d);

Box box_hull(const Zonotope& z);

// Girard reduction: when z has more than p_max generators, keeps the
// p_max - n largest ones and replaces the rest by their box hull.
Zonotope reduce_order(const Zonotope& z, std::size_t p_max);

// Tightens the box against every constraint of `cond` (strict relations are
// closed). Returns nullopt when some interval becomes empty.
std::optional<Box> intersect_condition(const Box& box, const Condition& cond);

// Zonotope containing z intersected with every constraint of `cond`
// (equalities as two halfspaces). Each generator factor xi_i in [-1, 1] is
// narrowed to the values some point of the intersection can take along that
// coordinate alone; the center and generator are rescaled to match. Returns
// nullopt when the intersection is provably empty.
std::optional<Zonotope> tighten_factors(const Zonotope& z, const Condition& cond);

// Exact box hull of z intersected with the hyperplane a.x = b, or nullopt
// when they are disjoint. Each bound is a one-constraint LP over the
// generator coefficients, solved through its piecewise-linear dual.
std::optional<Box> hyperplane_hull(const Zonotope& z, const Vector& a, double b);
// Zonotope inside the hyperplane a.x = b that contains z intersected with it:
// c + l (b - a.c) with generators (I - l a^T) G. Each l_j is the weighted
// median of G_ji / (G^T a)_i, which minimizes the radius of coordinate j.
Zonotope hyperplane_enclosure(const Zonotope& z, const Vector& a, double b);

}  // namespace hyra

#endif  // HYRA_SETREP_HPP_
