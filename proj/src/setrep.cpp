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


#include "hyra/setrep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyra/error.hpp"

namespace hyra {

namespace {

void check_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": dimension " +
                                                  std::to_string(a) + " vs " + std::to_string(b));
}

double induced_norm1(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  return M.cwiseAbs().colwise().sum().maxCoeff();
}

// Tightens `box` against a.x <= b. Returns false when the box becomes empty.
bool tighten(Box& box, const Vector& a, double b) {
  const Eigen::Index n = a.size();
  Vector low(n);
  for (Eigen::Index j = 0; j < n; ++j)
    low(j) = a(j) > 0 ? a(j) * box.lo(j) : (a(j) < 0 ? a(j) * box.hi(j) : 0.0);
  const double total = low.sum();
  const double scale = 1.0 + std::abs(b) + low.cwiseAbs().sum();
  if (total > b + 1e-12 * scale) return false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    const double rest = total - low(i);
    const double limit = (b - rest) / a(i);
    if (a(i) > 0) {
      box.hi(i) = std::min(box.hi(i), limit);
    } else {
      box.lo(i) = std::max(box.lo(i), limit);
    }
    if (box.lo(i) > box.hi(i)) {
      if (box.lo(i) - box.hi(i) > 1e-12 * (1.0 + std::abs(box.lo(i)))) return false;
      box.lo(i) = box.hi(i) = 0.5 * (box.lo(i) + box.hi(i));
    }
  }
  return true;
}

}  // namespace

Box::Box(Vector lo_, Vector hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  check_dims(static_cast<std::size_t>(lo.size()), static_cast<std::size_t>(hi.size()), "box");
}

Box Box::from_intervals(const std::vector<Interval>& intervals) {
  const auto n = static_cast<Eigen::Index>(intervals.size());
  Vector lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lo(i) = intervals[static_cast<std::size_t>(i)].lo;
    hi(i) = intervals[static_cast<std::size_t>(i)].hi;
  }
  return Box(lo, hi);
}

Zonotope hyperplane_enclosure(const Zonotope& z, const Vector& a, double b) {
  check_dims(z.dim(), static_cast<std::size_t>(a.size()), "hyperplane_enclosure");
  const Vector h = z.generators.transpose() * a;
  Vector lambda = Vector::Zero(z.dim());
  std::vector<std::pair<double, double>> ratios;  // (g/h, |h|)
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    ratios.clear();
    double total = 0.0;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
      if (h(i) == 0.0) continue;
      ratios.emplace_back(z.generators(j, i) / h(i), std::abs(h(i)));
      total += std::abs(h(i));
    }
    if (ratios.empty()) {
      lambda(j) = a(j) / a.squaredNorm();
      continue;
    }
    std::sort(ratios.begin(), ratios.end());
    double acc = 0.0;
    for (const auto& [r, w] : ratios) {
      acc += w;
      if (acc >= 0.5 * total) {
        lambda(j) = r;
        break;
      }
    }
  }
  const Vector c = z.center + lambda * (b - a.dot(z.center));
  Matrix g = z.generators - lambda * h.transpose();
  return Zonotope(c, g);
}

Box Box::point(const Vector& x) { return Box(x, x); }

Interval Box::interval(std::size_t i) const {
  const auto k = static_cast<Eigen::Index>(i);
  return {lo(k), hi(k)};
}

std::vector<Interval> Box::intervals() const {
  std::vector<Interval> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(interval(i));
  return out;
}

bool Box::contains(const Vector& x, double slack) const {
  if (x.size() != lo.size()) return false;
  return ((lo.array() - slack) <= x.array()).all() && (x.array() <= (hi.array() + slack)).all();
}

bool Box::contains(const Box& other, double slack) const {
  if (other.lo.size() != lo.size()) return false;
  return ((lo.array() - slack) <= other.lo.array()).all() &&
         (other.hi.array() <= (hi.array() + slack)).all();
}

bool Box::intersects(const Box& other) const {
  if (other.lo.size() != lo.size()) return false;
  return (lo.array() <= other.hi.array()).all() && (other.lo.array() <= hi.array()).all();
}

double Box::max_abs() const {
  if (lo.size() == 0) return 0.0;
  return std::max(lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff());
}

Box Box::bloated(double r) const {
  return Box(lo.array() - r, hi.array() + r);
}

bool Box::operator==(const Box& other) const {
  return lo.size() == other.lo.size() && lo == other.lo && hi == other.hi;
}

Box hull(const Box& a, const Box& b) {
  check_dims(a.dim(), b.dim(), "hull");
  return Box(a.lo.cwiseMin(b.lo), a.hi.cwiseMax(b.hi));
}

Zonotope::Zonotope(Vector c, Matrix g) : center(std::move(c)), generators(std::move(g)) {
  if (generators.cols() > 0)
    check_dims(static_cast<std::size_t>(center.size()),
               static_cast<std::size_t>(generators.rows()), "zonotope");
  else
    generators.resize(center.size(), 0);
}

Zonotope Zonotope::from_box(const Box& box) {
  const Vector r = box.radius();
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r(i) > 0) nonzero.push_back(i);
  Matrix g = Matrix::Zero(r.size(), static_cast<Eigen::Index>(nonzero.size()));
  for (std::size_t k = 0; k < nonzero.size(); ++k)
    g(nonzero[k], static_cast<Eigen::Index>(k)) = r(nonzero[k]);
  return Zonotope(box.center(), g);
}

Zonotope Zonotope::point(const Vector& x) { return Zonotope(x, Matrix(x.size(), 0)); }

Matrix TemplatePolytope::box_octagon_directions(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  const Eigen::Index k = 2 * dim + 2 * dim * (dim - 1);
  Matrix d = Matrix::Zero(k, dim);
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    d(row++, i) = 1.0;
    d(row++, i) = -1.0;
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          d(row, i) = si;
          d(row, j) = sj;
          ++row;
        }
      }
    }
  }
  return d;
}

TemplatePolytope TemplatePolytope::enclose(const Zonotope& z, const Matrix& directions) {
  check_dims(z.dim(), static_cast<std::size_t>(directions.cols()), "template");
  TemplatePolytope p;
  p.directions = directions;
  p.offsets.resize(directions.rows());
  for (Eigen::Index k = 0; k < directions.rows(); ++k)
    p.offsets(k) = support(z, directions.row(k).transpose());
  return p;
}

bool TemplatePolytope::contains(const Vector& x, double slack) const {
  return ((directions * x).array() <= offsets.array() + slack).all();
}

Matrix matrix_exponential(const Matrix& A, double t) {
  if (A.rows() != A.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix exponential of a non-square matrix");
  const Eigen::Index n = A.rows();
  const Matrix M = A * t;
  if (!M.allFinite()) throw Error(ErrorKind::Overflow, "matrix exponential of a non-finite matrix");
  const double norm = induced_norm1(M);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  if (squarings > 1000) throw Error(ErrorKind::Overflow, "matrix exponential argument too large");
  const Matrix X = std::ldexp(1.0, -squarings) * M;
  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 60; ++k) {
    term = term * X / static_cast<double>(k);
    result += term;
    if (induced_norm1(term) <= 1e-16 * induced_norm1(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  if (!result.allFinite()) throw Error(ErrorKind::Overflow, "matrix exponential overflowed");
  return result;
}

Zonotope linear_map(const Matrix& M, const Zonotope& z) {
  check_dims(static_cast<std::size_t>(M.cols()), z.dim(), "linear_map");
  if (z.num_generators() == 0) return Zonotope::point(M * z.center);
  return Zonotope(M * z.center, M * z.generators);
}

Zonotope translate(const Zonotope& z, const Vector& offset) {
  check_dims(z.dim(), static_cast<std::size_t>(offset.size()), "translate");
  return Zonotope(z.center + offset, z.generators);
}

Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b) {
  check_dims(a.dim(), b.dim(), "minkowski_sum");
  Matrix g(a.generators.rows(), a.generators.cols() + b.generators.cols());
  g << a.generators, b.generators;
  return Zonotope(a.center + b.center, g);
}

Zonotope enclose_hull(const Zonotope& z, const Matrix& M, const Vector& offset) {
  const Zonotope w = translate(linear_map(M, z), offset);
  const Eigen::Index p = z.generators.cols();
  Matrix g(z.generators.rows(), 2 * p + 1);
  g << 0.5 * (z.generators + w.generators), 0.5 * (z.center - w.center),
      0.5 * (z.generators - w.generators);
  return Zonotope(0.5 * (z.center + w.center), g);
}

Zonotope enclose_union(const Zonotope& a, const Zonotope& b) {
  check_dims(a.dim(), b.dim(), "enclose_union");
  const Eigen::Index p = std::max(a.generators.cols(), b.generators.cols());
  Matrix ga = Matrix::Zero(a.generators.rows(), p), gb = Matrix::Zero(b.generators.rows(), p);
  ga.leftCols(a.generators.cols()) = a.generators;
  gb.leftCols(b.generators.cols()) = b.generators;
  Matrix g(a.generators.rows(), 2 * p + 1);
  g << 0.5 * (ga + gb), 0.5 * (a.center - b.center), 0.5 * (ga - gb);
  return Zonotope(0.5 * (a.center + b.center), g);
}

double support(const Zonotope& z, const Vector& d) {
  check_dims(z.dim(), static_cast<std::size_t>(d.size()), "support");
  double s = d.dot(z.center);
  if (z.num_generators() > 0) s += (d.transpose() * z.generators).cwiseAbs().sum();
  return s;
}

double support(const Box& b, const Vector& d) {
  check_dims(b.dim(), static_cast<std::size_t>(d.size()), "support");
  return d.dot(b.center()) + d.cwiseAbs().dot(b.radius());
}

Box box_hull(const Zonotope& z) {
  Vector r = Vector::Zero(z.center.size());
  if (z.num_generators() > 0) r = z.generators.cwiseAbs().rowwise().sum();
  return Box(z.center - r, z.center + r);
}

Zonotope reduce_order(const Zonotope& z, std::size_t p_max) {
  const std::size_t p = z.num_generators();
  if (p <= p_max) return z;
  const std::size_t n = z.dim();
  const std::size_t keep = p_max > n ? p_max - n : 0;
  std::vector<double> key(p);
  for (std::size_t j = 0; j < p; ++j) {
    const auto col = z.generators.col(static_cast<Eigen::Index>(j));
    key[j] = col.lpNorm<1>() - col.lpNorm<Eigen::Infinity>();
  }
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  std::vector<std::size_t> kept(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
  std::sort(kept.begin(), kept.end());
  Vector boxed = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t k = keep; k < p; ++k)
    boxed += z.generators.col(static_cast<Eigen::Index>(order[k])).cwiseAbs();
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < boxed.size(); ++i)
    if (boxed(i) > 0) rows.push_back(i);
  Matrix g = Matrix::Zero(static_cast<Eigen::Index>(n),
                          static_cast<Eigen::Index>(kept.size() + rows.size()));
  Eigen::Index c = 0;
  for (std::size_t j : kept) g.col(c++) = z.generators.col(static_cast<Eigen::Index>(j));
  for (Eigen::Index i : rows) g(i, c++) = boxed(i);
  return Zonotope(z.center, g);
}

std::optional<Box> intersect_condition(const Box& box, const Condition& cond) {
  Box out = box;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& c : cond.constraints) {
      check_dims(box.dim(), static_cast<std::size_t>(c.coeffs.size()), "intersect_condition");
      bool ok = true;
      switch (c.relation) {
        case Relation::LessEq:
        case Relation::Less:
          ok = tighten(out, c.coeffs, c.bound);
          break;
        case Relation::GreaterEq:
        case Relation::Greater:
          ok = tighten(out, -c.coeffs, -c.bound);
          break;
        case Relation::Equal:
          ok = tighten(out, c.coeffs, c.bound) && tighten(out, -c.coeffs, -c.bound);
          break;
      }
      if (!ok) return std::nullopt;
    }
    if (cond.constraints.size() <= 1) break;
  }
  return out;
}

namespace {

// min g.xi subject to h.xi = beta, xi in [-1, 1]^p, for a feasible beta:
// max over lambda of lambda*beta - sum |g_i - lambda*h_i|, attained at a
// breakpoint lambda = g_i / h_i.
double min_on_slice(const Vector& g, const Vector& h, double beta) {
  auto dual = [&](double lambda) {
    return lambda * beta - (g - lambda * h).cwiseAbs().sum();
  };
  double best = dual(0.0);
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (h(i) != 0.0) best = std::max(best, dual(g(i) / h(i)));
  return best;
}

}  // namespace

std::optional<Box> hyperplane_hull(const Zonotope& z, const Vector& a, double b) {
  check_dims(z.dim(), static_cast<std::size_t>(a.size()), "hyperplane_hull");
  const Vector h = z.generators.transpose() * a;
  const double beta = b - a.dot(z.center);
  const double reach = h.cwiseAbs().sum();
  if (std::abs(beta) > reach + 1e-12 * std::max(1.0, std::abs(b))) return std::nullopt;
  const double beta_c = std::clamp(beta, -reach, reach);
  Vector lo(z.dim()), hi(z.dim());
  for (Eigen::Index j = 0; j < lo.size(); ++j) {
    const Vector g = z.generators.row(j).transpose();
    lo(j) = z.center(j) + min_on_slice(g, h, beta_c);
    hi(j) = z.center(j) - min_on_slice(-g, h, beta_c);
    if (lo(j) > hi(j)) std::swap(lo(j), hi(j));
  }
  return Box(lo, hi);
}

namespace {

// Narrows the factors of z against h.xi <= beta with h = G^T a.
bool tighten_halfspace(Vector& center, Matrix& g, const Vector& a, double b) {
  const Vector h = g.transpose() * a;
  const double beta = b - a.dot(center);
  const double total = h.cwiseAbs().sum();
  if (beta < -total - 1e-12 * std::max(1.0, std::abs(b))) return false;
  if (beta >= total) return true;
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    if (h(i) == 0.0) continue;
    // h_i xi_i <= beta + sum_{j != i} |h_j|
    const double room = beta + (total - std::abs(h(i)));
    double lo = -1.0, hi = 1.0;
    if (h(i) > 0.0) {
      hi = std::min(1.0, room / h(i));
    } else {
      lo = std::max(-1.0, room / h(i));
    }
    if (lo > hi) hi = lo;
    if (lo == -1.0 && hi == 1.0) continue;
    center += g.col(i) * (0.5 * (lo + hi));
    g.col(i) *= 0.5 * (hi - lo);
  }
  return true;
}

}  // namespace

std::optional<Zonotope> tighten_factors(const Zonotope& z, const Condition& cond) {
  Vector c = z.center;
  Matrix g = z.generators;
  for (const auto& k : cond.constraints) {
    check_dims(z.dim(), static_cast<std::size_t>(k.coeffs.size()), "tighten_factors");
    bool ok = true;
    switch (k.relation) {
      case Relation::LessEq:
      case Relation::Less:
        ok = tighten_halfspace(c, g, k.coeffs, k.bound);
        break;
      case Relation::GreaterEq:
      case Relation::Greater:
        ok = tighten_halfspace(c, g, -k.coeffs, -k.bound);
        break;
      case Relation::Equal:
        ok = tighten_halfspace(c, g, k.coeffs, k.bound) &&
             tighten_halfspace(c, g, -k.coeffs, -k.bound);
        break;
    }
    if (!ok) return std::nullopt;
  }
  return Zonotope(c, g);
}

}  // namespace hyra
