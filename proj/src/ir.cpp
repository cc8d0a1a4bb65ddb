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

#include "hyra/ir.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "hyra/error.hpp"

namespace hyra {

Coef& Coef::operator+=(const Coef& other) {
  value += other.value;
  for (const auto& [name, factor] : other.params) {
    double& slot = params[name];
    slot += factor;
    if (slot == 0.0) params.erase(name);
  }
  return *this;
}

Coef& Coef::operator-=(const Coef& other) { return *this += -other; }

Coef Coef::operator-() const { return scaled(-1.0); }

Coef Coef::scaled(double factor) const {
  Coef out;
  out.value = value * factor;
  if (factor == 0.0) return out;
  for (const auto& [name, f] : params) out.params[name] = f * factor;
  return out;
}

std::optional<std::size_t> VariableTable::state_index(std::string_view name) const {
  auto it = std::find(state_vars.begin(), state_vars.end(), name);
  if (it == state_vars.end()) return std::nullopt;
  return static_cast<std::size_t>(it - state_vars.begin());
}

std::optional<std::size_t> VariableTable::input_index(std::string_view name) const {
  auto it = std::find(input_vars.begin(), input_vars.end(), name);
  if (it == input_vars.end()) return std::nullopt;
  return static_cast<std::size_t>(it - input_vars.begin());
}

bool VariableTable::has_constant(std::string_view name) const {
  return constants.find(std::string(name)) != constants.end();
}

namespace {

Coef gather(double base, const std::vector<ParamTerm>& params, std::size_t row,
            std::size_t col) {
  Coef out(base);
  for (const auto& p : params) {
    if (p.row != row || p.col != col) continue;
    Coef term;
    term.params[p.name] = p.factor;
    out += term;
  }
  return out;
}

bool same_matrix(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

bool same_vector(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

// Params are compared as multisets; producers may list them in any order.
bool same_params(std::vector<ParamTerm> a, std::vector<ParamTerm> b) {
  if (a.size() != b.size()) return false;
  auto less = [](const ParamTerm& x, const ParamTerm& y) {
    return std::tie(x.row, x.col, x.name, x.factor) < std::tie(y.row, y.col, y.name, y.factor);
  };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  return a == b;
}

}  // namespace

AffineDynamics AffineDynamics::zero(std::size_t n, std::size_t m) {
  AffineDynamics d;
  d.A = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  d.B = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  d.c = Vector::Zero(static_cast<Eigen::Index>(n));
  return d;
}

Coef AffineDynamics::entry(std::size_t row, std::size_t col) const {
  const auto n = static_cast<std::size_t>(A.cols());
  const auto m = static_cast<std::size_t>(B.cols());
  const auto r = static_cast<Eigen::Index>(row);
  double base = 0.0;
  if (col < n) {
    base = A(r, static_cast<Eigen::Index>(col));
  } else if (col < n + m) {
    base = B(r, static_cast<Eigen::Index>(col - n));
  } else {
    base = c(r);
  }
  return gather(base, params, row, col);
}

Vector AffineDynamics::derivative(const Vector& x, const Vector& u) const {
  Vector dx = A * x + c;
  if (B.cols() > 0) dx += B * u;
  return dx;
}

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::LessEq: return "<=";
    case Relation::Less: return "<";
    case Relation::Equal: return "==";
    case Relation::GreaterEq: return ">=";
    case Relation::Greater: return ">";
  }
  return "?";
}

Coef LinearConstraint::coeff(std::size_t i) const {
  return gather(coeffs(static_cast<Eigen::Index>(i)), params, 0, i);
}

Coef LinearConstraint::bound_coef() const {
  return gather(bound, params, 0, static_cast<std::size_t>(coeffs.size()));
}

bool LinearConstraint::satisfied(const Vector& x, double tol) const {
  const double v = coeffs.dot(x) - bound;
  switch (relation) {
    case Relation::LessEq:
    case Relation::Less:
      return v <= tol;
    case Relation::GreaterEq:
    case Relation::Greater:
      return v >= -tol;
    case Relation::Equal:
      return std::abs(v) <= tol;
  }
  return false;
}

double LinearConstraint::violation(const Vector& x) const {
  const double v = coeffs.dot(x) - bound;
  switch (relation) {
    case Relation::LessEq:
    case Relation::Less:
      return v;
    case Relation::GreaterEq:
    case Relation::Greater:
      return -v;
    case Relation::Equal:
      return std::abs(v);
  }
  return v;
}

bool LinearConstraint::is_trivial() const {
  if (!coeffs.isZero(0.0)) return false;
  const auto n = static_cast<std::size_t>(coeffs.size());
  return std::none_of(params.begin(), params.end(),
                      [n](const ParamTerm& p) { return p.col < n; });
}

bool Condition::satisfied(const Vector& x, double tol) const {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const LinearConstraint& c) { return c.satisfied(x, tol); });
}

ResetMap ResetMap::identity(std::size_t n) {
  ResetMap m;
  const auto k = static_cast<Eigen::Index>(n);
  m.R = Matrix::Identity(k, k);
  m.r = Vector::Zero(k);
  return m;
}

bool ResetMap::is_identity() const {
  return params.empty() && R.isIdentity(0.0) && r.isZero(0.0);
}

Coef ResetMap::entry(std::size_t row, std::size_t col) const {
  const auto n = static_cast<std::size_t>(R.cols());
  const double base = col < n ? R(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col))
                              : r(static_cast<Eigen::Index>(row));
  return gather(base, params, row, col);
}

Vector ResetMap::apply(const Vector& x) const { return R * x + r; }

const Location* HybridAutomaton::find_location(std::string_view name) const {
  for (const auto& loc : locations)
    if (loc.name == name) return &loc;
  return nullptr;
}

std::optional<std::size_t> HybridAutomaton::location_index(std::string_view name) const {
  for (std::size_t i = 0; i < locations.size(); ++i)
    if (locations[i].name == name) return i;
  return std::nullopt;
}

std::string_view to_string(DefectKind kind) {
  switch (kind) {
    case DefectKind::EmptyStateVars: return "empty-state-vars";
    case DefectKind::DuplicateName: return "duplicate-name";
    case DefectKind::DimensionMismatch: return "dimension-mismatch";
    case DefectKind::DanglingLocation: return "dangling-location";
    case DefectKind::UnknownConstant: return "unknown-constant";
    case DefectKind::NonFinite: return "non-finite";
    case DefectKind::EmptyInterval: return "empty-interval";
    case DefectKind::MissingInputRange: return "missing-input-range";
  }
  return "unknown";
}

bool ValidationReport::has(DefectKind kind) const {
  return std::any_of(defects.begin(), defects.end(),
                     [kind](const Defect& d) { return d.kind == kind; });
}

namespace {

class Validator {
 public:
  explicit Validator(const HybridAutomaton& a)
      : a_(a), n_(a.vars.num_states()), m_(a.vars.num_inputs()) {}

  ValidationReport run() {
    check_names();
    for (const auto& loc : a_.locations) check_location(loc);
    for (std::size_t i = 0; i < a_.transitions.size(); ++i)
      check_transition(a_.transitions[i], i);
    check_inputs();
    return std::move(report_);
  }

 private:
  void add(DefectKind kind, std::string where, std::string message) {
    report_.defects.push_back({kind, std::move(where), std::move(message)});
  }

  void check_names() {
    if (a_.vars.state_vars.empty())
      add(DefectKind::EmptyStateVars, "variables", "no state variables declared");
    std::set<std::string> seen;
    auto note = [&](const std::string& name) {
      if (!seen.insert(name).second)
        add(DefectKind::DuplicateName, "variables", "name '" + name + "' declared twice");
    };
    for (const auto& v : a_.vars.state_vars) note(v);
    for (const auto& v : a_.vars.input_vars) note(v);
    for (const auto& [name, value] : a_.vars.constants) {
      note(name);
      if (!std::isfinite(value))
        add(DefectKind::NonFinite, "constant '" + name + "'", "value is not finite");
    }
    std::set<std::string> locs;
    for (const auto& loc : a_.locations)
      if (!locs.insert(loc.name).second)
        add(DefectKind::DuplicateName, "location '" + loc.name + "'",
            "location name used twice");
  }

  void check_params(const std::vector<ParamTerm>& params, std::size_t rows,
                    std::size_t cols, const std::string& where) {
    for (const auto& p : params) {
      if (p.row >= rows || p.col >= cols)
        add(DefectKind::DimensionMismatch, where,
            "symbolic term '" + p.name + "' outside the coefficient block");
      if (!a_.vars.has_constant(p.name))
        add(DefectKind::UnknownConstant, where, "reference to unknown constant '" + p.name + "'");
      if (!std::isfinite(p.factor))
        add(DefectKind::NonFinite, where, "symbolic factor is not finite");
    }
  }

  void check_condition(const Condition& cond, const std::string& where) {
    for (const auto& c : cond.constraints) {
      if (static_cast<std::size_t>(c.coeffs.size()) != n_) {
        add(DefectKind::DimensionMismatch, where,
            "constraint has " + std::to_string(c.coeffs.size()) + " coefficients, expected " +
                std::to_string(n_));
        continue;
      }
      if (!c.coeffs.allFinite() || !std::isfinite(c.bound))
        add(DefectKind::NonFinite, where, "constraint has non-finite entries");
      check_params(c.params, 1, n_ + 1, where);
    }
  }

  void check_location(const Location& loc) {
    const std::string where = "location '" + loc.name + "'";
    const auto& d = loc.dynamics;
    const auto n = static_cast<Eigen::Index>(n_);
    const auto m = static_cast<Eigen::Index>(m_);
    bool dims_ok = true;
    if (d.A.rows() != n || d.A.cols() != n) {
      add(DefectKind::DimensionMismatch, where,
          "flow matrix is " + std::to_string(d.A.rows()) + "x" + std::to_string(d.A.cols()) +
              ", expected " + std::to_string(n) + "x" + std::to_string(n));
      dims_ok = false;
    }
    if (d.B.rows() != n || d.B.cols() != m) {
      add(DefectKind::DimensionMismatch, where,
          "input matrix is " + std::to_string(d.B.rows()) + "x" + std::to_string(d.B.cols()) +
              ", expected " + std::to_string(n) + "x" + std::to_string(m));
      dims_ok = false;
    }
    if (d.c.size() != n) {
      add(DefectKind::DimensionMismatch, where, "drift vector has wrong length");
      dims_ok = false;
    }
    if (dims_ok && (!all_finite(d.A) || !all_finite(d.B) || !d.c.allFinite()))
      add(DefectKind::NonFinite, where, "flow has non-finite entries");
    check_params(d.params, n_, n_ + m_ + 1, where + " flow");
    check_condition(loc.invariant, where + " invariant");
  }

  void check_transition(const Transition& t, std::size_t index) {
    const std::string where =
        "transition #" + std::to_string(index) + " (" + t.source + " -> " + t.target + ")";
    if (!a_.find_location(t.source))
      add(DefectKind::DanglingLocation, where, "unknown source location '" + t.source + "'");
    if (!a_.find_location(t.target))
      add(DefectKind::DanglingLocation, where, "unknown target location '" + t.target + "'");
    check_condition(t.guard, where + " guard");
    const auto n = static_cast<Eigen::Index>(n_);
    if (t.reset.R.rows() != n || t.reset.R.cols() != n || t.reset.r.size() != n) {
      add(DefectKind::DimensionMismatch, where, "reset map has wrong dimensions");
    } else if (!all_finite(t.reset.R) || !t.reset.r.allFinite()) {
      add(DefectKind::NonFinite, where, "reset has non-finite entries");
    }
    check_params(t.reset.params, n_, n_ + 1, where + " reset");
  }

  void check_inputs() {
    if (a_.input_range.size() != m_) {
      add(DefectKind::MissingInputRange, "inputs",
          "expected " + std::to_string(m_) + " input ranges, found " +
              std::to_string(a_.input_range.size()));
      return;
    }
    for (std::size_t j = 0; j < m_; ++j) {
      const auto& iv = a_.input_range[j];
      if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
        add(DefectKind::NonFinite, "input '" + a_.vars.input_vars[j] + "'", "range not finite");
      else if (iv.lo > iv.hi)
        add(DefectKind::EmptyInterval, "input '" + a_.vars.input_vars[j] + "'", "empty range");
    }
  }

  const HybridAutomaton& a_;
  std::size_t n_;
  std::size_t m_;
  ValidationReport report_;
};

// Folds every term naming `name` into the numeric entry it targets.
template <typename Sink>
void fold_params(std::vector<ParamTerm>& params, std::string_view name, double value,
                 Sink&& sink) {
  auto it = std::remove_if(params.begin(), params.end(), [&](const ParamTerm& p) {
    if (p.name != name) return false;
    sink(p.row, p.col, p.factor * value);
    return true;
  });
  params.erase(it, params.end());
}

void fold_condition(Condition& cond, std::string_view name, double value) {
  for (auto& c : cond.constraints) {
    const auto n = static_cast<std::size_t>(c.coeffs.size());
    fold_params(c.params, name, value, [&](std::size_t, std::size_t col, double v) {
      if (col < n)
        c.coeffs(static_cast<Eigen::Index>(col)) += v;
      else
        c.bound += v;
    });
  }
}

void fold_constant(HybridAutomaton& a, std::string_view name, double value) {
  const auto n = a.vars.num_states();
  const auto m = a.vars.num_inputs();
  for (auto& loc : a.locations) {
    auto& d = loc.dynamics;
    fold_params(d.params, name, value, [&](std::size_t row, std::size_t col, double v) {
      const auto r = static_cast<Eigen::Index>(row);
      if (col < n)
        d.A(r, static_cast<Eigen::Index>(col)) += v;
      else if (col < n + m)
        d.B(r, static_cast<Eigen::Index>(col - n)) += v;
      else
        d.c(r) += v;
    });
    fold_condition(loc.invariant, name, value);
  }
  for (auto& t : a.transitions) {
    fold_condition(t.guard, name, value);
    fold_params(t.reset.params, name, value, [&](std::size_t row, std::size_t col, double v) {
      const auto r = static_cast<Eigen::Index>(row);
      if (col < n)
        t.reset.R(r, static_cast<Eigen::Index>(col)) += v;
      else
        t.reset.r(r) += v;
    });
  }
  a.vars.constants.erase(std::string(name));
}

void fold_input(HybridAutomaton& a, std::size_t j, double value) {
  const auto n = a.vars.num_states();
  const auto m = a.vars.num_inputs();
  const auto jj = static_cast<Eigen::Index>(j);
  for (auto& loc : a.locations) {
    auto& d = loc.dynamics;
    d.c += d.B.col(jj) * value;
    Matrix reduced(d.B.rows(), d.B.cols() - 1);
    for (Eigen::Index k = 0, out = 0; k < d.B.cols(); ++k)
      if (k != jj) reduced.col(out++) = d.B.col(k);
    d.B = std::move(reduced);
    for (auto& p : d.params) {
      if (p.col == n + j) {
        // k * u_j with u_j = value becomes a symbolic drift contribution.
        p.col = n + m - 1;
        p.factor *= value;
      } else if (p.col > n + j) {
        p.col -= 1;
      }
    }
    std::erase_if(d.params, [](const ParamTerm& p) { return p.factor == 0.0; });
  }
  a.vars.input_vars.erase(a.vars.input_vars.begin() + static_cast<std::ptrdiff_t>(j));
  if (j < a.input_range.size())
    a.input_range.erase(a.input_range.begin() + static_cast<std::ptrdiff_t>(j));
}

}  // namespace

ValidationReport validate(const HybridAutomaton& automaton) {
  return Validator(automaton).run();
}

HybridAutomaton bind_constant(const HybridAutomaton& automaton, std::string_view name,
                              double value) {
  HybridAutomaton out = automaton;
  if (out.vars.has_constant(name)) {
    fold_constant(out, name, value);
    return out;
  }
  if (auto j = out.vars.input_index(name)) {
    fold_input(out, *j, value);
    return out;
  }
  throw Error(ErrorKind::UnknownSymbol, "no constant or input named '" + std::string(name) + "'");
}

HybridAutomaton resolve_constants(const HybridAutomaton& automaton) {
  HybridAutomaton out = automaton;
  const auto constants = out.vars.constants;
  for (const auto& [name, value] : constants) fold_constant(out, name, value);
  return out;
}

Condition resolve_condition(const Condition& cond, const VariableTable& vars) {
  Condition out = cond;
  for (const auto& c : out.constraints) {
    for (const auto& p : c.params)
      if (!vars.has_constant(p.name))
        throw Error(ErrorKind::UnknownSymbol, "unknown constant '" + p.name + "' in condition");
  }
  for (const auto& [name, value] : vars.constants) fold_condition(out, name, value);
  return out;
}

bool operator==(const AffineDynamics& a, const AffineDynamics& b) {
  return same_matrix(a.A, b.A) && same_matrix(a.B, b.B) && same_vector(a.c, b.c) &&
         same_params(a.params, b.params);
}

bool operator==(const LinearConstraint& a, const LinearConstraint& b) {
  return same_vector(a.coeffs, b.coeffs) && a.relation == b.relation && a.bound == b.bound &&
         same_params(a.params, b.params);
}

bool operator==(const Condition& a, const Condition& b) { return a.constraints == b.constraints; }

bool operator==(const ResetMap& a, const ResetMap& b) {
  return same_matrix(a.R, b.R) && same_vector(a.r, b.r) && same_params(a.params, b.params);
}

bool operator==(const Location& a, const Location& b) {
  return a.name == b.name && a.invariant == b.invariant && a.dynamics == b.dynamics;
}

bool operator==(const Transition& a, const Transition& b) {
  return a.source == b.source && a.target == b.target && a.guard == b.guard &&
         a.reset == b.reset && a.label == b.label;
}

bool operator==(const HybridAutomaton& a, const HybridAutomaton& b) {
  return a.vars == b.vars && a.locations == b.locations && a.transitions == b.transitions &&
         a.input_range == b.input_range;
}

bool operator==(const ReachSettings& a, const ReachSettings& b) {
  return a.horizon == b.horizon && a.step == b.step && a.max_jumps == b.max_jumps &&
         a.forbidden == b.forbidden && a.output_vars == b.output_vars &&
         a.fixpoint_check == b.fixpoint_check;
}

}  // namespace hyra
