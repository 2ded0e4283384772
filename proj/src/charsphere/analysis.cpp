#include "sok/charsphere/analysis.hpp"

#include "sok/error.hpp"

#include <algorithm>

namespace sok {

bool cell_contains(const Cell& c, std::span<const Integer> x) {
  if (is_zero(x)) return false;
  for (const auto& k : c.constraints)
    if (!satisfies(k, x)) return false;
  for (const auto& g : c.nonzero_groups) {
    bool any = std::any_of(g.begin(), g.end(), [&](const IntVector& f) {
      return dot(std::span<const Integer>(f), x) != 0;
    });
    if (!any) return false;
  }
  return true;
}

namespace {

bool feasible_groups(std::vector<LinearConstraint>& cons, const Cell& c, std::size_t next,
                     std::size_t dim, RatVector* witness) {
  if (next == c.nonzero_groups.size()) {
    // Some strict form is already in cons when a group was used, which
    // makes x != 0 automatic; otherwise ask for it explicitly.
    LpResult r = lp_feasible(cons, dim, c.nonzero_groups.empty());
    if (r.feasible && witness) *witness = r.witness;
    return r.feasible;
  }
  for (const auto& f : c.nonzero_groups[next]) {
    if (is_zero(std::span<const Integer>(f))) continue;
    for (int s : {1, -1}) {
      IntVector g = f;
      if (s < 0)
        for (auto& v : g) v = -v;
      cons.push_back(gt(g));
      bool ok = lp_feasible(cons, dim, false).feasible &&
                feasible_groups(cons, c, next + 1, dim, witness);
      cons.pop_back();
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

bool cell_feasible(const Cell& c, std::size_t dim, RatVector* witness) {
  if (dim == 0) return false;
  std::vector<LinearConstraint> cons = c.constraints;
  return feasible_groups(cons, c, 0, dim, witness);
}

namespace {

using Cells = std::vector<Cell>;

void check_cap(const Cells& cells) {
  if (cells.size() > kCellCap) {
    throw Error(ErrorCode::UnsupportedForm, "set expression normalizes to too many cells");
  }
}

Cell meet(const Cell& a, const Cell& b) {
  Cell c = a;
  c.constraints.insert(c.constraints.end(), b.constraints.begin(), b.constraints.end());
  c.constraints = normalize_constraints(std::move(c.constraints));
  c.nonzero_groups.insert(c.nonzero_groups.end(), b.nonzero_groups.begin(),
                          b.nonzero_groups.end());
  return c;
}

Cells intersect(const Cells& a, const Cells& b, std::size_t dim) {
  Cells out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Cell c = meet(x, y);
      if (cell_feasible(c, dim)) out.push_back(std::move(c));
      check_cap(out);
    }
  }
  return out;
}

IntVector negated(const IntVector& v) {
  IntVector out = v;
  for (auto& x : out) x = -x;
  return out;
}

// The cells whose union is the sphere minus one cell.
Cells negate_cell(const Cell& c, std::size_t dim) {
  Cells out;
  for (const auto& k : c.constraints) {
    switch (k.rel) {
      case Relation::Ge: out.push_back({{gt(negated(k.coeffs))}, {}}); break;
      case Relation::Gt: out.push_back({{ge(negated(k.coeffs))}, {}}); break;
      case Relation::Eq:
        out.push_back({{gt(k.coeffs)}, {}});
        out.push_back({{gt(negated(k.coeffs))}, {}});
        break;
    }
  }
  for (const auto& g : c.nonzero_groups) {
    Cell z;
    for (const auto& f : g) z.constraints.push_back(eq(f));
    z.constraints = normalize_constraints(std::move(z.constraints));
    out.push_back(std::move(z));
  }
  Cells kept;
  for (auto& x : out)
    if (cell_feasible(x, dim)) kept.push_back(std::move(x));
  return kept;
}

Cells complement_of(const Cells& cells, std::size_t dim) {
  Cells acc{Cell{}};
  if (dim == 0) return {};
  for (const auto& c : cells) {
    acc = intersect(acc, negate_cell(c, dim), dim);
    if (acc.empty()) break;
  }
  return acc;
}

IntVector pad(const IntVector& v, std::size_t before, std::size_t after) {
  IntVector out(before, Integer(0));
  out.insert(out.end(), v.begin(), v.end());
  out.resize(before + v.size() + after, Integer(0));
  return out;
}

Cell lift(const Cell& c, std::size_t before, std::size_t after) {
  Cell out;
  for (const auto& k : c.constraints) out.constraints.push_back({pad(k.coeffs, before, after), k.rel});
  for (const auto& g : c.nonzero_groups) {
    std::vector<IntVector> lifted;
    for (const auto& f : g) lifted.push_back(pad(f, before, after));
    out.nonzero_groups.push_back(std::move(lifted));
  }
  return out;
}

std::vector<IntVector> unit_forms(std::size_t dim, std::size_t from, std::size_t count) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < count; ++i) {
    IntVector e(dim, Integer(0));
    e[from + i] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

IntVector pull_back(const IntVector& c, const IntegerMatrix& basis) {
  IntVector out(basis.rows(), Integer(0));
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) out[i] += basis(i, j) * c[j];
  return out;
}

Cells pos(const SphereSet& s);
Cells neg(const SphereSet& s);

Cells keep_feasible(Cells cells, std::size_t dim) {
  Cells out;
  for (auto& c : cells) {
    c.constraints = normalize_constraints(std::move(c.constraints));
    if (cell_feasible(c, dim)) out.push_back(std::move(c));
  }
  check_cap(out);
  return out;
}

Cells ray_cells(const SphereSet& s) {
  const std::size_t d = s.dim();
  Cells out;
  for (const auto& r : s.ray_list()) {
    RationalMatrix m(1, d);
    for (std::size_t j = 0; j < d; ++j) m(0, j) = Rational(r.direction()[j]);
    RationalMatrix perp = nullspace(m);
    Cell c;
    for (std::size_t i = 0; i < perp.rows(); ++i) c.constraints.push_back(eq(primitive(perp.row(i))));
    c.constraints.push_back(gt(r.direction()));
    c.constraints = normalize_constraints(std::move(c.constraints));
    out.push_back(std::move(c));
  }
  return out;
}

Cells join_pos(const SphereSet& s) {
  const SphereSet& a = s.children()[0];
  const SphereSet& b = s.children()[1];
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  Cells pa = pos(a), pb = pos(b), out;
  for (const auto& c : pa) {
    Cell l = lift(c, 0, db);
    for (auto& e : unit_forms(d, da, db)) l.constraints.push_back(eq(std::move(e)));
    out.push_back(std::move(l));
  }
  for (const auto& c : pb) {
    Cell l = lift(c, da, 0);
    for (auto& e : unit_forms(d, 0, da)) l.constraints.push_back(eq(std::move(e)));
    out.push_back(std::move(l));
  }
  if (da > 0 && db > 0) {
    for (const auto& x : pa) {
      for (const auto& y : pb) {
        Cell l = meet(lift(x, 0, db), lift(y, da, 0));
        l.nonzero_groups.push_back(unit_forms(d, 0, da));
        l.nonzero_groups.push_back(unit_forms(d, da, db));
        out.push_back(std::move(l));
        check_cap(out);
      }
    }
  }
  return keep_feasible(std::move(out), d);
}

Cells join_neg(const SphereSet& s) {
  const SphereSet& a = s.children()[0];
  const SphereSet& b = s.children()[1];
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  Cells out;
  for (const auto& c : neg(a)) {
    Cell l = lift(c, 0, db);
    l.nonzero_groups.push_back(unit_forms(d, 0, da));
    out.push_back(std::move(l));
  }
  for (const auto& c : neg(b)) {
    Cell l = lift(c, da, 0);
    l.nonzero_groups.push_back(unit_forms(d, da, db));
    out.push_back(std::move(l));
  }
  return keep_feasible(std::move(out), d);
}

Cells restrict_cells(const Cells& cells, const RationalSubspace& w) {
  Cells out;
  for (const auto& c : cells) {
    Cell p;
    for (const auto& k : c.constraints) p.constraints.push_back({pull_back(k.coeffs, w.basis()), k.rel});
    for (const auto& g : c.nonzero_groups) {
      std::vector<IntVector> forms;
      for (const auto& f : g) forms.push_back(pull_back(f, w.basis()));
      p.nonzero_groups.push_back(std::move(forms));
    }
    out.push_back(std::move(p));
  }
  return keep_feasible(std::move(out), w.dim());
}

Cells pos(const SphereSet& s) {
  const std::size_t d = s.dim();
  if (d == 0) return {};
  switch (s.kind()) {
    case SphereSet::Kind::Empty: return {};
    case SphereSet::Kind::Full: return {Cell{}};
    case SphereSet::Kind::Rays: return ray_cells(s);
    case SphereSet::Kind::Cone: return keep_feasible({Cell{s.constraints(), {}}}, d);
    case SphereSet::Kind::Not: return neg(s.children()[0]);
    case SphereSet::Kind::And: {
      Cells acc = pos(s.children()[0]);
      for (std::size_t i = 1; i < s.children().size() && !acc.empty(); ++i)
        acc = intersect(acc, pos(s.children()[i]), d);
      return acc;
    }
    case SphereSet::Kind::Or: {
      Cells acc;
      for (const auto& c : s.children()) {
        Cells p = pos(c);
        acc.insert(acc.end(), p.begin(), p.end());
        check_cap(acc);
      }
      return acc;
    }
    case SphereSet::Kind::Join: return join_pos(s);
    case SphereSet::Kind::Restrict: return restrict_cells(pos(s.children()[0]), s.subspace());
  }
  return {};
}

Cells neg(const SphereSet& s) {
  const std::size_t d = s.dim();
  if (d == 0) return {};
  switch (s.kind()) {
    case SphereSet::Kind::Empty: return {Cell{}};
    case SphereSet::Kind::Full: return {};
    case SphereSet::Kind::Rays:
    case SphereSet::Kind::Cone: return complement_of(pos(s), d);
    case SphereSet::Kind::Not: return pos(s.children()[0]);
    case SphereSet::Kind::And: {
      Cells acc;
      for (const auto& c : s.children()) {
        Cells p = neg(c);
        acc.insert(acc.end(), p.begin(), p.end());
        check_cap(acc);
      }
      return acc;
    }
    case SphereSet::Kind::Or: {
      Cells acc = neg(s.children()[0]);
      for (std::size_t i = 1; i < s.children().size() && !acc.empty(); ++i)
        acc = intersect(acc, neg(s.children()[i]), d);
      return acc;
    }
    case SphereSet::Kind::Join: return join_neg(s);
    case SphereSet::Kind::Restrict: return restrict_cells(neg(s.children()[0]), s.subspace());
  }
  return {};
}

}  // namespace

std::vector<Cell> normalize(const SphereSet& s) { return pos(s); }
std::vector<Cell> normalize_complement(const SphereSet& s) { return neg(s); }

bool is_empty(const SphereSet& s) { return pos(s).empty(); }

bool is_subset(const SphereSet& a, const SphereSet& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "subset test across dimensions");
  return intersect(pos(a), neg(b), a.dim()).empty();
}

bool equivalent(const SphereSet& a, const SphereSet& b) {
  return is_subset(a, b) && is_subset(b, a);
}

bool is_closed(const SphereSet& s) {
  const std::size_t d = s.dim();
  Cells outside = neg(s);
  for (const auto& c : pos(s)) {
    Cell closure;
    for (const auto& k : c.constraints)
      closure.constraints.push_back({k.coeffs, k.rel == Relation::Gt ? Relation::Ge : k.rel});
    for (const auto& o : outside)
      if (cell_feasible(meet(closure, o), d)) return false;
  }
  return true;
}

std::string_view to_string(PointCount::Kind k) {
  switch (k) {
    case PointCount::Kind::Zero: return "zero";
    case PointCount::Kind::One: return "one";
    case PointCount::Kind::TwoAntipodal: return "two_antipodal";
    case PointCount::Kind::Several: return "several";
    case PointCount::Kind::Infinite: return "infinite";
    case PointCount::Kind::Unknown: return "unknown";
  }
  return "?";
}

PointCount count_rational_points(const SphereSet& s) {
  const std::size_t d = s.dim();
  Cells cells;
  try {
    cells = pos(s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedForm) throw;
    return {PointCount::Kind::Unknown, {}};
  }
  std::vector<RationalRay> found;
  for (const auto& c : cells) {
    // Implicit equalities span the orthogonal complement of the cell's
    // linear hull.
    RationalMatrix eqs(0, d);
    for (const auto& k : c.constraints) {
      bool implicit = k.rel == Relation::Eq;
      if (k.rel == Relation::Ge) {
        std::vector<LinearConstraint> probe = c.constraints;
        probe.push_back(gt(k.coeffs));
        implicit = !lp_feasible(probe, d, false).feasible;
      }
      if (implicit) eqs.append_row(to_rational(std::span<const Integer>(k.coeffs)));
    }
    const std::size_t hull = d - (eqs.rows() ? rank(eqs) : 0);
    if (hull >= 2) return {PointCount::Kind::Infinite, {}};
    if (hull == 0) continue;
    RationalMatrix line = eqs.rows() ? nullspace(eqs) : RationalMatrix::identity(1);
    IntVector r = primitive(line.row(0));
    for (const IntVector& v : {r, negated(r)}) {
      if (cell_contains(c, v)) found.emplace_back(std::span<const Integer>(v));
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  PointCount out;
  out.rays = found;
  if (found.empty()) out.kind = PointCount::Kind::Zero;
  else if (found.size() == 1) out.kind = PointCount::Kind::One;
  else if (found.size() == 2 && found[0] == found[1].antipode())
    out.kind = PointCount::Kind::TwoAntipodal;
  else out.kind = PointCount::Kind::Several;
  return out;
}

SphereSet omega_from_sigma(const SphereSet& sigma, const std::optional<RationalMatrix>& gram) {
  const std::size_t d = sigma.dim();
  if (d == 0) return SphereSet::empty(0);
  RationalMatrix g = gram ? *gram : RationalMatrix::identity(d);
  if (g.rows() != d || g.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "gram matrix does not match the sphere");
  }
  Integer scale = 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scale = lcm(scale, denominator(g(i, j)));
  IntegerMatrix gi(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) gi(i, j) = numerator(g(i, j) * Rational(scale));

  Cells outside = neg(sigma);
  if (outside.empty()) return SphereSet::full(d);

  std::vector<LinearConstraint> result;
  for (const auto& c : outside) {
    // Polar of the closed cone {M x >= 0, E x = 0}: G e = -(M^T l + E^T m)
    // with l >= 0. Variables: e (d), then one multiplier per row.
    const std::size_t k = c.constraints.size();
    const std::size_t n = d + k;
    std::vector<LinearConstraint> sys;
    for (std::size_t i = 0; i < d; ++i) {
      IntVector row(n, Integer(0));
      for (std::size_t j = 0; j < d; ++j) row[j] = gi(i, j);
      for (std::size_t l = 0; l < k; ++l) row[d + l] = c.constraints[l].coeffs[i];
      sys.push_back(eq(std::move(row)));
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (c.constraints[l].rel == Relation::Eq) continue;
      IntVector row(n, Integer(0));
      row[d + l] = 1;
      sys.push_back(ge(std::move(row)));
    }
    auto projected = fm_project(sys, n, d);
    for (auto& p : projected) {
      if (is_zero(std::span<const Integer>(p.coeffs))) {
        if (p.rel == Relation::Gt) return SphereSet::empty(d);
        continue;
      }
      result.push_back(std::move(p));
    }
  }
  return SphereSet::cone(d, std::move(result));
}

SphereSet simplify(const SphereSet& s) {
  const std::size_t d = s.dim();
  if (d == 0) return SphereSet::empty(0);
  try {
    if (is_empty(s)) return SphereSet::empty(d);
    if (neg(s).empty()) return SphereSet::full(d);
    PointCount pc = count_rational_points(s);
    switch (pc.kind) {
      case PointCount::Kind::One:
      case PointCount::Kind::TwoAntipodal:
      case PointCount::Kind::Several: return SphereSet::rays(d, pc.rays);
      default: return s;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedForm) throw;
    return s;
  }
}

}  // namespace sok
