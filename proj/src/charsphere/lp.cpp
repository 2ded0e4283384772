#include "sok/charsphere/lp.hpp"

#include "sok/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sok {

LinearConstraint ge(IntVector c) { return {std::move(c), Relation::Ge}; }
LinearConstraint gt(IntVector c) { return {std::move(c), Relation::Gt}; }
LinearConstraint eq(IntVector c) { return {std::move(c), Relation::Eq}; }

namespace {

template <class T>
bool holds(Relation rel, const T& value) {
  switch (rel) {
    case Relation::Ge: return value >= 0;
    case Relation::Gt: return value > 0;
    case Relation::Eq: return value == 0;
  }
  return false;
}

}  // namespace

bool satisfies(const LinearConstraint& c, std::span<const Rational> x) {
  return holds(c.rel, dot(std::span<const Integer>(c.coeffs), x));
}

bool satisfies(const LinearConstraint& c, std::span<const Integer> x) {
  return holds(c.rel, dot(std::span<const Integer>(c.coeffs), x));
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
    case Relation::Eq: return "=";
  }
  return "?";
}

Relation relation_from_string(std::string_view s) {
  if (s == ">=") return Relation::Ge;
  if (s == ">") return Relation::Gt;
  if (s == "=") return Relation::Eq;
  throw Error(ErrorCode::ParseError, "unknown relation '" + std::string(s) + "'");
}

namespace {

IntVector sign_normalized(IntVector c) {
  auto nz = std::find_if(c.begin(), c.end(), [](const Integer& v) { return v != 0; });
  if (nz != c.end() && *nz < 0)
    for (auto& v : c) v = -v;
  return c;
}

}  // namespace

std::vector<LinearConstraint> normalize_constraints(std::vector<LinearConstraint> rows) {
  std::set<IntVector> eqs;
  std::map<IntVector, Relation> ineqs;
  for (auto& r : rows) {
    IntVector c = primitive(std::span<const Integer>(r.coeffs));
    if (r.rel == Relation::Eq) {
      eqs.insert(sign_normalized(std::move(c)));
      continue;
    }
    auto [it, inserted] = ineqs.emplace(std::move(c), r.rel);
    if (!inserted && r.rel == Relation::Gt) it->second = Relation::Gt;
  }
  // c >= 0 together with -c >= 0 is the equality c = 0.
  for (const auto& [c, rel] : ineqs) {
    if (rel != Relation::Ge) continue;
    IntVector neg = c;
    for (auto& v : neg) v = -v;
    auto opp = ineqs.find(neg);
    if (opp != ineqs.end() && opp->second == Relation::Ge) eqs.insert(sign_normalized(c));
  }
  std::vector<LinearConstraint> out;
  for (const auto& c : eqs) out.push_back(eq(c));
  // Non-strict rows implied by an equality are dropped; strict ones stay so
  // that the contradiction remains visible.
  for (const auto& [c, rel] : ineqs) {
    if (rel == Relation::Ge && eqs.count(sign_normalized(c))) continue;
    out.push_back({c, rel});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.rel != b.rel) return static_cast<int>(a.rel) < static_cast<int>(b.rel);
    return a.coeffs < b.coeffs;
  });
  return out;
}

namespace {

struct Row {
  IntVector c;
  Relation rel;
};

bool is_zero_row(const Row& r) { return is_zero(std::span<const Integer>(r.c)); }

// Returns false when some row reads 0 > 0.
bool clean(std::vector<Row>& rows) {
  std::vector<LinearConstraint> lc;
  lc.reserve(rows.size());
  for (auto& r : rows) {
    if (is_zero_row(r)) {
      if (r.rel == Relation::Gt) return false;
      continue;
    }
    lc.push_back({std::move(r.c), r.rel});
  }
  lc = normalize_constraints(std::move(lc));
  rows.clear();
  for (auto& l : lc) rows.push_back({std::move(l.coeffs), l.rel});
  if (rows.size() > kFourierMotzkinRowCap) {
    throw Error(ErrorCode::UnsupportedForm, "Fourier-Motzkin row cap exceeded");
  }
  return true;
}

// o' = |c_k| o - sign(c_k) o_k c, which has zero k-th coefficient.
IntVector eliminate_with(const IntVector& o, const IntVector& c, std::size_t k) {
  Integer ck = abs(c[k]);
  int s = sign(c[k]);
  IntVector out(o.size());
  for (std::size_t j = 0; j < o.size(); ++j) out[j] = ck * o[j] - s * o[k] * c[j];
  return out;
}

struct Step {
  bool equality = false;
  std::size_t var = 0;
  IntVector c;            // the equality used (equality steps)
  std::vector<Row> rows;  // system at the moment var was eliminated (FM steps)
};

struct Elimination {
  bool feasible = true;
  std::vector<Step> steps;
  std::vector<Row> remaining;
};

// Eliminates every variable in `vars`. Equalities are always used first;
// normalization may turn opposite inequalities into new equalities later on.
Elimination eliminate(std::vector<Row> rows, std::size_t dim,
                      const std::vector<std::size_t>& vars, bool record) {
  Elimination out;
  if (!clean(rows)) {
    out.feasible = false;
    return out;
  }
  std::vector<bool> todo(dim, false);
  for (auto v : vars) todo[v] = true;

  for (;;) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& r) {
      if (r.rel != Relation::Eq) return false;
      for (std::size_t k = 0; k < r.c.size(); ++k)
        if (todo[k] && r.c[k] != 0) return true;
      return false;
    });
    if (it != rows.end()) {
      Row e = *it;
      rows.erase(it);
      std::size_t k = dim;
      for (std::size_t j = 0; j < dim; ++j) {
        if (!todo[j] || e.c[j] == 0) continue;
        if (k == dim || abs(e.c[j]) < abs(e.c[k])) k = j;
      }
      for (auto& r : rows)
        if (r.c[k] != 0) r.c = eliminate_with(r.c, e.c, k);
      if (record) out.steps.push_back({true, k, e.c, {}});
      todo[k] = false;
      if (!clean(rows)) {
        out.feasible = false;
        return out;
      }
      continue;
    }

    std::size_t best = dim;
    std::size_t best_cost = 0;
    for (std::size_t k = 0; k < dim; ++k) {
      if (!todo[k]) continue;
      std::size_t p = 0, n = 0;
      for (const auto& r : rows) {
        if (r.c[k] > 0) ++p;
        if (r.c[k] < 0) ++n;
      }
      std::size_t cost = p * n;
      if (best == dim || cost < best_cost) {
        best = k;
        best_cost = cost;
      }
    }
    if (best == dim) break;
    std::size_t k = best;
    if (record) out.steps.push_back({false, k, {}, rows});
    std::vector<Row> next;
    std::vector<const Row*> pos, neg;
    for (const auto& r : rows) {
      if (r.c[k] > 0) pos.push_back(&r);
      else if (r.c[k] < 0) neg.push_back(&r);
      else next.push_back(r);
    }
    for (const Row* p : pos) {
      for (const Row* n : neg) {
        Integer a = -n->c[k];
        Integer b = p->c[k];
        IntVector c(p->c.size());
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = a * p->c[j] + b * n->c[j];
        Relation rel = (p->rel == Relation::Gt || n->rel == Relation::Gt) ? Relation::Gt
                                                                          : Relation::Ge;
        next.push_back({std::move(c), rel});
      }
    }
    rows = std::move(next);
    todo[k] = false;
    if (!clean(rows)) {
      out.feasible = false;
      return out;
    }
  }
  out.remaining = std::move(rows);
  return out;
}

Rational floor_of(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return Rational(f);
}

Rational ceil_of(const Rational& q) { return -floor_of(-q); }

RatVector back_substitute(const Elimination& el, std::size_t dim) {
  RatVector x(dim, Rational(0));
  for (auto it = el.steps.rbegin(); it != el.steps.rend(); ++it) {
    const std::size_t k = it->var;
    if (it->equality) {
      Rational rest = 0;
      for (std::size_t j = 0; j < dim; ++j)
        if (j != k) rest += Rational(it->c[j]) * x[j];
      x[k] = -rest / Rational(it->c[k]);
      continue;
    }
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : it->rows) {
      if (r.c[k] == 0) continue;
      Rational rest = 0;
      for (std::size_t j = 0; j < dim; ++j)
        if (j != k) rest += Rational(r.c[j]) * x[j];
      Rational bound = -rest / Rational(r.c[k]);
      bool strict = r.rel == Relation::Gt;
      if (r.c[k] > 0) {
        if (!lo || bound > *lo) {
          lo = bound;
          lo_strict = strict;
        } else if (bound == *lo) {
          lo_strict = lo_strict || strict;
        }
      } else {
        if (!hi || bound < *hi) {
          hi = bound;
          hi_strict = strict;
        } else if (bound == *hi) {
          hi_strict = hi_strict || strict;
        }
      }
    }
    Rational v = 0;
    if (lo && hi) {
      if (!lo_strict) v = *lo;
      else if (!hi_strict) v = *hi;
      else v = (*lo + *hi) / 2;
    } else if (lo) {
      v = lo_strict ? floor_of(*lo) + 1 : *lo;
    } else if (hi) {
      v = hi_strict ? ceil_of(*hi) - 1 : *hi;
    }
    x[k] = v;
  }
  return x;
}

std::vector<Row> to_rows(const std::vector<LinearConstraint>& cs, std::size_t dim) {
  std::vector<Row> rows;
  rows.reserve(cs.size());
  for (const auto& c : cs) {
    if (c.coeffs.size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "constraint length does not match dimension");
    }
    rows.push_back({c.coeffs, c.rel});
  }
  return rows;
}

LpResult solve(std::vector<Row> rows, std::size_t dim) {
  std::vector<std::size_t> vars(dim);
  for (std::size_t i = 0; i < dim; ++i) vars[i] = i;
  if (rows.empty()) return {true, RatVector(dim, Rational(0))};
  Elimination el = eliminate(std::move(rows), dim, vars, true);
  if (!el.feasible) return {};
  return {true, back_substitute(el, dim)};
}

}  // namespace

LpResult lp_feasible(const std::vector<LinearConstraint>& constraints, std::size_t dim,
                     bool require_nonzero) {
  std::vector<Row> rows = to_rows(constraints, dim);
  if (!require_nonzero) return solve(std::move(rows), dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (int s : {1, -1}) {
      std::vector<Row> branch = rows;
      IntVector unit(dim, Integer(0));
      unit[k] = s;
      branch.push_back({unit, Relation::Gt});
      LpResult r = solve(std::move(branch), dim);
      if (r.feasible) return r;
    }
  }
  return {};
}

std::vector<LinearConstraint> fm_project(const std::vector<LinearConstraint>& constraints,
                                         std::size_t dim, std::size_t keep) {
  std::vector<Row> rows = to_rows(constraints, dim);
  std::vector<std::size_t> vars;
  for (std::size_t k = keep; k < dim; ++k) vars.push_back(k);
  std::vector<LinearConstraint> out;
  if (rows.empty()) return out;
  Elimination el = eliminate(std::move(rows), dim, vars, false);
  if (!el.feasible) {
    out.push_back(gt(IntVector(keep, Integer(0))));
    return out;
  }
  for (auto& r : el.remaining) {
    IntVector c(r.c.begin(), r.c.begin() + static_cast<std::ptrdiff_t>(keep));
    out.push_back({std::move(c), r.rel});
  }
  return normalize_constraints(std::move(out));
}

}  // namespace sok
