#include "sok/group/finite_group.hpp"

#include "sok/error.hpp"
#include "sok/group/abelianization.hpp"

#include <deque>

namespace sok {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::size_t column(Letter l) { return 2 * l.generator + (l.sign < 0 ? 1 : 0); }

// HLT coset enumeration with coincidence processing.
class Enumerator {
 public:
  Enumerator(const Presentation& p, std::size_t cap)
      : cols_(2 * p.generator_count()), cap_(cap), total_cap_(64 * cap + 1024) {
    for (const auto& r : p.relators()) {
      std::vector<std::size_t> w;
      for (const auto& l : r) w.push_back(column(l));
      relators_.push_back(std::move(w));
    }
    define_new();
  }

  std::vector<std::vector<std::size_t>> run() {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      for (const auto& r : relators_) {
        if (!alive(c)) break;
        scan_and_fill(c, r);
      }
      for (std::size_t x = 0; x < cols_ && alive(c); ++x)
        if (table_[c][x] == kNone) define(c, x);
    }
    return compact();
  }

 private:
  bool alive(std::size_t c) const { return parent_[c] == c; }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::size_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  std::size_t define_new() {
    if (table_.size() >= total_cap_) {
      throw Error(ErrorCode::FiniteEnumerationCap, "coset enumeration exceeded its budget");
    }
    table_.emplace_back(cols_, kNone);
    parent_.push_back(table_.size() - 1);
    if (++live_ > cap_) {
      throw Error(ErrorCode::FiniteEnumerationCap,
                  "more than " + std::to_string(cap_) + " elements; group treated as infinite");
    }
    return table_.size() - 1;
  }

  void define(std::size_t c, std::size_t x) {
    std::size_t d = define_new();
    table_[c][x] = d;
    table_[d][x ^ 1] = c;
  }

  void scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    std::size_t f = c, b = c;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    for (;;) {
      while (i <= j && table_[f][w[i]] != kNone) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][w[j] ^ 1] != kNone) b = table_[b][w[j--] ^ 1];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][w[i] ^ 1] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void merge(std::size_t k, std::size_t l, std::deque<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    --live_;
    queue.push_back(l);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      std::size_t e = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < cols_; ++x) {
        std::size_t f = table_[e][x];
        if (f == kNone) continue;
        if (table_[f][x ^ 1] == e) table_[f][x ^ 1] = kNone;
        std::size_t mu = rep(e), nu = rep(f);
        if (table_[mu][x] != kNone) {
          merge(nu, table_[mu][x], queue);
        } else if (table_[nu][x ^ 1] != kNone) {
          merge(mu, table_[nu][x ^ 1], queue);
        } else {
          table_[mu][x] = nu;
          table_[nu][x ^ 1] = mu;
        }
      }
    }
  }

  // Renumbers live cosets breadth-first from coset 0.
  std::vector<std::vector<std::size_t>> compact() {
    std::vector<std::size_t> number(table_.size(), kNone);
    std::vector<std::size_t> order{0};
    number[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t x = 0; x < cols_; ++x) {
        std::size_t d = rep(table_[order[i]][x]);
        if (number[d] == kNone) {
          number[d] = order.size();
          order.push_back(d);
        }
      }
    }
    std::vector<std::vector<std::size_t>> out(order.size(), std::vector<std::size_t>(cols_));
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t x = 0; x < cols_; ++x) out[i][x] = number[rep(table_[order[i]][x])];
    return out;
  }

  std::size_t cols_;
  std::size_t cap_;
  std::size_t total_cap_;
  std::size_t live_ = 0;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> parent_;
};

}  // namespace

FiniteGroup FiniteGroup::enumerate(const Presentation& p, std::size_t cap) {
  FiniteGroup g;
  g.gens_ = p.generator_count();
  if (g.gens_ == 0) {
    g.table_ = {{}};
    return g;
  }
  if (p.relators().empty()) {
    throw Error(ErrorCode::FiniteEnumerationCap, "free group of positive rank is infinite");
  }
  g.table_ = Enumerator(p, cap).run();
  return g;
}

std::size_t FiniteGroup::multiply(std::size_t element, Letter l) const {
  return table_.at(element).at(column(l));
}

std::size_t FiniteGroup::evaluate(std::span<const Letter> w, std::size_t start) const {
  std::size_t e = start;
  for (const auto& l : w) e = multiply(e, l);
  return e;
}

WordOracle::WordOracle(const Presentation& p, std::size_t cap) : p_(p) {
  try {
    finite_ = FiniteGroup::enumerate(p, cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FiniteEnumerationCap) throw;
  }
  auto ab = abelianization(p);
  projection_ = ab.projection;
  torsion_ = ab.torsion;
}

std::optional<std::size_t> WordOracle::order() const {
  if (finite_) return finite_->order();
  return std::nullopt;
}

bool WordOracle::is_trivial(std::span<const Letter> w) const {
  if (finite_) return finite_->is_identity(w);
  if (p_.relators().empty()) return free_reduce(w).empty();
  auto e = exponent_vector(w, p_.generator_count());
  for (std::size_t i = 0; i < projection_.rows(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < e.size(); ++j) s += projection_(i, j) * e[j];
    if (s != 0) return false;
  }
  throw Error(ErrorCode::Undecidable,
              "cannot decide triviality of '" + p_.format(w) + "' in an infinite presented group");
}

}  // namespace sok
