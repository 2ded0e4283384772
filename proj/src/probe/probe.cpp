#include "sok/error.hpp"
#include "sok/probe/probe.hpp"

#include <algorithm>
#include <numeric>

namespace sok {

Ball build_ball(const GroupModel& model, std::size_t radius, std::size_t cap) {
  Ball b;
  const std::size_t gens = model.generator_count();
  std::vector<RatVector> steps;
  for (std::size_t g = 0; g < gens; ++g) steps.push_back(model.generator_height(g));

  auto add = [&](Element e, std::size_t dist, RatVector h) {
    if (b.vertices.size() >= cap)
      throw Error(ErrorCode::BallTooLarge, "ball of radius " + std::to_string(radius) + " exceeds " +
                                               std::to_string(cap) + " vertices");
    b.index.emplace(e, b.vertices.size());
    b.vertices.push_back(std::move(e));
    b.distance.push_back(dist);
    b.heights.push_back(std::move(h));
  };
  add(model.identity(), 0, RatVector(model.hom_dim(), Rational(0)));

  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    if (b.distance[i] == radius) continue;
    for (std::size_t g = 0; g < gens; ++g)
      for (std::int8_t sign : {std::int8_t{1}, std::int8_t{-1}}) {
        Element next = model.multiply(b.vertices[i], Letter{static_cast<std::uint32_t>(g), sign});
        if (b.index.count(next)) continue;
        RatVector h = b.heights[i];
        for (std::size_t c = 0; c < h.size(); ++c) h[c] += sign > 0 ? steps[g][c] : -steps[g][c];
        add(std::move(next), b.distance[i] + 1, std::move(h));
      }
  }

  b.adjacency.assign(b.vertices.size(), {});
  for (std::size_t i = 0; i < b.vertices.size(); ++i)
    for (std::size_t g = 0; g < gens; ++g) {
      auto it = b.index.find(model.multiply(b.vertices[i], Letter{static_cast<std::uint32_t>(g), 1}));
      if (it == b.index.end()) continue;
      b.edges.emplace_back(i, it->second);
      b.adjacency[i].push_back(it->second);
      if (it->second != i) b.adjacency[it->second].push_back(i);
    }
  return b;
}

std::string_view to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::EvidenceConnected:
      return "EvidenceConnected";
    case ProbeVerdict::EvidenceDisconnected:
      return "EvidenceDisconnected";
    case ProbeVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

namespace {

// <c,h> >= s |c| without square roots.
bool half_space(const Rational& f, const Rational& norm2, const Rational& s) {
  if (s <= 0) return f >= 0 || f * f <= s * s * norm2;
  return f >= 0 && f * f >= s * s * norm2;
}

// Truncated cone at level s; below level 0 the cone is the closed half-space f >= 0.
bool cone(const Rational& f, const Rational& h2, const Rational& norm2, const Rational& s) {
  if (f < 0) return false;
  if (s <= 0) return true;
  return f * f >= s * s * norm2 && (1 + s * s) * f * f >= s * s * norm2 * h2;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

enum class Shape { HalfSpace, Cone };

struct Prepared {
  RatVector c;
  Rational norm2;
  std::vector<Rational> f, h2;
  std::vector<std::size_t> order;  // membership is a prefix of this order at every level
};

Prepared prepare(const GroupModel& model, const Ball& ball, std::span<const Rational> chi, Shape shape) {
  Prepared p;
  p.c = model.embed_character(chi);
  p.norm2 = dot(p.c, p.c);
  bool degenerate = true;
  for (std::size_t g = 0; g < model.generator_count(); ++g)
    if (dot(p.c, model.generator_height(g)) != 0) degenerate = false;
  if (degenerate)
    throw Error(ErrorCode::DegenerateCharacter, "character vanishes on every generator of " + model.name());
  const std::size_t n = ball.vertices.size();
  p.f.resize(n);
  p.h2.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    p.f[v] = dot(p.c, ball.heights[v]);
    p.h2[v] = dot(ball.heights[v], ball.heights[v]);
  }
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0);
  if (shape == Shape::HalfSpace) {
    std::stable_sort(p.order.begin(), p.order.end(), [&](auto a, auto b) { return p.f[a] > p.f[b]; });
  } else {
    // Entry level squared: min(f^2/|c|^2, f^2/(|c|^2|h|^2 - f^2)); vertices with f < 0 never enter.
    std::vector<std::optional<Rational>> key(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (p.f[v] < 0) continue;
      Rational a = p.f[v] * p.f[v] / p.norm2;
      Rational d = p.norm2 * p.h2[v] - p.f[v] * p.f[v];
      key[v] = d > 0 ? std::min(a, Rational(p.f[v] * p.f[v] / d)) : a;
    }
    std::stable_sort(p.order.begin(), p.order.end(), [&](auto a, auto b) {
      if (!key[a] || !key[b]) return key[a].has_value() && !key[b].has_value();
      return *key[a] > *key[b];
    });
  }
  return p;
}

bool member(const Prepared& p, Shape shape, std::size_t v, const Rational& s) {
  return shape == Shape::HalfSpace ? half_space(p.f[v], p.norm2, s) : cone(p.f[v], p.h2[v], p.norm2, s);
}

ProbeLevel analyze(const GroupModel& model, const Ball& ball, const Prepared& p, Shape shape,
                   const Rational& s, const Rational& step) {
  const std::size_t n = ball.vertices.size();
  ProbeLevel lvl;
  lvl.s = s;
  UnionFind uf(n);
  std::vector<bool> in(n, false);
  std::size_t added = 0;
  auto grow = [&](const Rational& level) {
    while (added < n && member(p, shape, p.order[added], level)) {
      std::size_t v = p.order[added++];
      in[v] = true;
      for (auto w : ball.adjacency[v])
        if (in[w]) uf.unite(v, w);
    }
  };
  grow(s);
  const std::size_t top = added;
  lvl.vertices = top;
  std::vector<std::size_t> members(p.order.begin(), p.order.begin() + static_cast<std::ptrdiff_t>(top));
  std::sort(members.begin(), members.end());
  {
    std::vector<std::size_t> roots;
    for (auto v : members) roots.push_back(uf.find(v));
    std::sort(roots.begin(), roots.end());
    lvl.components = static_cast<std::size_t>(std::unique(roots.begin(), roots.end()) - roots.begin());
  }
  if (lvl.components <= 1) {
    lvl.lambda = Rational(0);
    return lvl;
  }

  auto first_apart = [&]() -> std::optional<std::size_t> {
    std::size_t r = uf.find(members.front());
    for (auto v : members)
      if (uf.find(v) != r) return v;
    return std::nullopt;
  };

  std::optional<std::size_t> apart = first_apart();
  Rational lambda = 0;
  for (;;) {
    lambda += step;
    Rational level = s - lambda;
    std::size_t before = added;
    grow(level);
    auto next = first_apart();
    if (!next) {
      lvl.lambda = lambda;
      break;
    }
    apart = next;
    bool exhausted = added == n || (shape == Shape::Cone && level <= 0);
    if (exhausted && added == before) break;
  }
  lvl.witness = std::make_pair(members.front(), *apart);
  lvl.witness_forms = {model.format(ball.vertices[members.front()]), model.format(ball.vertices[*apart])};
  return lvl;
}

// Smallest multiple of `step` that is >= 2 * max_g |<c, h(g)>| / |c|.
Rational tolerance(const GroupModel& model, const Prepared& p, const Rational& step) {
  Rational best = 0;
  for (std::size_t g = 0; g < model.generator_count(); ++g) {
    Rational f = abs(dot(p.c, model.generator_height(g)));
    best = std::max(best, f);
  }
  Rational t = 0;
  while (t * t * p.norm2 < 4 * best * best) t += step;
  return t;
}

ProbeReport run(const GroupModel& model, const Ball& ball, std::span<const Rational> chi,
                std::size_t radius, std::vector<Rational> grid, const ProbeOptions& opt, Shape shape) {
  if (opt.lambda_step <= 0) throw Error(ErrorCode::InvalidSpec, "lambda step must be positive");
  if (grid.empty()) throw Error(ErrorCode::InvalidSpec, "empty s-grid");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (shape == Shape::Cone && grid.front() < 0)
    throw Error(ErrorCode::InvalidSpec, "truncated cones need s >= 0");

  Prepared p = prepare(model, ball, chi, shape);
  ProbeReport r;
  r.kind = shape == Shape::HalfSpace ? "sigma" : "omega";
  r.model = model.name();
  r.character.assign(chi.begin(), chi.end());
  r.radius = radius;
  r.grid = grid;
  r.lambda_step = opt.lambda_step;
  r.tolerance = tolerance(model, p, opt.lambda_step);
  r.ball_vertices = ball.vertices.size();
  for (const auto& s : grid) r.levels.push_back(analyze(model, ball, p, shape, s, opt.lambda_step));

  bool never = false, bounded = true;
  std::optional<Rational> pinned;
  for (const auto& l : r.levels) {
    if (!l.lambda) {
      never = true;
      continue;
    }
    if (*l.lambda > r.tolerance) {
      bounded = false;
      if (l.s - *l.lambda <= 0) pinned = l.s;
    }
  }
  if (never) {
    r.verdict = ProbeVerdict::EvidenceDisconnected;
    r.reason = "a witness pair never reconnects inside the ball";
  } else if (bounded) {
    r.verdict = ProbeVerdict::EvidenceConnected;
    r.reason = "lambda stays within " + format_rational(r.tolerance) + " on the whole grid";
  } else if (pinned) {
    r.verdict = ProbeVerdict::EvidenceDisconnected;
    r.reason = "at s = " + format_rational(*pinned) + " a witness pair reconnects only at height <= 0";
  } else {
    r.verdict = ProbeVerdict::Inconclusive;
    r.reason = "lambda exceeds " + format_rational(r.tolerance) + " but reconnection level rises";
  }
  return r;
}

}  // namespace

bool in_half_space(std::span<const Rational> c, std::span<const Rational> h, const Rational& s) {
  return half_space(dot(c, h), dot(c, c), s);
}

bool in_truncated_cone(std::span<const Rational> c, std::span<const Rational> h, const Rational& s) {
  return cone(dot(c, h), dot(h, h), dot(c, c), s);
}

ProbeReport sigma_probe(const GroupModel& model, const Ball& ball, std::span<const Rational> chi,
                        std::size_t radius, std::vector<Rational> grid, const ProbeOptions& opt) {
  return run(model, ball, chi, radius, std::move(grid), opt, Shape::HalfSpace);
}

ProbeReport omega_probe(const GroupModel& model, const Ball& ball, std::span<const Rational> chi,
                        std::size_t radius, std::vector<Rational> grid, const ProbeOptions& opt) {
  return run(model, ball, chi, radius, std::move(grid), opt, Shape::Cone);
}

ProbeReport sigma_probe(const GroupModel& model, std::span<const Rational> chi, std::size_t radius,
                        std::vector<Rational> grid, const ProbeOptions& opt) {
  Ball ball = build_ball(model, radius, opt.cap);
  return sigma_probe(model, ball, chi, radius, std::move(grid), opt);
}

ProbeReport omega_probe(const GroupModel& model, std::span<const Rational> chi, std::size_t radius,
                        std::vector<Rational> grid, const ProbeOptions& opt) {
  Ball ball = build_ball(model, radius, opt.cap);
  return omega_probe(model, ball, chi, radius, std::move(grid), opt);
}

nlohmann::json to_json(const ProbeReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) {
    nlohmann::json j{{"s", format_rational(l.s)},
                     {"vertices", l.vertices},
                     {"components", l.components},
                     {"lambda", l.lambda ? nlohmann::json(format_rational(*l.lambda)) : nlohmann::json(nullptr)}};
    if (l.witness)
      j["witness"] = {{"vertices", {l.witness->first, l.witness->second}}, {"normal_forms", l.witness_forms}};
    levels.push_back(std::move(j));
  }
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& s : r.grid) grid.push_back(format_rational(s));
  IntVector ray = primitive(std::span<const Rational>(r.character));
  return {{"kind", r.kind},
          {"model", r.model},
          {"character", vector_to_json(std::span<const Integer>(ray))},
          {"radius", r.radius},
          {"grid", grid},
          {"lambda_step", format_rational(r.lambda_step)},
          {"tolerance", format_rational(r.tolerance)},
          {"ball_vertices", r.ball_vertices},
          {"levels", levels},
          {"verdict", std::string(to_string(r.verdict))},
          {"reason", r.reason}};
}

}  // namespace sok
