#include "oracles.hpp"

#include <deque>
#include <functional>

namespace vass::oracle {

std::optional<std::vector<Rational>> gauss(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

namespace {

bool row_holds(const Row& r, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < x.size(); ++i) lhs += r.a[i] * x[i];
  switch (r.rel) {
    case lp::Relation::Eq: return lhs == r.b;
    case lp::Relation::Geq: return lhs >= r.b;
    case lp::Relation::Leq: return lhs <= r.b;
  }
  return false;
}

}  // namespace

std::optional<Rational> vertex_optimum(const std::vector<Row>& rows_in, std::size_t n,
                                       const std::vector<Rational>& objective, bool maximize) {
  std::vector<Row> rows = rows_in;
  for (std::size_t i = 0; i < n; ++i) {
    Row r;
    r.a.assign(n, 0);
    r.a[i] = 1;
    rows.push_back(r);
  }
  std::optional<Rational> best;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (pick.size() == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (auto i : pick) {
        a.push_back(rows[i].a);
        b.push_back(rows[i].b);
      }
      auto x = gauss(a, b);
      if (!x) return;
      for (const auto& r : rows) {
        if (!row_holds(r, *x)) return;
      }
      Rational v = 0;
      for (std::size_t i = 0; i < n; ++i) v += objective[i] * (*x)[i];
      if (!best || (maximize ? v > *best : v < *best)) best = v;
      return;
    }
    for (std::size_t i = next; i < rows.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

std::vector<MdStrategy> all_md_strategies(const VassMdp& m) {
  std::vector<MdStrategy> result{MdStrategy{}};
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    if (m.is_prob(p)) continue;
    std::vector<MdStrategy> next;
    for (const auto& s : result) {
      for (auto t : m.out(p)) {
        MdStrategy e = s;
        e.choice[m.state(p).name] = m.transition(t).id;
        next.push_back(std::move(e));
      }
    }
    result = std::move(next);
  }
  return result;
}

Rational chain_reach(const VassMdp& m, const MdStrategy& s, const std::vector<bool>& target,
                     const std::vector<bool>& avoid, std::size_t start) {
  const std::size_t n = m.num_states();
  auto step = [&](std::size_t p) {
    std::vector<std::pair<std::size_t, Rational>> r;
    for (auto t : m.out(p)) {
      if (m.is_prob(p)) {
        r.emplace_back(m.target(t), *m.transition(t).prob);
      } else if (s.choice.at(m.state(p).name) == m.transition(t).id) {
        r.emplace_back(m.target(t), 1);
      }
    }
    return r;
  };
  // States with positive reach probability (forward closure check per state).
  std::vector<bool> can(n, false);
  for (std::size_t p = 0; p < n; ++p) can[p] = target[p];
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (can[p] || avoid[p]) continue;
      for (auto& [q, w] : step(p)) {
        if (can[q]) {
          can[p] = true;
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<std::size_t> idx(n, n), vars;
  for (std::size_t p = 0; p < n; ++p) {
    if (can[p] && !target[p]) {
      idx[p] = vars.size();
      vars.push_back(p);
    }
  }
  if (target[start]) return 1;
  if (!can[start]) return 0;
  std::vector<std::vector<Rational>> a(vars.size(), std::vector<Rational>(vars.size()));
  std::vector<Rational> b(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    a[i][i] += 1;
    for (auto& [q, w] : step(vars[i])) {
      if (target[q]) {
        b[i] += w;
      } else if (idx[q] != n) {
        a[i][idx[q]] -= w;
      }
    }
  }
  auto x = gauss(a, b);
  return (*x)[idx[start]];
}

Rational brute_max_reach(const VassMdp& m, const std::vector<graph::Mec>& mecs, std::size_t from,
                         std::size_t to) {
  std::vector<bool> target(m.num_states(), false), avoid(m.num_states(), false);
  for (std::size_t i = 0; i < mecs.size(); ++i) {
    for (auto p : mecs[i].states) {
      if (i == to) target[p] = true;
      if (i != to && i != from) avoid[p] = true;
    }
  }
  Rational best = 0;
  for (const auto& s : all_md_strategies(m)) {
    const Rational v = chain_reach(m, s, target, avoid, mecs[from].states.front());
    if (v > best) best = v;
  }
  return best;
}

}  // namespace vass::oracle
