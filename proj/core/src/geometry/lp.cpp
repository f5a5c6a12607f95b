#include "tvlab/geometry/lp.hpp"

#include <atomic>
#include <mutex>

#include "tvlab/core/error.hpp"

namespace tvlab {

namespace {

std::atomic<std::uint64_t> g_solves{0};
std::atomic<std::uint64_t> g_infeasible{0};
std::atomic<std::uint64_t> g_validated{0};
std::atomic<std::uint64_t> g_failures{0};

std::mutex g_observer_mutex;
std::function<void(const LPResult&)> g_observer;

/// Constraint i rewritten as a.x (+ s) = b with a "<=" orientation for
/// inequalities: GreaterEq rows are negated.
struct Oriented {
  RealVector a;
  Rational b;
  bool has_slack;
};

Oriented orient(const LinearConstraint& c) {
  Oriented o{c.coeffs, c.rhs, c.relation != Relation::Equal};
  if (c.relation == Relation::GreaterEq) {
    for (auto& v : o.a) v = -v;
    o.b = -o.b;
  }
  return o;
}

void check_shape(const LinearSystem& s) {
  if (s.nonneg.size() != s.num_vars) throw InputError("nonneg flags do not match variable count");
  for (const auto& c : s.constraints) {
    if (c.coeffs.size() != s.num_vars) throw InputError("constraint width does not match variable count");
  }
}

}  // namespace

std::size_t LinearSystem::add_var(bool is_nonneg) {
  nonneg.push_back(is_nonneg);
  for (auto& c : constraints) c.coeffs.emplace_back(0);
  return num_vars++;
}

void LinearSystem::add(std::initializer_list<std::pair<std::size_t, Rational>> terms, Relation rel,
                       Rational rhs) {
  LinearConstraint c;
  c.coeffs.assign(num_vars, Rational(0));
  for (const auto& [var, coef] : terms) {
    if (var >= num_vars) throw InputError("constraint references unknown variable");
    c.coeffs[var] += coef;
  }
  c.relation = rel;
  c.rhs = std::move(rhs);
  constraints.push_back(std::move(c));
}

void LinearSystem::add(LinearConstraint c) {
  if (c.coeffs.size() != num_vars) throw InputError("constraint width does not match variable count");
  constraints.push_back(std::move(c));
}

bool satisfies(const LinearSystem& s, const RealVector& x) {
  if (x.size() != s.num_vars) return false;
  for (std::size_t j = 0; j < s.num_vars; ++j) {
    if (s.nonneg[j] && x[j] < 0) return false;
  }
  for (const auto& c : s.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < s.num_vars; ++j) {
      if (c.coeffs[j] != 0 && x[j] != 0) lhs += c.coeffs[j] * x[j];
    }
    switch (c.relation) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

bool is_farkas_certificate(const LinearSystem& s, const RealVector& y) {
  if (y.size() != s.constraints.size()) return false;
  RealVector g(s.num_vars, Rational(0));
  Rational beta = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    const auto& c = s.constraints[i];
    if (c.relation != Relation::Equal && y[i] < 0) return false;
    Oriented o = orient(c);
    for (std::size_t j = 0; j < s.num_vars; ++j) {
      if (o.a[j] != 0) g[j] += y[i] * o.a[j];
    }
    beta += y[i] * o.b;
  }
  for (std::size_t j = 0; j < s.num_vars; ++j) {
    if (s.nonneg[j] ? g[j] < 0 : g[j] != 0) return false;
  }
  return beta < 0;
}

LPResult lp_feasible(const LinearSystem& system) {
  check_shape(system);
  const std::size_t m = system.constraints.size();
  const std::size_t n = system.num_vars;

  // Structural columns: one per nonneg variable, two per free variable, one
  // slack per inequality.
  std::vector<std::size_t> pos_col(n);
  std::vector<std::size_t> neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (!system.nonneg[j]) neg_col[j] = cols++;
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (system.constraints[i].relation != Relation::Equal) slack_col[i] = cols++;
  }
  const std::size_t structural = cols;
  const std::size_t total = structural + m;  // plus artificials
  const std::size_t rhs = total;

  std::vector<RealVector> t(m, RealVector(total + 1, Rational(0)));
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    Oriented o = orient(system.constraints[i]);
    sign[i] = o.b < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.a[j] == 0) continue;
      Rational v = sign[i] * o.a[j];
      t[i][pos_col[j]] = v;
      if (neg_col[j] != SIZE_MAX) t[i][neg_col[j]] = -v;
    }
    if (slack_col[i] != SIZE_MAX) t[i][slack_col[i]] = sign[i];
    t[i][structural + i] = 1;
    t[i][rhs] = sign[i] * o.b;
  }

  // Phase-1 cost row: reduced costs and (negated) objective.
  RealVector cost(total + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < structural; ++j) {
      if (t[i][j] != 0) cost[j] -= t[i][j];
    }
    cost[rhs] -= t[i][rhs];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = structural + i;

  for (;;) {
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == total) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave == m) throw ConsistencyError("phase-1 simplex is unbounded");

    Rational inv = 1 / t[leave][enter];
    for (auto& v : t[leave]) {
      if (v != 0) v *= inv;
    }
    const RealVector& prow = t[leave];
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j) {
        if (prow[j] != 0) t[i][j] -= f * prow[j];
      }
    }
    if (cost[enter] != 0) {
      Rational f = cost[enter];
      for (std::size_t j = 0; j <= total; ++j) {
        if (prow[j] != 0) cost[j] -= f * prow[j];
      }
    }
    basis[leave] = enter;
  }

  auto result_system = std::make_shared<const LinearSystem>(system);
  LPResult result;
  result.system = result_system;
  ++g_solves;

  // Optimum value is -cost[rhs].
  if (cost[rhs] == 0) {
    RealVector z(structural, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < structural) z[basis[i]] = t[i][rhs];
    }
    result.feasible = true;
    result.solution.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      result.solution[j] = z[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) result.solution[j] -= z[neg_col[j]];
    }
    if (!satisfies(system, result.solution)) {
      throw ConsistencyError("simplex witness violates the system");
    }
  } else {
    ++g_infeasible;
    // Phase-1 duals u_k = 1 - reduced cost of artificial k; Farkas w = -u.
    result.feasible = false;
    result.certificate.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational u = 1 - cost[structural + i];
      result.certificate[i] = -u * sign[i];
    }
    // Scale to a primitive integer vector.
    Integer g = 0;
    Integer l = 1;
    for (const auto& y : result.certificate) {
      if (y == 0) continue;
      g = gcd(g, numerator(y));
      l = lcm(l, denominator(y));
    }
    if (g != 0) {
      Rational scale(l, g);
      for (auto& y : result.certificate) y *= scale;
    }
    if (!is_farkas_certificate(system, result.certificate)) {
      ++g_failures;
      throw ConsistencyError("Farkas certificate failed validation");
    }
    ++g_validated;
  }

  std::function<void(const LPResult&)> obs;
  {
    std::lock_guard<std::mutex> lock(g_observer_mutex);
    obs = g_observer;
  }
  if (obs) obs(result);
  return result;
}

LPStats lp_stats() {
  return {g_solves.load(), g_infeasible.load(), g_validated.load(), g_failures.load()};
}

void reset_lp_stats() {
  g_solves = 0;
  g_infeasible = 0;
  g_validated = 0;
  g_failures = 0;
}

void set_lp_observer(std::function<void(const LPResult&)> observer) {
  std::lock_guard<std::mutex> lock(g_observer_mutex);
  g_observer = std::move(observer);
}

}  // namespace tvlab
