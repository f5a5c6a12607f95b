#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "tvlab/core/matrix.hpp"

namespace tvlab {

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearConstraint {
  RealVector coeffs;  // one per variable
  Relation relation = Relation::LessEq;
  Rational rhs{0};
};

/// Feasibility problem over Q. Variables are free unless flagged nonnegative.
struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<bool> nonneg;  // size num_vars
  std::vector<LinearConstraint> constraints;

  explicit LinearSystem(std::size_t vars = 0, bool all_nonneg = false)
      : num_vars(vars), nonneg(vars, all_nonneg) {}

  std::size_t add_var(bool is_nonneg);
  /// Sparse convenience: (variable, coefficient) pairs.
  void add(std::initializer_list<std::pair<std::size_t, Rational>> terms, Relation rel,
           Rational rhs);
  void add(LinearConstraint c);
};

/// Exact LP verdict. Feasible answers carry a solution satisfying every
/// constraint; infeasible answers carry Farkas multipliers y (one per
/// constraint, y >= 0 on inequalities) such that combining the constraints in
/// "<=" orientation gives g.x <= beta with g = 0 on free variables, g >= 0 on
/// nonnegative variables and beta < 0.
struct LPResult {
  bool feasible = false;
  RealVector solution;
  RealVector certificate;
  /// Geometric meaning of the solution, filled by geometry predicates (the
  /// common point, the point on the flat, ...). Empty for raw solves.
  RealVector point;
  std::shared_ptr<const LinearSystem> system;
};

/// Phase-1 simplex with Bland's rule in exact arithmetic. Certificates and
/// witnesses are validated before return; a failed validation throws
/// ConsistencyError.
LPResult lp_feasible(const LinearSystem& system);

bool satisfies(const LinearSystem& system, const RealVector& x);
bool is_farkas_certificate(const LinearSystem& system, const RealVector& y);

/// Counters over every solve in the process.
struct LPStats {
  std::uint64_t solves = 0;
  std::uint64_t infeasible = 0;
  std::uint64_t certificates_validated = 0;
  std::uint64_t validation_failures = 0;
};
LPStats lp_stats();
void reset_lp_stats();

/// Called after each solve (from the solving thread). Used by audits that
/// re-check every certificate independently. Pass nullptr to clear.
void set_lp_observer(std::function<void(const LPResult&)> observer);

}  // namespace tvlab
