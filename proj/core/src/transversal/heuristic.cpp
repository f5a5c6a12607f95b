// Float search for k-flat transversals. Nothing computed here is trusted: a
// candidate only counts once the exact LP and flat_meets_polytope accept it.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "tvlab/core/error.hpp"
#include "tvlab/core/rng.hpp"
#include "tvlab/transversal/transversal.hpp"

namespace tvlab {

namespace {

using cd = std::complex<double>;
template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

double to_double(const Rational& q) { return q.convert_to<double>(); }

template <class T>
T to_t(const FieldScalar& z);
template <>
double to_t<double>(const FieldScalar& z) {
  return to_double(z.re());
}
template <>
cd to_t<cd>(const FieldScalar& z) {
  return {to_double(z.re()), to_double(z.im())};
}

template <class T>
double real_dot(const Vec<T>& a, const Vec<T>& b) {
  return std::real(a.dot(b));
}

/// Wolfe's min-norm-point method: the point of conv(columns of Y) closest to
/// the origin, returned as barycentric weights.
template <class T>
Eigen::VectorXd min_norm_point(const Mat<T>& y) {
  const Eigen::Index n = y.cols();
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Index> active;
  {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (y.col(i).squaredNorm() < y.col(best).squaredNorm()) best = i;
    }
    active.push_back(best);
    lambda(best) = 1;
  }
  double scale = 0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, y.col(i).squaredNorm());
  const double eps = 1e-12 * std::max(scale, 1e-300);

  for (int major = 0; major < 200; ++major) {
    Vec<T> x = y * lambda.cast<T>();
    Eigen::Index j = 0;
    double best = real_dot<T>(x, y.col(0));
    for (Eigen::Index i = 1; i < n; ++i) {
      double v = real_dot<T>(x, y.col(i));
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (x.squaredNorm() - best <= eps) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);

    for (int minor = 0; minor < 200; ++minor) {
      // Affine minimizer on the active set: [G 1; 1^T 0] [mu; theta] = [0; 1].
      const Eigen::Index m = static_cast<Eigen::Index>(active.size());
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
      for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
          kkt(a, b) = real_dot<T>(y.col(active[static_cast<std::size_t>(a)]), y.col(active[static_cast<std::size_t>(b)]));
        }
        kkt(a, m) = 1;
        kkt(m, a) = 1;
      }
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
      rhs(m) = 1;
      Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      Eigen::VectorXd mu = sol.head(m);
      if ((mu.array() > 1e-14).all()) {
        lambda.setZero();
        for (Eigen::Index a = 0; a < m; ++a) lambda(active[static_cast<std::size_t>(a)]) = mu(a);
        break;
      }
      // Step toward mu until a weight hits zero, then drop it.
      double t = 1;
      for (Eigen::Index a = 0; a < m; ++a) {
        const double l = lambda(active[static_cast<std::size_t>(a)]);
        if (mu(a) <= 1e-14 && l - mu(a) > 0) t = std::min(t, l / (l - mu(a)));
      }
      for (Eigen::Index a = 0; a < m; ++a) {
        auto idx = active[static_cast<std::size_t>(a)];
        lambda(idx) = lambda(idx) + t * (mu(a) - lambda(idx));
      }
      std::vector<Eigen::Index> keep;
      for (auto idx : active) {
        if (lambda(idx) > 1e-14) {
          keep.push_back(idx);
        } else {
          lambda(idx) = 0;
        }
      }
      if (keep.empty()) {
        keep.push_back(j);
        lambda(j) = 1;
      }
      active = std::move(keep);
    }
    lambda /= lambda.sum();
  }
  return lambda;
}

template <class T>
struct FloatFlat {
  Vec<T> base;
  Mat<T> dirs;  // orthonormal columns
};

template <class T>
FloatFlat<T> fit_flat(const Mat<T>& pts, int k) {
  FloatFlat<T> f;
  f.base = pts.rowwise().mean();
  Mat<T> centered = pts.colwise() - f.base;
  Eigen::JacobiSVD<Mat<T>> svd(centered, Eigen::ComputeFullU);
  f.dirs = svd.matrixU().leftCols(k);
  return f;
}

template <class T>
Vec<T> residual(const FloatFlat<T>& f, const Vec<T>& x) {
  Vec<T> r = x - f.base;
  return r - f.dirs * (f.dirs.adjoint() * r);
}

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) return 0;
  if (std::abs(x) > 1e9) return Rational(static_cast<std::int64_t>(std::llround(x)));
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(r);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t h2 = ai * h1 + h0;
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
    if (r > 1e15) break;
  }
  return make_rational(h1, k1);
}

template <class T>
FieldScalar to_scalar(T z, std::int64_t max_den);
template <>
FieldScalar to_scalar<double>(double z, std::int64_t max_den) {
  return FieldScalar(rationalize(z, max_den));
}
template <>
FieldScalar to_scalar<cd>(cd z, std::int64_t max_den) {
  return FieldScalar(rationalize(z.real(), max_den), rationalize(z.imag(), max_den));
}

/// Exact LP: base point b and, per set, a point of the set on b + span(dirs).
std::optional<Flat> exact_base(const Instance& inst, std::span<const int> subset, const std::vector<Vector>& dirs) {
  const Field field = inst.field;
  const std::size_t dim = static_cast<std::size_t>(inst.d * field_factor(field));
  std::vector<RealVector> rdirs;
  for (const auto& w : dirs) {
    rdirs.push_back(real_coordinates(w, field));
    if (field == Field::Complex) {
      Vector iw;
      for (const auto& z : w) iw.push_back(z * FieldScalar(0, 1));
      rdirs.push_back(real_coordinates(iw, field));
    }
  }
  LinearSystem s(dim, false);
  for (int i : subset) {
    const Polytope& p = inst.polytopes[static_cast<std::size_t>(i)];
    const std::size_t lam = s.num_vars;
    for (std::size_t v = 0; v < p.size(); ++v) s.add_var(true);
    const std::size_t par = s.num_vars;
    for (std::size_t j = 0; j < rdirs.size(); ++j) s.add_var(false);
    LinearConstraint sum;
    sum.coeffs.assign(s.num_vars, Rational(0));
    for (std::size_t v = 0; v < p.size(); ++v) sum.coeffs[lam + v] = 1;
    sum.relation = Relation::Equal;
    sum.rhs = 1;
    s.add(std::move(sum));
    for (std::size_t c = 0; c < dim; ++c) {
      LinearConstraint row;
      row.coeffs.assign(s.num_vars, Rational(0));
      row.coeffs[c] = -1;
      for (std::size_t v = 0; v < p.size(); ++v) row.coeffs[lam + v] = p.real_vertex(v)[c];
      for (std::size_t j = 0; j < rdirs.size(); ++j) row.coeffs[par + j] = -rdirs[j][c];
      row.relation = Relation::Equal;
      row.rhs = 0;
      s.add(std::move(row));
    }
  }
  LPResult r = lp_feasible(s);
  if (!r.feasible) return std::nullopt;
  RealVector b(r.solution.begin(), r.solution.begin() + static_cast<std::ptrdiff_t>(dim));
  return Flat(field, from_real_coordinates(b, field), dirs);
}

/// Rational directions from float ones: normalize to the identity on pivot
/// coordinates, then round the remaining entries.
template <class T>
std::optional<std::vector<Vector>> round_directions(const Mat<T>& dirs, std::int64_t max_den) {
  const Eigen::Index d = dirs.rows();
  const Eigen::Index k = dirs.cols();
  Eigen::ColPivHouseholderQR<Mat<T>> qr(dirs.transpose());
  std::vector<Eigen::Index> pivots;
  for (Eigen::Index j = 0; j < k; ++j) pivots.push_back(qr.colsPermutation().indices()(j));
  Mat<T> square(k, k);
  for (Eigen::Index a = 0; a < k; ++a) square.row(a) = dirs.row(pivots[static_cast<std::size_t>(a)]);
  Eigen::FullPivLU<Mat<T>> lu(square);
  if (!lu.isInvertible()) return std::nullopt;
  Mat<T> normalized = dirs * lu.inverse();
  std::vector<Vector> out(static_cast<std::size_t>(k), Vector(static_cast<std::size_t>(d)));
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index c = 0; c < d; ++c) {
      auto pivot = std::find(pivots.begin(), pivots.end(), c);
      FieldScalar& z = out[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      if (pivot != pivots.end()) {
        z = (pivot - pivots.begin()) == j ? 1 : 0;
      } else {
        z = to_scalar<T>(normalized(c, j), max_den);
      }
    }
  }
  return out;
}

template <class T>
TransversalResult search(const Instance& inst, std::span<const int> subset, const HeuristicBudget& budget) {
  const int d = inst.d;
  const int k = inst.k;
  std::vector<Mat<T>> verts;
  double scale = 1;
  for (int i : subset) {
    const Polytope& p = inst.polytopes[static_cast<std::size_t>(i)];
    Mat<T> v(d, static_cast<Eigen::Index>(p.size()));
    for (std::size_t j = 0; j < p.size(); ++j) {
      for (int c = 0; c < d; ++c) v(c, static_cast<Eigen::Index>(j)) = to_t<T>(p.vertices()[j][static_cast<std::size_t>(c)]);
    }
    scale = std::max(scale, v.cwiseAbs().maxCoeff());
    verts.push_back(std::move(v));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(verts.size());

  TransversalResult out;
  out.method = "heuristic";
  double best_obj = INFINITY;
  int rounding_attempts = 0;
  for (int restart = 0; restart < budget.restarts; ++restart) {
    Rng rng(derive_seed(budget.seed, static_cast<std::uint64_t>(restart)));
    Mat<T> pts(d, n);
    for (Eigen::Index s = 0; s < n; ++s) {
      const Eigen::Index nv = verts[static_cast<std::size_t>(s)].cols();
      Eigen::VectorXd w(nv);
      for (Eigen::Index j = 0; j < nv; ++j) {
        double u = rng.uniform_real();
        w(j) = restart == 0 ? 1.0 : -std::log(std::max(u, 1e-300));
      }
      w /= w.sum();
      pts.col(s) = verts[static_cast<std::size_t>(s)] * w.cast<T>();
    }
    double obj = INFINITY;
    FloatFlat<T> flat;
    for (int it = 0; it < budget.iterations; ++it) {
      flat = fit_flat<T>(pts, k);
      double total = 0;
      for (Eigen::Index s = 0; s < n; ++s) {
        const Mat<T>& v = verts[static_cast<std::size_t>(s)];
        Mat<T> y(d, v.cols());
        for (Eigen::Index j = 0; j < v.cols(); ++j) y.col(j) = residual<T>(flat, v.col(j));
        Eigen::VectorXd lambda = min_norm_point<T>(y);
        pts.col(s) = v * lambda.cast<T>();
        total += residual<T>(flat, pts.col(s)).squaredNorm();
      }
      const double prev = obj;
      obj = total;
      if (obj < 1e-24 * scale * scale || prev - obj < 1e-14 * scale * scale) break;
    }
    flat = fit_flat<T>(pts, k);
    best_obj = std::min(best_obj, obj);
    if (obj > 1e-8 * scale * scale) continue;

    for (std::int64_t max_den : {std::int64_t{100}, std::int64_t{10000}, std::int64_t{1000000}}) {
      ++rounding_attempts;
      auto dirs = round_directions<T>(flat.dirs, max_den);
      if (!dirs) break;
      auto exact = exact_base(inst, subset, *dirs);
      if (!exact) continue;
      TransversalResult found;
      found.method = "heuristic";
      for (int i : subset) {
        LPResult r = flat_meets_polytope(*exact, inst.polytopes[static_cast<std::size_t>(i)]);
        if (!r.feasible) throw ConsistencyError("exact base LP and membership test disagree");
        found.witnesses.push_back(std::move(r.point));
      }
      found.verdict = FindVerdict::Found;
      found.flat = std::move(exact);
      found.note = "restart " + std::to_string(restart) + ", denominators <= " + std::to_string(max_den);
      return found;
    }
  }
  out.verdict = FindVerdict::Inconclusive;
  out.note = "best objective " + std::to_string(best_obj) + " after " + std::to_string(budget.restarts) +
             " restarts, " + std::to_string(rounding_attempts) + " rounding attempts";
  return out;
}

}  // namespace

TransversalResult find_k_flat_heuristic(const Instance& inst, std::span<const int> subset,
                                        const HeuristicBudget& budget) {
  if (subset.empty()) throw InputError("empty subfamily");
  for (int i : subset) {
    if (i < 0 || static_cast<std::size_t>(i) >= inst.size()) throw InputError("index out of range");
  }
  if (inst.k == 0) return find_point_transversal(inst, subset);
  if (inst.k >= inst.d) throw InputError("flat dimension must be below d");
  if (budget.restarts <= 0 || budget.iterations <= 0) {
    TransversalResult out;
    out.method = "heuristic";
    out.verdict = FindVerdict::Inconclusive;
    out.note = "zero budget";
    return out;
  }
  return inst.field == Field::Real ? search<double>(inst, subset, budget) : search<cd>(inst, subset, budget);
}

}  // namespace tvlab
