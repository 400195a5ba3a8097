#include "bellcut/sdp.hpp"

#include "bellcut/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace bellcut {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

Blocks zeros(const std::vector<int>& sizes) {
  Blocks out;
  for (int s : sizes) out.push_back(MatrixXd::Zero(s, s));
  return out;
}

Blocks identity(const std::vector<int>& sizes, double scale) {
  Blocks out;
  for (int s : sizes) out.push_back(scale * MatrixXd::Identity(s, s));
  return out;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double frobenius(const Blocks& a) { return std::sqrt(inner(a, a)); }

// <A, W> = tr(A W) for a symmetric sparse A and any W.
double apply_entries(const std::vector<SparseEntry>& entries, const Blocks& w) {
  double s = 0;
  for (const auto& e : entries) {
    const MatrixXd& b = w[static_cast<std::size_t>(e.block)];
    s += e.row == e.col ? e.value * b(e.row, e.row) : e.value * (b(e.row, e.col) + b(e.col, e.row));
  }
  return s;
}

void add_entries(const std::vector<SparseEntry>& entries, double scale, Blocks& out) {
  for (const auto& e : entries) {
    MatrixXd& b = out[static_cast<std::size_t>(e.block)];
    b(e.row, e.col) += scale * e.value;
    if (e.row != e.col) b(e.col, e.row) += scale * e.value;
  }
}

struct Operator {
  const SdpProblem& p;

  VectorXd forward(const Blocks& w) const {
    VectorXd out(static_cast<Eigen::Index>(p.constraints.size()));
    for (std::size_t k = 0; k < p.constraints.size(); ++k) out(static_cast<Eigen::Index>(k)) = apply_entries(p.constraints[k], w);
    return out;
  }

  Blocks adjoint(const VectorXd& y) const {
    Blocks out = zeros(p.block_sizes);
    for (std::size_t k = 0; k < p.constraints.size(); ++k) add_entries(p.constraints[k], y(static_cast<Eigen::Index>(k)), out);
    return out;
  }
};

// Largest step a with X + a dX >= 0, capped at `cap`.
double max_step(const Blocks& x, const Blocks& dx, double cap) {
  double alpha = cap;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].rows() == 1) {
      const double d = dx[k](0, 0);
      if (d < 0) alpha = std::min(alpha, -x[k](0, 0) / d);
      continue;
    }
    Eigen::LLT<MatrixXd> llt(x[k]);
    if (llt.info() != Eigen::Success) return 0;
    const MatrixXd l = llt.matrixL();
    const MatrixXd linv = l.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(l.rows(), l.cols()));
    const MatrixXd m = linv * dx[k] * linv.transpose();
    const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

Blocks inverse(const Blocks& z) {
  Blocks out;
  for (const auto& b : z) {
    Eigen::LLT<MatrixXd> llt(b);
    if (llt.info() != Eigen::Success) throw NumericalDegeneracyError("dual iterate lost positive definiteness");
    out.push_back(llt.solve(MatrixXd::Identity(b.rows(), b.cols())));
  }
  return out;
}

// HKM Schur complement M_kl = tr(A_k X A_l Z^-1), using only the sparse
// entries of A_k and A_l.
MatrixXd schur(const SdpProblem& p, const Blocks& x, const Blocks& zinv) {
  const auto k_count = static_cast<Eigen::Index>(p.constraints.size());
  MatrixXd m = MatrixXd::Zero(k_count, k_count);
  // G = X E_ij Z^-1 (E_ij symmetric unit pattern); G_pq for the needed (p,q)
  const auto g = [&](const SparseEntry& l, int blk, int r, int c) {
    const MatrixXd& xb = x[static_cast<std::size_t>(blk)];
    const MatrixXd& zb = zinv[static_cast<std::size_t>(blk)];
    if (l.row == l.col) return l.value * xb(r, l.row) * zb(l.row, c);
    return l.value * (xb(r, l.row) * zb(l.col, c) + xb(r, l.col) * zb(l.row, c));
  };
  for (Eigen::Index k = 0; k < k_count; ++k)
    for (Eigen::Index l = 0; l <= k; ++l) {
      double s = 0;
      for (const auto& ek : p.constraints[static_cast<std::size_t>(k)])
        for (const auto& el : p.constraints[static_cast<std::size_t>(l)]) {
          if (ek.block != el.block) continue;
          s += ek.row == ek.col ? ek.value * g(el, ek.block, ek.row, ek.row)
                                : ek.value * (g(el, ek.block, ek.row, ek.col) + g(el, ek.block, ek.col, ek.row));
        }
      m(k, l) = s;
      m(l, k) = s;
    }
  return m;
}

Blocks product(const Blocks& a, const Blocks& b) {
  Blocks out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] * b[k]);
  return out;
}

void axpy(double alpha, const Blocks& x, Blocks& y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += alpha * x[k];
}

void symmetrize(Blocks& x) {
  for (auto& b : x) b = 0.5 * (b + b.transpose()).eval();
}


void validate_problem(const SdpProblem& p) {
  if (p.constraints.size() != p.rhs.size()) throw ValidationError("constraint count and rhs length differ");
  for (int s : p.block_sizes)
    if (s <= 0) throw ValidationError("block sizes must be positive");
  const auto check = [&](const SparseEntry& e) {
    if (e.block < 0 || e.block >= static_cast<int>(p.block_sizes.size())) throw ValidationError("entry block out of range");
    const int s = p.block_sizes[static_cast<std::size_t>(e.block)];
    if (e.row < 0 || e.col < 0 || e.row >= s || e.col >= s) throw ValidationError("entry index out of range");
  };
  for (const auto& e : p.objective) check(e);
  for (const auto& c : p.constraints)
    for (const auto& e : c) check(e);
}

enum class Outcome { converged, iteration_cap, stalled, breakdown };

struct Run {
  SdpResult result;
  Outcome outcome = Outcome::converged;
  std::string reason;
};

// Runs the iteration and keeps the last iterate whatever the outcome.
Run interior_point(const SdpProblem& p, const SdpOptions& options) {
  const Operator a{p};
  const VectorXd b = Eigen::Map<const VectorXd>(p.rhs.data(), static_cast<Eigen::Index>(p.rhs.size()));
  Blocks c = zeros(p.block_sizes);
  add_entries(p.objective, 1.0, c);
  const double c_norm = frobenius(c);
  int n_total = 0;
  for (int s : p.block_sizes) n_total += s;

  Run run;
  SdpResult& r = run.result;
  r.X = identity(p.block_sizes, 1.0);
  r.Z = identity(p.block_sizes, std::max(1.0, c_norm));
  r.y = VectorXd::Zero(b.size());

  for (int it = 0;; ++it) {
    const VectorXd rp = b - a.forward(r.X);
    Blocks rd = c;  // C - A^T y + Z
    axpy(-1.0, a.adjoint(r.y), rd);
    axpy(1.0, r.Z, rd);
    r.primal_objective = inner(c, r.X);
    r.dual_objective = b.dot(r.y);
    r.primal_infeasibility = rp.norm() / (1 + b.norm());
    r.dual_infeasibility = frobenius(rd) / (1 + c_norm);
    r.relative_gap = std::abs(r.primal_objective - r.dual_objective) /
                     (1 + std::abs(r.primal_objective) + std::abs(r.dual_objective));
    r.iterations = it;
    if (r.primal_infeasibility <= options.feasibility_tol && r.dual_infeasibility <= options.feasibility_tol &&
        r.relative_gap <= options.gap_tol)
      return run;
    if (it >= options.max_iterations) {
      run.outcome = Outcome::iteration_cap;
      run.reason = "interior point did not converge in " + std::to_string(options.max_iterations) +
                   " iterations (gap " + std::to_string(r.relative_gap) + ")";
      return run;
    }

    Blocks zinv;
    try {
      zinv = inverse(r.Z);
    } catch (const NumericalDegeneracyError& e) {
      run.outcome = Outcome::breakdown;
      run.reason = e.what();
      return run;
    }
    const double mu = inner(r.X, r.Z) / n_total;
    MatrixXd m = schur(p, r.X, zinv);
    Eigen::LDLT<MatrixXd> ldlt(m);
    // near a degenerate optimum M loses rank; a tiny ridge keeps the step defined
    for (double ridge = 1e-14; ldlt.info() != Eigen::Success; ridge *= 100) {
      if (ridge > 1e-6) {
        run.outcome = Outcome::breakdown;
        run.reason = "Schur complement factorization failed";
        return run;
      }
      ldlt.compute(m + ridge * m.diagonal().cwiseAbs().maxCoeff() * MatrixXd::Identity(m.rows(), m.cols()));
    }
    const VectorXd x_rd_zinv = a.forward(product(product(r.X, rd), zinv));

    // dX Z + X dZ = R - XZ with dZ = A^T dy - Rd
    const auto direction = [&](const Blocks& target, Blocks& dx, VectorXd& dy, Blocks& dz) {
      const Blocks rzinv = product(target, zinv);
      const VectorXd rhs = a.forward(rzinv) - b + x_rd_zinv;
      dy = ldlt.solve(rhs);
      for (int pass = 0; pass < 2; ++pass) dy += ldlt.solve(rhs - m * dy);
      dz = a.adjoint(dy);
      axpy(-1.0, rd, dz);
      dx = rzinv;
      axpy(-1.0, r.X, dx);
      axpy(-1.0, product(product(r.X, dz), zinv), dx);
      symmetrize(dx);
    };

    Blocks dx, dz;
    VectorXd dy;
    direction(zeros(p.block_sizes), dx, dy, dz);
    const double ap = std::min(1.0, max_step(r.X, dx, 1e30));
    const double ad = std::min(1.0, max_step(r.Z, dz, 1e30));
    Blocks xa = r.X, za = r.Z;
    axpy(ap, dx, xa);
    axpy(ad, dz, za);
    const double mu_aff = inner(xa, za) / n_total;
    const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

    Blocks target = identity(p.block_sizes, sigma * mu);
    axpy(-1.0, product(dx, dz), target);
    direction(target, dx, dy, dz);

    const double sp = std::min(1.0, options.step_fraction * max_step(r.X, dx, 1e30));
    const double sd = std::min(1.0, options.step_fraction * max_step(r.Z, dz, 1e30));
    if (sp <= 0 || sd <= 0) {
      run.outcome = Outcome::stalled;
      run.reason = "interior point stalled";
      return run;
    }
    axpy(sp, dx, r.X);
    axpy(sd, dz, r.Z);
    r.y += sd * dy;
    symmetrize(r.X);
    symmetrize(r.Z);
  }
}

}  // namespace

SdpResult solve_sdp(const SdpProblem& p, const SdpOptions& options) {
  validate_problem(p);
  Run run = interior_point(p, options);
  switch (run.outcome) {
    case Outcome::converged:
      return std::move(run.result);
    case Outcome::breakdown:
      throw NumericalDegeneracyError(run.reason);
    default:
      throw ConvergenceError(run.reason, run.result.primal_objective, run.result.dual_objective);
  }
}

// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> EdgeWeightedObjective::edge_nodes() const {
  std::vector<std::pair<int, int>> out;
  if (suspended) {
    const SuspensionShape s(m, n);
    for (int e = 0; e < s.edge_count(); ++e) {
      const auto [u, v] = s.edge(static_cast<std::size_t>(e));
      out.emplace_back(s.node_position(u), s.node_position(v));
    }
  } else {
    const BipartiteShape s(m, n);
    for (int e = 0; e < s.edge_count(); ++e) {
      const auto [u, v] = s.edge(static_cast<std::size_t>(e));
      out.emplace_back(s.node_position(u), s.node_position(v));
    }
  }
  return out;
}

void EdgeWeightedObjective::validate() const {
  if (m < 1 || n < 1) throw ValidationError("objective needs m, n >= 1");
  if (node_count() > kMaxSdpNodes)
    throw GuardError("SDP size guard: " + std::to_string(node_count()) + " nodes, limit " + std::to_string(kMaxSdpNodes));
  const int expected = (suspended ? m + n : 0) + m * n;
  if (static_cast<int>(weights.size()) != expected)
    throw ValidationError("objective has " + std::to_string(weights.size()) + " weights, expected " + std::to_string(expected));
  for (double w : weights)
    if (!std::isfinite(w)) throw ValidationError("objective weights must be finite");
  if (!std::isfinite(offset)) throw ValidationError("objective offset must be finite");
}

EdgeWeightedObjective EdgeWeightedObjective::from_inequality(const LinearInequality& ineq) {
  ineq.validate();
  if (ineq.space != Space::correlation && ineq.space != Space::suspension)
    throw ValidationError("SDP objectives come from correlation or suspension inequalities");
  EdgeWeightedObjective out{ineq.space == Space::suspension, ineq.rows, ineq.cols, {}, 0};
  for (const auto& c : ineq.a) out.weights.push_back(to_double(c));
  return out;
}

double SdpSolution::min_eigenvalue() const {
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(gram, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

double SdpSolution::max_diagonal_defect() const { return (gram.diagonal().array() - 1.0).abs().maxCoeff(); }

namespace {

// Unit rows V with V V^T ~ H, negative eigenvalues clamped.
MatrixXd factor(const MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
  const VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  MatrixXd v = es.eigenvectors() * root.asDiagonal();
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double norm = v.row(i).norm();
    if (norm > 0) v.row(i) /= norm;
  }
  return v;
}

SdpProblem unit_diagonal_problem(int nodes) {
  SdpProblem p;
  p.block_sizes = {nodes};
  for (int i = 0; i < nodes; ++i) {
    p.constraints.push_back({{0, i, i, 1.0}});
    p.rhs.push_back(1.0);
  }
  return p;
}

SdpSolution finish(const SdpResult& r, const EdgeWeightedObjective& obj) {
  SdpSolution s;
  s.gram = r.X.front();
  s.value = r.primal_objective + obj.offset;
  s.dual_bound = r.dual_objective + obj.offset;
  s.vectors = factor(s.gram);
  for (const auto& [u, v] : obj.edge_nodes()) s.edge_values.push_back(s.gram(u, v));
  s.iterations = r.iterations;
  s.primal_infeasibility = r.primal_infeasibility;
  s.dual_infeasibility = r.dual_infeasibility;
  s.relative_gap = r.relative_gap;
  return s;
}

}  // namespace

SdpSolution elliptope_max(const EdgeWeightedObjective& objective, const SdpOptions& options) {
  objective.validate();
  SdpProblem p = unit_diagonal_problem(objective.node_count());
  const auto edges = objective.edge_nodes();
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (objective.weights[e] != 0) p.objective.push_back({0, edges[e].first, edges[e].second, objective.weights[e] / 2});
  return finish(solve_sdp(p, options), objective);
}

SdpSolution elliptope_rmet_max(const EdgeWeightedObjective& objective, const SdpOptions& options) {
  objective.validate();
  EdgeWeightedObjective obj = objective;
  if (!obj.suspended) {
    obj.suspended = true;
    obj.weights.insert(obj.weights.begin(), static_cast<std::size_t>(obj.m + obj.n), 0.0);
  }
  obj.validate();
  const SuspensionShape shape(obj.m, obj.n);
  const HRep rmet = rmet_hrep(shape);
  const auto edges = obj.edge_nodes();

  SdpProblem p = unit_diagonal_problem(obj.node_count());
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (obj.weights[e] != 0) p.objective.push_back({0, edges[e].first, edges[e].second, obj.weights[e] / 2});
  // a.x + s_k = rhs with one 1x1 slack block per row
  for (std::size_t k = 0; k < rmet.inequalities.size(); ++k) {
    const auto& h = rmet.inequalities[k];
    std::vector<SparseEntry> row;
    for (std::size_t e = 0; e < h.a.size(); ++e)
      if (h.a[e] != 0) row.push_back({0, edges[e].first, edges[e].second, to_double(h.a[e]) / 2});
    const int block = static_cast<int>(p.block_sizes.size());
    p.block_sizes.push_back(1);
    row.push_back({block, 0, 0, 1.0});
    p.constraints.push_back(std::move(row));
    p.rhs.push_back(to_double(h.rhs));
  }
  const SdpResult r = solve_sdp(p, options);
  SdpSolution s = finish(r, obj);
  if (!objective.suspended) {
    s.edge_values.erase(s.edge_values.begin(), s.edge_values.begin() + objective.m + objective.n);
  }
  for (std::size_t k = 0; k < rmet.inequalities.size(); ++k)
    if (r.X[k + 1](0, 0) < 1e-6) s.active_constraints.push_back(static_cast<int>(k));
  return s;
}

GramRealization realization(const SdpSolution& s, const EdgeWeightedObjective& objective) {
  if (s.vectors.rows() == 1 + objective.m + objective.n) return GramRealization(SuspensionShape(objective.m, objective.n), s.vectors);
  return GramRealization(BipartiteShape(objective.m, objective.n), s.vectors);
}

// ---------------------------------------------------------------------------

MembershipResult elliptope_membership(int nodes, const std::vector<std::pair<int, int>>& edges,
                                      const std::vector<double>& values, const SdpOptions& options) {
  if (nodes < 1) throw ValidationError("membership needs at least one node");
  if (nodes > kMaxSdpNodes)
    throw GuardError("SDP size guard: " + std::to_string(nodes) + " nodes, limit " + std::to_string(kMaxSdpNodes));
  if (edges.size() != values.size()) throw ValidationError("edge and value counts differ");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    if (u < 0 || v < 0 || u >= nodes || v >= nodes || u == v) throw ValidationError("invalid edge");
    if (!(std::abs(values[e]) <= 1 + 1e-12)) throw ValidationError("edge values must lie in [-1, 1]");
  }

  // minimize X_11 subject to X_ii = X_11 and X_e = x_e; then H = X + t I with t = 1 - X_11
  SdpProblem p;
  p.block_sizes = {nodes};
  p.objective = {{0, 0, 0, -1.0}};
  for (int i = 1; i < nodes; ++i) {
    p.constraints.push_back({{0, i, i, 1.0}, {0, 0, 0, -1.0}});
    p.rhs.push_back(0);
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    p.constraints.push_back({{0, edges[e].first, edges[e].second, 0.5}});
    p.rhs.push_back(values[e]);
  }
  // t* lies between the smallest eigenvalue of the primal iterate repaired to
  // unit diagonal and exact edge values, and 1 + the dual objective
  struct Bracket {
    SdpResult r;
    MatrixXd h;
    double lower = 0;
    double upper = 0;
  };
  const auto bracket = [&](const SdpOptions& opts) {
    Run run = interior_point(p, opts);
    Bracket b{std::move(run.result), {}, 0, 0};
    b.h = b.r.X.front();
    for (const auto& [u, v] : edges) b.h(u, v) = b.h(v, u) = 0;
    b.h.diagonal().setOnes();
    for (std::size_t e = 0; e < edges.size(); ++e) b.h(edges[e].first, edges[e].second) = b.h(edges[e].second, edges[e].first) = values[e];
    b.lower = Eigen::SelfAdjointEigenSolver<MatrixXd>(b.h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    b.upper = b.r.dual_infeasibility <= opts.feasibility_tol ? 1 + b.r.dual_objective
                                                              : std::numeric_limits<double>::infinity();
    if (run.outcome != Outcome::converged && !(b.upper - b.lower <= kMembershipBracket))
      throw ConvergenceError(run.reason, b.lower, b.upper);
    return b;
  };
  Bracket best = bracket(options);
  // near the threshold try to tighten; degenerate boundary points may not allow it
  if (std::abs(best.upper) < 1e-6 && options.gap_tol > 1e-10) {
    SdpOptions tight = options;
    tight.gap_tol = 1e-10;
    try {
      Bracket b = bracket(tight);
      if (b.upper - b.lower < best.upper - best.lower) best = std::move(b);
    } catch (const ConvergenceError&) {
    }
  }
  const SdpResult& r = best.r;

  MembershipResult out;
  out.iterations = r.iterations;
  out.margin = std::isfinite(best.upper) ? best.upper : best.lower;
  out.lower_bound = best.lower;
  out.member = out.margin >= kMembershipThreshold;
  out.boundary = out.member && out.margin < 0;
  if (out.member) {
    out.completion = best.h;
  } else {
    // dual: Z = sum y_k A_k + E_11 >= 0 gives sum_e (-y_e) H_e <= 1 on the elliptope
    const std::size_t first_edge = static_cast<std::size_t>(nodes - 1);
    for (std::size_t e = 0; e < edges.size(); ++e) out.separator.push_back(-r.y(static_cast<Eigen::Index>(first_edge + e)));
    for (std::size_t e = 0; e < edges.size(); ++e) out.separator_value += out.separator[e] * values[e];
  }
  return out;
}

MembershipResult elliptope_membership(const CorrelationVector<double>& x, const SdpOptions& options) {
  const EdgeWeightedObjective shape{false, x.shape.m(), x.shape.n(), x.x, 0};
  return elliptope_membership(shape.node_count(), shape.edge_nodes(), x.x, options);
}

MembershipResult elliptope_membership(const SuspensionVector<double>& x, const SdpOptions& options) {
  const EdgeWeightedObjective shape{true, x.shape.m(), x.shape.n(), x.x, 0};
  return elliptope_membership(shape.node_count(), shape.edge_nodes(), x.x, options);
}

CutConditionResult cut_condition(const CorrelationVector<double>& x) {
  CutConditionResult out;
  for (double v : x.x) {
    if (!(std::abs(v) <= 1)) throw ValidationError("correlation values must lie in [-1, 1]");
    const double y = 2 / std::numbers::pi * std::asin(v);
    out.y.push_back(y);
    out.y_rational.push_back(rational_from_double(y, kCutConditionDenominator));
  }
  const VRep cuts = cut_vectors(x.shape);
  out.certificate = hull_membership(out.y_rational, cuts);
  out.passes = out.certificate.inside;
  if (!out.passes) {
    const Halfspace& h = *out.certificate.separator;
    Rational scale = 0;
    for (const auto& c : h.a) scale = std::max(scale, Rational(abs(c)));
    out.violation = to_double((dot(h.a, out.y_rational) - h.rhs) / scale);
    if (out.violation <= kCutConditionTol) out.passes = true;
  }
  return out;
}

GapSearchResult rmet_gap_search(const BipartiteShape& shape, const GapSearchOptions& options) {
  const int m = shape.m(), n = shape.n();
  const int dim = options.dimension > 0 ? options.dimension : m + n;
  const SuspensionShape suspension(shape);
  const HRep rmet = rmet_hrep(suspension);
  std::vector<std::vector<double>> rows;
  for (const auto& h : rmet.inequalities) {
    rows.emplace_back();
    for (const auto& a : h.a) rows.back().push_back(to_double(a));
    rows.back().push_back(to_double(h.rhs));
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> root(-1, 1);
  GapSearchResult out;
  for (; out.samples < options.samples; ++out.samples) {
    Eigen::MatrixXd u(m + n, dim);
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) u(r, c) = gauss(rng);
      u.row(r).normalize();
    }
    SuspensionVector<double> x(suspension);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) x.pair(i, j) = std::clamp(u.row(i).dot(u.row(m + j)), -1.0, 1.0);
    std::vector<double> direction;
    for (int k = 0; k < m + n; ++k) direction.push_back(root(rng));
    // push the roots out along `direction` to the RMet boundary; zero roots always satisfy RMet
    const auto feasible = [&](double scale) {
      for (int k = 0; k < m + n; ++k) x.x[static_cast<std::size_t>(k)] = scale * direction[static_cast<std::size_t>(k)];
      return std::all_of(rows.begin(), rows.end(), [&](const std::vector<double>& r) {
        double lhs = 0;
        for (std::size_t e = 0; e < x.x.size(); ++e) lhs += r[e] * x.x[e];
        return lhs <= r.back() + 1e-12;
      });
    };
    double lo = 0, hi = 1;
    if (feasible(1)) lo = 1;
    else
      for (int it = 0; it < 50; ++it) (feasible((lo + hi) / 2) ? lo : hi) = (lo + hi) / 2;
    if (!feasible(lo)) continue;
    ++out.in_rmet;
    MembershipResult verdict;
    try {
      verdict = elliptope_membership(x);
    } catch (const ConvergenceError&) {
      ++out.undecided;
      continue;
    }
    if (verdict.margin < -options.threshold) {
      out.found.push_back(x);
      out.margins.push_back(verdict.margin);
    }
  }
  return out;
}

}  // namespace bellcut
