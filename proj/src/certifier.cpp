#include "qcqp/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcqp/structured.hpp"

namespace qcqp {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertified: return "Certified";
    case Verdict::kRefuted: return "Refuted";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::kConvexHullPoint: return "ConvexHullPoint";
    case CertificateKind::kDualInterior: return "DualInterior";
    case CertificateKind::kKernelObstruction: return "KernelObstruction";
    case CertificateKind::kPolyhedral: return "Polyhedral";
    case CertificateKind::kSteepness: return "Steepness";
  }
  return "?";
}

const char* to_string(KernelOutcome k) {
  switch (k) {
    case KernelOutcome::kObstructionHolds: return "ObstructionHolds";
    case KernelOutcome::kKernelOrthogonal: return "KernelOrthogonal";
    case KernelOutcome::kFullRank: return "FullRank";
  }
  return "?";
}

namespace {

// Rows of the span(F(x,t)) direction system: d such that A(0,d) kills the
// kernel of A[f], d_i = 0 on active sign constraints, and <d, (q_i(x))_i> = 0.
MatrixXd face_span_directions(const QcqpInstance& inst, const VectorXd& f,
                              const MatrixXd& kernel, const VectorXd& qvec,
                              int m_inequality) {
  const int m = inst.m();
  const int kcols = static_cast<int>(kernel.cols());
  std::vector<int> active;
  for (int i = 0; i < m_inequality; ++i) {
    if (f(i) <= 1e-6 * (1.0 + f.cwiseAbs().maxCoeff())) active.push_back(i);
  }
  MatrixXd rows(inst.n() * kcols + static_cast<int>(active.size()) + 1, m);
  for (int i = 0; i < m; ++i) {
    const MatrixXd av = inst.constraint(i).form.A.mat() * kernel;
    for (int c = 0; c < kcols; ++c) {
      rows.block(c * inst.n(), i, inst.n(), 1) = av.col(c);
    }
  }
  int r = inst.n() * kcols;
  for (int idx : active) {
    rows.row(r).setZero();
    rows(r, idx) = 1.0;
    ++r;
  }
  rows.row(r) = qvec.transpose();
  return nullspace(rows);
}

// Bidirectional membership check: accepts the direction when both
// (x,t) + alpha (x',t') and (x,t) - alpha (x',t') stay in S_SDP, halving
// alpha as needed. Returns the accepted alpha, or 0 on rejection.
double verify_rounding_direction(const DualSolver& solver, const EpigraphPoint& p,
                                 const VectorXd& x_prime, double t_prime,
                                 const CertifyOptions& opts) {
  double alpha = opts.alpha_init;
  const double norm = std::sqrt(x_prime.squaredNorm() + t_prime * t_prime);
  if (norm < 1e-14) return 0.0;
  while (alpha >= opts.alpha_min) {
    bool ok = true;
    for (double sgn : {1.0, -1.0}) {
      EpigraphPoint q{p.x + sgn * alpha * x_prime, p.t + sgn * alpha * t_prime};
      if (solver.membership(q) == MembershipLabel::kOut) {
        ok = false;
        break;
      }
    }
    if (ok) return alpha;
    alpha *= 0.5;
  }
  return 0.0;
}

Certificate certify_partition_boundary(const DualSolver& solver,
                                       const EpigraphPoint& p,
                                       const CertifyOptions& opts);

}  // namespace

FaceDescription face_multiplier(const DualSolver& solver, const EpigraphPoint& p,
                                const CertifyOptions& opts) {
  const QcqpInstance& inst = solver.instance();
  EpigraphHeightResult h = solver.epigraph_height(p.x);
  const double band = solver.options().membership_tol * (1.0 + std::abs(h.tau));
  if (!h.finite || std::abs(2.0 * p.t - h.tau) > band) {
    throw NotOnBoundary("face_multiplier: point is not on the S_SDP boundary");
  }

  VectorXd qvec(inst.m());
  for (int i = 0; i < inst.m(); ++i) {
    qvec(i) = evaluate(inst.constraint(i).form, p.x);
  }
  const double qobj = evaluate(inst.objective(), p.x);

  VectorXd f = h.gamma_center;
  {
    // Degenerate residual (the point is a tight corner of S): the epigraph
    // LP is constant and its barrier path has no limit; the dual-function
    // maximizer is the canonical multiplier there.
    const double res_scale = 1.0 + std::abs(qobj) + std::abs(2.0 * p.t);
    const double max_q = inst.m() > 0 ? qvec.cwiseAbs().maxCoeff() : 0.0;
    if (max_q <= opts.tol * res_scale &&
        std::abs(qobj - 2.0 * p.t) <= opts.tol * res_scale) {
      f = solver.solve().gamma_star.gamma;
    }
  }
  // Complementarity of the extracted multiplier: [f, q(x)] = 2t.
  const double pairing = qobj + f.dot(qvec);
  const double scale = 1.0 + std::abs(2.0 * p.t) + f.norm() * (1.0 + qvec.norm());
  if (std::abs(pairing - 2.0 * p.t) > opts.tol * scale) {
    throw FaceExtractionFailed(
        "face_multiplier: complementarity residual above tolerance");
  }

  FaceDescription face;
  face.multiplier_f = f;
  face.eta0 = f;

  const VectorXd res = residual(inst, p);
  if (opts.mode == CertifyOptions::FaceMode::kSoc) {
    // Exact mode for SOC polars: the minimal face of the residual is its ray,
    // so the face complement is the orthogonal complement of the residual.
    face.kind = FaceKind::kSocFace;
    face.residual_ray = res;
    const VectorXd tail = res.tail(inst.m());
    if (tail.norm() <= 1e-14 * (1.0 + res.norm())) {
      throw FaceExtractionFailed(
          "face_multiplier: residual ray has no projective slice");
    }
    // Particular point (1, eta0) in res^perp and directions (0, d), d ⊥ tail.
    face.eta0 = -res(0) / tail.squaredNorm() * tail;
    face.directions = nullspace(tail.transpose());
    face.relaxed = false;
    return face;
  }

  face.kind = FaceKind::kRelIntMultiplier;
  KernelBasis kb =
      kernel_basis(aggregate_projective(inst, f).A, opts.kernel_rel_tol);
  face.directions =
      face_span_directions(inst, f, kb.vectors, qvec, inst.m_inequality());
  face.relaxed = true;
  return face;
}

RoundingSpace rounding_space(const DualSolver& solver, const EpigraphPoint& p,
                             const FaceDescription& face,
                             const CertifyOptions& opts) {
  const QcqpInstance& inst = solver.instance();
  const int n = inst.n();
  KernelBasis kb = kernel_basis(aggregate_projective(inst, face.multiplier_f).A,
                                opts.kernel_rel_tol);
  RoundingSpace out;
  out.relaxed = face.relaxed;
  const int kdim = kb.dim();
  if (kdim == 0) {
    out.basis = MatrixXd::Zero(n + 1, 0);
    return out;
  }

  const int n_dirs = static_cast<int>(face.directions.cols());
  MatrixXd rows(1 + n_dirs, kdim + 1);
  {
    QuadraticForm agg = aggregate_projective(inst, face.eta0);
    const VectorXd g = agg.A.mat() * p.x + agg.b;
    rows.block(0, 0, 1, kdim) = g.transpose() * kb.vectors;
    rows(0, kdim) = -1.0;
  }
  for (int d = 0; d < n_dirs; ++d) {
    MatrixXd a = MatrixXd::Zero(n, n);
    VectorXd b = VectorXd::Zero(n);
    for (int i = 0; i < inst.m(); ++i) {
      a += face.directions(i, d) * inst.constraint(i).form.A.mat();
      b += face.directions(i, d) * inst.constraint(i).form.b;
    }
    const VectorXd g = a * p.x + b;
    rows.block(1 + d, 0, 1, kdim) = g.transpose() * kb.vectors;
    rows(1 + d, kdim) = 0.0;
  }

  const MatrixXd sol = nullspace(rows, opts.nullspace_tol);
  out.basis.resize(n + 1, sol.cols());
  for (int c = 0; c < sol.cols(); ++c) {
    out.basis.block(0, c, n, 1) = kb.vectors * sol.col(c).head(kdim);
    out.basis(n, c) = sol(kdim, c);
  }
  return out;
}

Certificate certify_convex_hull_point(const DualSolver& solver,
                                      const EpigraphPoint& p,
                                      const CertifyOptions& opts) {
  const QcqpInstance& inst = solver.instance();
  Certificate cert;
  cert.kind = CertificateKind::kConvexHullPoint;

  if (in_epigraph_set(inst, p, opts.tol)) {
    cert.verdict = Verdict::kCertified;
    cert.note = "point lies in S";
    return cert;
  }

  if (opts.mode == CertifyOptions::FaceMode::kPartition) {
    return certify_partition_boundary(solver, p, opts);
  }

  EpigraphHeightResult h = solver.epigraph_height(p.x);
  if (!h.finite || 2.0 * p.t < h.tau - solver.options().membership_tol *
                                           (1.0 + std::abs(h.tau))) {
    cert.verdict = Verdict::kInconclusive;
    cert.note = "point is not in S_SDP";
    return cert;
  }
  const double band =
      solver.options().membership_tol * (1.0 + std::abs(h.tau));
  if (2.0 * p.t > h.tau + band) {
    // Epigraph-interior point: the vertical direction rounds it.
    VectorXd w = VectorXd::Zero(inst.n() + 1);
    w(inst.n()) = 1.0;
    cert.verdict = Verdict::kCertified;
    cert.witness_direction = w;
    cert.margin = 2.0 * p.t - h.tau;
    cert.note = "2t > tau(x): vertical rounding direction";
    return cert;
  }

  FaceDescription face = face_multiplier(solver, p, opts);
  RoundingSpace rs = rounding_space(solver, p, face, opts);
  cert.rounding_basis = rs.basis;
  cert.diagnostics["rounding_dim"] = rs.dim();

  double best_alpha = 0.0;
  std::optional<VectorXd> verified;
  for (int c = 0; c < rs.dim(); ++c) {
    const VectorXd x_prime = rs.basis.col(c).head(inst.n());
    const double t_prime = rs.basis(inst.n(), c);
    const double alpha =
        verify_rounding_direction(solver, p, x_prime, t_prime, opts);
    if (alpha > 0.0) {
      verified = rs.basis.col(c);
      best_alpha = alpha;
      break;
    }
  }
  if (verified) {
    cert.witness_direction = verified;
    cert.margin = best_alpha;
  }
  cert.diagnostics["witness_verified"] = verified ? 1.0 : 0.0;

  if (rs.relaxed) {
    // The computed space is a superset of the exact rounding space, so
    // nontriviality alone cannot certify, and triviality of a superset cannot
    // refute without facial exposure. Report what was found.
    cert.verdict = Verdict::kInconclusive;
    cert.note = verified ? "relaxed mode: verified candidate direction found"
                         : "relaxed mode: no verified candidate";
    return cert;
  }

  if (rs.dim() == 0) {
    cert.verdict = Verdict::kRefuted;
    cert.note = "exact mode: rounding space is trivial at a non-S boundary point";
    return cert;
  }
  if (verified) {
    cert.verdict = Verdict::kCertified;
    cert.note = "exact mode: verified rounding direction";
  } else {
    cert.verdict = Verdict::kInconclusive;
    cert.note = "exact mode: nontrivial space but verification failed";
  }
  return cert;
}

namespace {

// Partition closed-form mode: the boundary function is known explicitly, so
// positive definiteness of its Hessian at a smooth boundary point proves that
// no rounding direction exists there.
Certificate certify_partition_boundary(const DualSolver& solver,
                                       const EpigraphPoint& p,
                                       const CertifyOptions& opts) {
  const QcqpInstance& inst = solver.instance();
  const int n = inst.n();
  Certificate cert;
  cert.kind = CertificateKind::kConvexHullPoint;

  // Recover the weights: A_obj = a a^T with a > 0.
  VectorXd a(n);
  for (int i = 0; i < n; ++i) {
    const double d = inst.objective().A.mat()(i, i);
    if (!(d > 0.0)) throw InvalidInstance("partition mode: A_obj diag not positive");
    a(i) = std::sqrt(d);
  }
  if ((inst.objective().A.mat() - a * a.transpose()).norm() >
      1e-8 * std::max(1.0, a.squaredNorm())) {
    throw InvalidInstance("partition mode: A_obj is not rank-one a a^T");
  }
  PartitionInstance pi(a);

  const double f0 = partition_boundary_function(pi, p.x);
  if (!std::isfinite(f0)) {
    cert.verdict = Verdict::kInconclusive;
    cert.note = "point outside the box [-1,1]^n";
    return cert;
  }
  const double band = opts.tol * (1.0 + std::abs(f0));
  if (2.0 * p.t < f0 - band) {
    cert.verdict = Verdict::kInconclusive;
    cert.note = "point is not in S_SDP";
    return cert;
  }
  if (2.0 * p.t > f0 + band) {
    VectorXd w = VectorXd::Zero(n + 1);
    w(n) = 1.0;
    cert.verdict = Verdict::kCertified;
    cert.witness_direction = w;
    cert.note = "2t > tau(x): vertical rounding direction";
    return cert;
  }

  const double max_abs_x = p.x.cwiseAbs().maxCoeff();
  const double h = std::min(1e-3, 0.1 * std::max(1e-8, 1.0 - max_abs_x));

  // Finite-difference Hessian of the boundary function at x.
  MatrixXd hess(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      VectorXd xpp = p.x, xpm = p.x, xmp = p.x, xmm = p.x;
      xpp(i) += h; xpp(j) += h;
      xpm(i) += h; xpm(j) -= h;
      xmp(i) -= h; xmp(j) += h;
      xmm(i) -= h; xmm(j) -= h;
      const double v = (partition_boundary_function(pi, xpp) -
                        partition_boundary_function(pi, xpm) -
                        partition_boundary_function(pi, xmp) +
                        partition_boundary_function(pi, xmm)) /
                       (4.0 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  EigenDecomposition ed = eigh(SymmetricMatrix(hess));
  cert.diagnostics["hessian_lambda_min"] = ed.lambda_min();

  // Smoothness guards: unique strictly-positive argmax (or all terms strictly
  // negative) keeps the max and the (.)_+ away from their kinks.
  VectorXd radial(n);
  for (int i = 0; i < n; ++i) {
    radial(i) = a(i) * std::sqrt(std::max(0.0, 1.0 - p.x(i) * p.x(i)));
  }
  const double total = radial.sum();
  double top = -std::numeric_limits<double>::infinity();
  double second = top;
  for (int i = 0; i < n; ++i) {
    const double v = radial(i) - (total - radial(i));
    if (v > top) {
      second = top;
      top = v;
    } else {
      second = std::max(second, v);
    }
  }
  const double margin = 1e-6 * (1.0 + a.sum());
  const bool smooth = (top >= margin && top - second >= margin) || top <= -margin;

  if (smooth && ed.lambda_min() >= opts.curvature_tol) {
    cert.verdict = Verdict::kRefuted;
    cert.margin = ed.lambda_min();
    cert.note =
        "boundary function strictly curved: R(x,t) trivial at a non-S point";
    return cert;
  }

  // Near-flat directions of the Hessian are rounding candidates; verify with
  // the closed-form membership along both directions.
  auto member = [&](const VectorXd& x, double t) {
    const double f = partition_boundary_function(pi, x);
    return std::isfinite(f) && f <= 2.0 * t + band;
  };
  for (int c = 0; c < n; ++c) {
    if (ed.eigenvalues(c) > opts.curvature_tol) break;
    const VectorXd dir = ed.eigenvectors.col(c);
    double alpha = opts.alpha_init;
    while (alpha >= opts.alpha_min) {
      const VectorXd xp = p.x + alpha * dir;
      const VectorXd xm = p.x - alpha * dir;
      const double fp = partition_boundary_function(pi, xp);
      const double fm = partition_boundary_function(pi, xm);
      if (std::isfinite(fp) && std::isfinite(fm)) {
        const double t_prime = (fp - fm) / (4.0 * alpha);
        if (member(xp, p.t + alpha * t_prime) && member(xm, p.t - alpha * t_prime)) {
          VectorXd w(n + 1);
          w.head(n) = dir;
          w(n) = t_prime;
          cert.verdict = Verdict::kCertified;
          cert.witness_direction = w;
          cert.margin = alpha;
          cert.note = "verified rounding direction along a flat direction";
          return cert;
        }
      }
      alpha *= 0.5;
    }
  }
  cert.verdict = Verdict::kInconclusive;
  cert.note = smooth ? "curvature below tolerance without a verified direction"
                     : "nonsmooth boundary point without a verified direction";
  return cert;
}

}  // namespace

Certificate certify_hull(const DualSolver& solver, const HullSamplingConfig& cfg,
                         const CertifyOptions& opts) {
  const QcqpInstance& inst = solver.instance();
  if (cfg.box_lo.size() != inst.n() || cfg.box_hi.size() != inst.n()) {
    throw DimensionMismatch("certify_hull: box dimension mismatch");
  }
  RngStream rng(cfg.seed, /*stream=*/0xC0FFEE);
  Certificate agg;
  agg.kind = CertificateKind::kConvexHullPoint;
  int certified = 0, refuted = 0, inconclusive = 0, skipped = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    VectorXd x(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
      x(i) = rng.uniform(cfg.box_lo(i), cfg.box_hi(i));
    }
    double tau;
    if (opts.mode == CertifyOptions::FaceMode::kPartition) {
      VectorXd a(inst.n());
      for (int i = 0; i < inst.n(); ++i) a(i) = std::sqrt(inst.objective().A.mat()(i, i));
      tau = partition_boundary_function(PartitionInstance(a), x);
    } else {
      EpigraphHeightResult h = solver.epigraph_height(x);
      if (!h.finite) {
        ++skipped;
        continue;
      }
      tau = h.tau;
    }
    if (!std::isfinite(tau)) {
      ++skipped;
      continue;
    }
    EpigraphPoint p{x, 0.5 * tau};
    if (in_epigraph_set(inst, p, opts.tol)) {
      ++skipped;  // already a point of S: not a rounding question
      continue;
    }
    Certificate c = certify_convex_hull_point(solver, p, opts);
    switch (c.verdict) {
      case Verdict::kCertified: ++certified; break;
      case Verdict::kRefuted:
        ++refuted;
        if (!agg.witness_point) {
          agg.witness_point = x;
          agg.margin = c.margin;
        }
        break;
      case Verdict::kInconclusive: ++inconclusive; break;
    }
  }
  agg.diagnostics["samples"] = cfg.samples;
  agg.diagnostics["certified"] = certified;
  agg.diagnostics["refuted"] = refuted;
  agg.diagnostics["inconclusive"] = inconclusive;
  agg.diagnostics["skipped_in_S_or_unbounded"] = skipped;
  if (refuted > 0) {
    agg.verdict = Verdict::kRefuted;
    agg.note = "a sampled boundary point has no rounding direction";
  } else if (inconclusive == 0 && certified > 0) {
    agg.verdict = Verdict::kCertified;
    agg.note = "every sampled boundary non-S point certified";
  } else {
    agg.verdict = Verdict::kInconclusive;
    agg.note = "sampling inconclusive";
  }
  return agg;
}

Certificate dual_interior_certificate(const DualSolver& solver,
                                      const DualSolution& sol, double delta,
                                      double tol) {
  const QcqpInstance& inst = solver.instance();
  Certificate cert;
  cert.kind = CertificateKind::kDualInterior;
  cert.margin = sol.lambda_min_at_star;
  cert.diagnostics["lambda_min"] = sol.lambda_min_at_star;
  if (sol.status == SolveStatus::kUnbounded) {
    cert.note = "dual unbounded (relaxation infeasible)";
    return cert;
  }
  if (sol.lambda_min_at_star < delta || !sol.x_star) {
    cert.note = "dual optimum margin below delta";
    return cert;
  }
  const VectorXd& x = *sol.x_star;
  const double qobj = evaluate(inst.objective(), x);
  const double obj_gap = std::abs(qobj - sol.opt_sdp);
  cert.diagnostics["objective_gap"] = obj_gap;
  double max_violation = 0.0;
  for (int i = 0; i < inst.m(); ++i) {
    const double v = evaluate(inst.constraint(i).form, x);
    max_violation = std::max(max_violation,
                             inst.constraint(i).sense == ConstraintSense::kEquality
                                 ? std::abs(v)
                                 : std::max(0.0, v));
  }
  cert.diagnostics["feasibility_residual"] = max_violation;
  if (max_violation <= tol && obj_gap <= tol * (1.0 + std::abs(sol.opt_sdp))) {
    cert.verdict = Verdict::kCertified;
    cert.witness_point = x;
    cert.note = "A[gamma*] PD: unique optimizer recovered and re-verified";
  } else {
    cert.note = "recovered point failed re-verification";
  }
  return cert;
}

Certificate kernel_obstruction(const DualSolver& solver, const VectorXd& gamma,
                               double tol) {
  const QcqpInstance& inst = solver.instance();
  if (!gamma_membership(inst, Multiplier::Projective(gamma))) {
    throw NotInGammaP("kernel_obstruction: gamma not in Gamma_P");
  }
  QuadraticForm agg = aggregate_projective(inst, gamma);
  Certificate cert;
  cert.kind = CertificateKind::kKernelObstruction;
  KernelBasis kb = kernel_basis(agg.A);
  if (kb.dim() == 0) {
    cert.kernel_outcome = KernelOutcome::kFullRank;
    cert.verdict = Verdict::kInconclusive;
    cert.note = "A[gamma] has full rank; use the dual-interior certificate";
    return cert;
  }
  const VectorXd proj = kb.vectors.transpose() * agg.b;
  cert.diagnostics["kernel_dim"] = kb.dim();
  cert.diagnostics["kernel_b_norm"] = proj.norm();
  if (proj.norm() > tol * (1.0 + agg.b.norm())) {
    cert.kernel_outcome = KernelOutcome::kObstructionHolds;
    cert.verdict = Verdict::kCertified;
    int best = 0;
    proj.cwiseAbs().maxCoeff(&best);
    cert.kernel_vector = kb.vectors.col(best);
    cert.margin = proj.norm();
    cert.note = "some kernel vector of A[gamma] meets b[gamma]: gamma cannot "
                "be a dual maximizer with primal stationarity";
  } else {
    cert.kernel_outcome = KernelOutcome::kKernelOrthogonal;
    cert.verdict = Verdict::kInconclusive;
    cert.kernel_vector = kb.vectors.col(0);
    cert.note = "kernel orthogonal to b[gamma]: obstruction inapplicable";
  }
  return cert;
}

Certificate polyhedral_certify(const DualSolver& solver,
                               const std::vector<Multiplier>& generators,
                               const std::vector<EpigraphPoint>& samples,
                               const CertifyOptions& opts) {
  const QcqpInstance& inst = solver.instance();
  Certificate cert;
  cert.kind = CertificateKind::kPolyhedral;

  for (const auto& g : generators) {
    if (!gamma_membership(inst, g)) {
      throw GeneratorNotInGamma("polyhedral_certify: generator outside Gamma");
    }
  }

  int tested = 0, skipped = 0;
  for (size_t s = 0; s < samples.size(); ++s) {
    const EpigraphPoint& p = samples[s];
    if (in_epigraph_set(inst, p, opts.tol)) {
      ++skipped;
      continue;
    }
    const VectorXd res = residual(inst, p);
    // Exposed face: generators orthogonal to the residual.
    std::vector<int> active;
    double gamma_obj_sum = 0.0;
    VectorXd f_sum = VectorXd::Zero(inst.m());
    for (size_t gi = 0; gi < generators.size(); ++gi) {
      VectorXd gvec(1 + inst.m());
      gvec(0) = generators[gi].gamma_obj;
      gvec.tail(inst.m()) = generators[gi].gamma;
      const double gn = gvec.norm();
      if (gn < 1e-14) continue;
      if (std::abs(gvec.dot(res)) <= opts.tol * gn * (1.0 + res.norm())) {
        active.push_back(static_cast<int>(gi));
        gamma_obj_sum += gvec(0) / gn;
        f_sum += gvec.tail(inst.m()) / gn;
      }
    }
    if (active.empty()) {
      ++skipped;  // face = {0}: nothing to check
      continue;
    }
    if (gamma_obj_sum <= opts.tol) {
      ++skipped;  // face has no projective slice
      continue;
    }
    ++tested;
    const VectorXd f = f_sum / gamma_obj_sum;
    KernelBasis kb =
        kernel_basis(aggregate_projective(inst, f).A, opts.kernel_rel_tol);
    bool nontrivial = false;
    if (kb.dim() > 0) {
      MatrixXd rows(active.size(), kb.dim() + 1);
      for (size_t r = 0; r < active.size(); ++r) {
        const Multiplier& g = generators[active[r]];
        QuadraticForm agg = aggregate(inst, g);
        const VectorXd grad = agg.A.mat() * p.x + agg.b;
        rows.block(static_cast<int>(r), 0, 1, kb.dim()) =
            grad.transpose() * kb.vectors;
        rows(static_cast<int>(r), kb.dim()) = -g.gamma_obj;
      }
      nontrivial = nullspace(rows).cols() > 0;
    } else {
      // Trivial kernel: solutions must have x' = 0, and the t' equation from
      // any active generator with positive gamma_obj forces t' = 0.
      bool has_projective = false;
      for (int idx : active) {
        if (generators[idx].gamma_obj > opts.tol) has_projective = true;
      }
      nontrivial = !has_projective;
    }
    if (!nontrivial) {
      cert.verdict = Verdict::kRefuted;
      cert.witness_point = p.x;
      cert.diagnostics["witness_sample"] = static_cast<double>(s);
      cert.diagnostics["active_face_size"] = static_cast<double>(active.size());
      cert.note = "exposed face with trivial rounding system";
      return cert;
    }
  }
  cert.diagnostics["tested"] = tested;
  cert.diagnostics["skipped"] = skipped;
  if (tested > 0) {
    cert.verdict = Verdict::kCertified;
    cert.note = "all sampled exposed faces admit nontrivial rounding systems";
  } else {
    cert.verdict = Verdict::kInconclusive;
    cert.note = "no testable boundary samples";
  }
  return cert;
}

Certificate steepness_certificate(const DualSolver& solver, const VectorXd& gamma,
                                  const VectorXd& delta) {
  const QcqpInstance& inst = solver.instance();
  if (delta.norm() == 0.0) {
    throw NotStrictlyFeasible("steepness: delta must be nonzero");
  }
  auto strict_inside = [&](const VectorXd& g) {
    for (int i = 0; i < inst.m_inequality(); ++i) {
      if (g(i) <= 0.0) return false;
    }
    QuadraticForm agg = aggregate_projective(inst, g);
    return lambda_min(agg.A) > pd_tol(agg.A);
  };
  const VectorXd g1 = gamma + delta;
  const VectorXd g2 = gamma + 2.0 * delta;
  if (!strict_inside(g1) || !strict_inside(g2)) {
    throw NotStrictlyFeasible(
        "steepness: gamma+delta and gamma+2delta must be strictly inside");
  }
  auto cap = [&](const VectorXd& g) {
    QuadraticForm agg = aggregate_projective(inst, g);
    const VectorXd u = solve_pd(agg.A, agg.b);
    return -agg.b.dot(u);
  };
  double c_sq = 0.0;
  for (int i = 0; i < inst.m(); ++i) {
    c_sq += inst.constraint(i).form.c * inst.constraint(i).form.c;
  }
  const double lhs = cap(g1) - cap(g2);
  const double rhs = -delta.norm() * std::sqrt(c_sq);

  Certificate cert;
  cert.kind = CertificateKind::kSteepness;
  cert.diagnostics["lhs"] = lhs;
  cert.diagnostics["rhs"] = rhs;
  cert.margin = rhs - lhs;
  if (lhs <= rhs) {
    cert.verdict = Verdict::kCertified;
    cert.note = "steepness inequality holds along delta";
  } else {
    cert.verdict = Verdict::kInconclusive;
    cert.note = "steepness inequality fails along delta";
  }
  return cert;
}

}  // namespace qcqp
