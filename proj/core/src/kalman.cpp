#include "tcm/kalman.hpp"

#include <cmath>
#include <limits>

#include "tcm/errors.hpp"

namespace tcm {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kFTol = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd diffuse_selection(const StateSpaceSystem& sys) {
  const Eigen::Index m = sys.m();
  const Eigen::Index nd = static_cast<Eigen::Index>(sys.diffuse_states.size());
  MatrixXd B = MatrixXd::Zero(m, nd);
  for (Eigen::Index j = 0; j < nd; ++j) B(sys.diffuse_states[static_cast<std::size_t>(j)], j) = 1.0;
  return B;
}

// Symmetric PSD square root (for sampling from N(0, P1) with singular P1).
MatrixXd psd_sqrt(const MatrixXd& P) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(P);
  VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

struct GlsStats {
  VectorXd s;
  MatrixXd S;

  explicit GlsStats(Eigen::Index d) : s(VectorXd::Zero(d)), S(MatrixXd::Zero(d, d)) {}

  // Log-likelihood correction turning the proper-model likelihood into the
  // diffuse limit: + s'S^{-1}s/2 - log|S|/2.
  bool correction(double& out) const {
    if (s.size() == 0) { out = 0.0; return true; }
    Eigen::LLT<MatrixXd> llt(S);
    if (llt.info() != Eigen::Success) return false;
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < S.rows(); ++i) logdet += std::log(llt.matrixL()(i, i));
    out = 0.5 * s.dot(llt.solve(s)) - logdet;
    return std::isfinite(out);
  }

  bool solve_delta(VectorXd& delta) const {
    if (s.size() == 0) { delta.resize(0); return true; }
    Eigen::LLT<MatrixXd> llt(S);
    if (llt.info() != Eigen::Success) return false;
    delta = llt.solve(s);
    return true;
  }
};

}  // namespace

double loglik(const StateSpaceSystem& sys, const MatrixXd& y) {
  const Eigen::Index T = y.rows();
  const Eigen::Index m = sys.m();
  const Eigen::Index n = sys.n();
  const Eigen::Index nd = static_cast<Eigen::Index>(sys.diffuse_states.size());
  if (n != y.cols()) throw DataError("loglik: panel width does not match system");
  if (T < 1) throw DataError("loglik: empty panel");

  VectorXd a = sys.a1;
  MatrixXd P = sys.P1;
  MatrixXd G = diffuse_selection(sys);
  GlsStats gls(nd);
  const MatrixXd RQR =
      sys.R * sys.q_diag.asDiagonal() * sys.R.transpose();

  double ll = 0.0;
  VectorXd K(m), u(m);
  Eigen::RowVectorXd vrow(nd);

  for (Eigen::Index t = 0; t < T; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double yi = y(t, i);
      if (is_missing(yi)) continue;
      const auto z = sys.Z.row(i);
      K.noalias() = P * z.transpose();
      const double F = z.dot(K) + sys.jitter[i];
      if (nd > 0) vrow.noalias() = z * G;
      if (!(F > kFTol)) {
        // No proper variance: only admissible if the row carries no diffuse
        // information either (then it is vacuous and skipped).
        if (nd > 0 && vrow.cwiseAbs().maxCoeff() > 1e-8) return kNegInf;
        continue;
      }
      const double v = yi - sys.d[i] - z.dot(a);
      if (!std::isfinite(v) || !std::isfinite(F)) return kNegInf;
      ll -= 0.5 * (kLog2Pi + std::log(F) + v * v / F);
      a.noalias() += K * (v / F);
      P.noalias() -= K * (K / F).transpose();
      if (nd > 0) {
        gls.s.noalias() += vrow.transpose() * (v / F);
        gls.S.noalias() += vrow.transpose() * (vrow / F);
        G.noalias() -= K * (vrow / F);
      }
    }
    if (t + 1 < T) {
      a = sys.c + sys.T * a;
      P = sys.T * P * sys.T.transpose() + RQR;
      P = 0.5 * (P + P.transpose());
      if (nd > 0) G = sys.T * G;
    }
  }

  double corr;
  if (!gls.correction(corr)) return kNegInf;
  ll += corr;
  return std::isfinite(ll) ? ll : kNegInf;
}

namespace {

// Forward pass with full storage, shared by filter() and smooth().
struct ForwardStore {
  struct ScalarRec {
    int row;
    double F;
    double v;
    VectorXd K;
    Eigen::RowVectorXd vrow;
  };
  std::vector<VectorXd> a_pred;               // per t
  std::vector<MatrixXd> P_pred;
  std::vector<MatrixXd> G_pred;
  std::vector<VectorXd> a_filt;
  std::vector<MatrixXd> P_filt;
  std::vector<MatrixXd> G_filt;
  std::vector<std::vector<ScalarRec>> recs;   // per t
  std::vector<GlsStats> gls_after;            // per t (cumulative through t)
  GlsStats gls = GlsStats(0);
  double ll_proper = 0.0;
  bool degenerate = false;                    // diffuse info on a zero-variance row
  int diffuse_scalar_count = 0;
};

ForwardStore forward_pass(const StateSpaceSystem& sys, const MatrixXd& y) {
  const Eigen::Index T = y.rows();
  const Eigen::Index m = sys.m();
  const Eigen::Index n = sys.n();
  const Eigen::Index nd = static_cast<Eigen::Index>(sys.diffuse_states.size());
  if (n != y.cols()) throw DataError("kalman: panel width does not match system");
  if (T < 1) throw DataError("kalman: empty panel");

  ForwardStore st;
  st.gls = GlsStats(nd);
  st.a_pred.reserve(T);
  st.recs.resize(static_cast<std::size_t>(T));

  VectorXd a = sys.a1;
  MatrixXd P = sys.P1;
  MatrixXd G = diffuse_selection(sys);
  const MatrixXd RQR = sys.R * sys.q_diag.asDiagonal() * sys.R.transpose();

  bool diffuse_phase = nd > 0;

  for (Eigen::Index t = 0; t < T; ++t) {
    st.a_pred.push_back(a);
    st.P_pred.push_back(P);
    st.G_pred.push_back(G);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double yi = y(t, i);
      if (is_missing(yi)) continue;
      const auto z = sys.Z.row(i);
      VectorXd K = P * z.transpose();
      const double F = z.dot(K) + sys.jitter[i];
      Eigen::RowVectorXd vrow = nd > 0 ? Eigen::RowVectorXd(z * G) : Eigen::RowVectorXd(0);
      if (!(F > kFTol)) {
        if (nd > 0 && vrow.size() > 0 && vrow.cwiseAbs().maxCoeff() > 1e-8)
          st.degenerate = true;
        continue;
      }
      const double v = yi - sys.d[i] - z.dot(a);
      st.ll_proper -= 0.5 * (kLog2Pi + std::log(F) + v * v / F);
      if (diffuse_phase) {
        ++st.diffuse_scalar_count;
      }
      a.noalias() += K * (v / F);
      P.noalias() -= K * (K / F).transpose();
      if (nd > 0) {
        st.gls.s.noalias() += vrow.transpose() * (v / F);
        st.gls.S.noalias() += vrow.transpose() * (vrow / F);
        G.noalias() -= K * (vrow / F);
        if (diffuse_phase) {
          Eigen::SelfAdjointEigenSolver<MatrixXd> es(st.gls.S);
          const double emax = es.eigenvalues().maxCoeff();
          Eigen::Index rank = 0;
          for (Eigen::Index k = 0; k < nd; ++k)
            if (es.eigenvalues()[k] > 1e-10 * std::max(1.0, emax)) ++rank;
          if (rank == nd) diffuse_phase = false;
        }
      }
      st.recs[static_cast<std::size_t>(t)].push_back({static_cast<int>(i), F, v, K, vrow});
    }
    st.a_filt.push_back(a);
    st.P_filt.push_back(P);
    st.G_filt.push_back(G);
    st.gls_after.push_back(st.gls);
    if (t + 1 < T) {
      a = sys.c + sys.T * a;
      P = sys.T * P * sys.T.transpose() + RQR;
      P = 0.5 * (P + P.transpose());
      if (nd > 0) G = sys.T * G;
    }
  }
  return st;
}

// Minimum-norm GLS estimate and covariance adjustment: while S is singular
// (diffuse vector not yet identified), use the pseudo-inverse.
void gls_adjust(const GlsStats& gls, const MatrixXd& G, const VectorXd& a, const MatrixXd& P,
                VectorXd& mean_out, MatrixXd& cov_out) {
  if (gls.s.size() == 0) {
    mean_out = a;
    cov_out = P;
    return;
  }
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(gls.S);
  VectorXd delta = cod.solve(gls.s);
  MatrixXd Spinv = cod.pseudoInverse();
  mean_out = a + G * delta;
  cov_out = P + G * Spinv * G.transpose();
}

}  // namespace

FilterResult filter(const StateSpaceSystem& sys, const MatrixXd& y) {
  const Eigen::Index T = y.rows();
  const Eigen::Index m = sys.m();
  const Eigen::Index n = sys.n();
  ForwardStore st = forward_pass(sys, y);
  if (st.degenerate)
    throw EstimationError("filter: diffuse information on a zero-variance measurement row");

  FilterResult out;
  out.diffuse_scalar_count = st.diffuse_scalar_count;
  double corr;
  if (!st.gls.correction(corr))
    throw EstimationError("filter: diffuse initial states not identified by the sample");
  out.loglik = st.ll_proper + corr;

  out.predicted_mean.resize(T, m);
  out.filtered_mean.resize(T, m);
  out.predicted_cov.resize(static_cast<std::size_t>(T));
  out.filtered_cov.resize(static_cast<std::size_t>(T));
  out.observed_rows.resize(static_cast<std::size_t>(T));
  out.innovation.resize(static_cast<std::size_t>(T));
  out.innovation_cov.resize(static_cast<std::size_t>(T));

  const Eigen::Index nd = static_cast<Eigen::Index>(sys.diffuse_states.size());
  GlsStats before(nd);
  for (Eigen::Index t = 0; t < T; ++t) {
    VectorXd mean;
    MatrixXd cov;
    gls_adjust(before, st.G_pred[static_cast<std::size_t>(t)], st.a_pred[static_cast<std::size_t>(t)],
               st.P_pred[static_cast<std::size_t>(t)], mean, cov);
    out.predicted_mean.row(t) = mean.transpose();
    out.predicted_cov[static_cast<std::size_t>(t)] = cov;

    std::vector<int>& rows = out.observed_rows[static_cast<std::size_t>(t)];
    for (Eigen::Index i = 0; i < n; ++i)
      if (!is_missing(y(t, i))) rows.push_back(static_cast<int>(i));
    const Eigen::Index p = static_cast<Eigen::Index>(rows.size());
    MatrixXd Zo(p, m);
    VectorXd vo(p);
    for (Eigen::Index k = 0; k < p; ++k) {
      Zo.row(k) = sys.Z.row(rows[static_cast<std::size_t>(k)]);
      vo[k] = y(t, rows[static_cast<std::size_t>(k)]) - sys.d[rows[static_cast<std::size_t>(k)]] -
              Zo.row(k).dot(mean);
    }
    MatrixXd Fo = Zo * cov * Zo.transpose();
    for (Eigen::Index k = 0; k < p; ++k) Fo(k, k) += sys.jitter[rows[static_cast<std::size_t>(k)]];
    out.innovation[static_cast<std::size_t>(t)] = vo;
    out.innovation_cov[static_cast<std::size_t>(t)] = 0.5 * (Fo + Fo.transpose());

    before = st.gls_after[static_cast<std::size_t>(t)];
    gls_adjust(before, st.G_filt[static_cast<std::size_t>(t)], st.a_filt[static_cast<std::size_t>(t)],
               st.P_filt[static_cast<std::size_t>(t)], mean, cov);
    out.filtered_mean.row(t) = mean.transpose();
    out.filtered_cov[static_cast<std::size_t>(t)] = cov;
  }
  return out;
}

SmootherResult smooth(const StateSpaceSystem& sys, const MatrixXd& y) {
  const Eigen::Index T = y.rows();
  const Eigen::Index m = sys.m();
  const Eigen::Index nd = static_cast<Eigen::Index>(sys.diffuse_states.size());
  ForwardStore st = forward_pass(sys, y);
  if (st.degenerate)
    throw EstimationError("smooth: diffuse information on a zero-variance measurement row");

  VectorXd delta(nd);
  MatrixXd Sinv;
  if (nd > 0) {
    Eigen::LLT<MatrixXd> llt(st.gls.S);
    if (llt.info() != Eigen::Success)
      throw EstimationError("smooth: diffuse initial states not identified by the sample");
    delta = llt.solve(st.gls.s);
    Sinv = llt.solve(MatrixXd::Identity(nd, nd));
  }

  SmootherResult out;
  double corr;
  st.gls.correction(corr);
  out.loglik = st.ll_proper + corr;
  out.mean.resize(T, m);
  out.cov.resize(static_cast<std::size_t>(T));

  VectorXd r = VectorXd::Zero(m);
  MatrixXd N = MatrixXd::Zero(m, m);
  MatrixXd Raux = MatrixXd::Zero(m, nd);

  for (Eigen::Index t = T - 1; t >= 0; --t) {
    const auto& recs = st.recs[static_cast<std::size_t>(t)];
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
      const auto z = sys.Z.row(it->row);
      const double F = it->F;
      const VectorXd& K = it->K;
      // r <- z'v/F + L'r with L = I - K z'/F
      const double Kr = K.dot(r);
      r.noalias() += z.transpose() * ((it->v - Kr) / F);
      // N <- z'z/F + L'NL
      VectorXd u = N * K;
      const double KNK = K.dot(u);
      N.noalias() -= z.transpose() * (u.transpose() / F);
      N.noalias() -= (u / F) * z;
      N.noalias() += z.transpose() * z * ((KNK / F + 1.0) / F);
      N = 0.5 * (N + N.transpose());
      if (nd > 0) {
        Eigen::RowVectorXd KR = K.transpose() * Raux;
        Raux.noalias() += z.transpose() * ((it->vrow - KR) / F);
      }
    }
    const MatrixXd& Pp = st.P_pred[static_cast<std::size_t>(t)];
    VectorXd mean = st.a_pred[static_cast<std::size_t>(t)] + Pp * r;
    MatrixXd cov = Pp - Pp * N * Pp;
    if (nd > 0) {
      MatrixXd W = st.G_pred[static_cast<std::size_t>(t)] - Pp * Raux;
      mean.noalias() += W * delta;
      cov.noalias() += W * Sinv * W.transpose();
    }
    out.mean.row(t) = mean.transpose();
    out.cov[static_cast<std::size_t>(t)] = 0.5 * (cov + cov.transpose());
    if (t > 0) {
      r = sys.T.transpose() * r;
      N = sys.T.transpose() * N * sys.T;
      if (nd > 0) Raux = sys.T.transpose() * Raux;
    }
  }
  return out;
}

SimulationResult simulate(const StateSpaceSystem& sys, Eigen::Index T, Rng& rng,
                          double diffuse_scale) {
  const Eigen::Index m = sys.m();
  const Eigen::Index n = sys.n();
  const Eigen::Index q = sys.q_diag.size();
  if (T < 1) throw DataError("simulate: T must be >= 1");

  SimulationResult out;
  out.states.resize(T, m);
  out.obs.resize(T, n);

  MatrixXd L1 = psd_sqrt(sys.P1);
  VectorXd z(m);
  for (Eigen::Index i = 0; i < m; ++i) z[i] = rng.normal();
  VectorXd a = sys.a1 + L1 * z;
  for (int idx : sys.diffuse_states) a[idx] += diffuse_scale * rng.normal();

  const VectorXd q_sd = sys.q_diag.cwiseSqrt();
  const VectorXd h_sd = sys.jitter.cwiseSqrt();
  const bool any_jitter = sys.jitter.maxCoeff() > 0.0;

  for (Eigen::Index t = 0; t < T; ++t) {
    out.states.row(t) = a.transpose();
    VectorXd yt = sys.d + sys.Z * a;
    if (any_jitter)
      for (Eigen::Index i = 0; i < n; ++i)
        if (h_sd[i] > 0.0) yt[i] += h_sd[i] * rng.normal();
    out.obs.row(t) = yt.transpose();
    if (t + 1 < T) {
      VectorXd eta(q);
      for (Eigen::Index k = 0; k < q; ++k) eta[k] = q_sd[k] * rng.normal();
      a = sys.c + sys.T * a + sys.R * eta;
    }
  }
  return out;
}

Eigen::MatrixXd simulation_smoother(const StateSpaceSystem& sys, const MatrixXd& y, Rng& rng) {
  SmootherResult sm = smooth(sys, y);
  SimulationResult sim = simulate(sys, y.rows(), rng, 0.0);
  MatrixXd yplus = sim.obs;
  for (Eigen::Index t = 0; t < y.rows(); ++t)
    for (Eigen::Index i = 0; i < y.cols(); ++i)
      if (is_missing(y(t, i))) yplus(t, i) = kMissing;
  SmootherResult smplus = smooth(sys, yplus);
  return sm.mean + sim.states - smplus.mean;
}

Eigen::MatrixXd forecast_observables(const StateSpaceSystem& sys,
                                     const Eigen::VectorXd& last_filtered_mean, int horizon) {
  MatrixXd out(horizon, sys.n());
  VectorXd a = last_filtered_mean;
  for (int h = 0; h < horizon; ++h) {
    a = sys.c + sys.T * a;
    out.row(h) = (sys.d + sys.Z * a).transpose();
  }
  return out;
}

}  // namespace tcm
