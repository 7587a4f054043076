#include "hgpdc/schmidt.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "hgpdc/errors.hpp"

namespace hgpdc {

SecondMoment SecondMoment::unit_weights(CMatrix matrix) {
  SecondMoment m;
  m.signal_weights = RVector::Ones(matrix.rows());
  m.idler_weights = RVector::Ones(matrix.cols());
  m.matrix = std::move(matrix);
  return m;
}

CMatrix SecondMoment::continuum() const {
  const RVector s = signal_weights.cwiseSqrt().cwiseInverse();
  const RVector i = idler_weights.cwiseSqrt().cwiseInverse();
  return s.asDiagonal() * matrix * i.asDiagonal();
}

SecondMoment second_moment(const PropagatorState& state, const FrequencyGrid& grid,
                           double source_power) {
  if (state.A.rows() != grid.signal.size() || state.D.rows() != grid.idler.size() ||
      state.A.cols() != state.D.cols()) {
    throw DimensionMismatch("second moment: state does not match the grid");
  }
  SecondMoment m;
  m.matrix.noalias() = state.A * state.D.transpose();
  m.signal_weights = grid.signal.weights;
  m.idler_weights = grid.idler.weights;
  m.source_power = source_power;
  m.time = state.t;
  return m;
}

SchmidtDecomposition schmidt_decompose(const SecondMoment& moment, double truncation) {
  const CMatrix& M = moment.matrix;
  if (M.rows() != moment.signal_weights.size() || M.cols() != moment.idler_weights.size())
    throw DimensionMismatch("moment weights do not match the matrix");
  if (!M.allFinite()) throw NonFiniteState("moment matrix has non-finite entries");

  Eigen::BDCSVD<CMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD of the second moment failed");

  const RVector& sv = svd.singularValues();
  Eigen::Index rank = 0;
  if (sv.size() > 0 && sv[0] > 0.0) {
    while (rank < sv.size() && sv[rank] > truncation * sv[0]) ++rank;
  }

  SchmidtDecomposition dec;
  dec.rank = rank;
  dec.sigma = sv.head(rank);
  dec.r.resize(rank);
  for (Eigen::Index l = 0; l < rank; ++l) dec.r[l] = 0.5 * std::asinh(2.0 * sv[l]);
  dec.signal_weights = moment.signal_weights;
  dec.idler_weights = moment.idler_weights;

  // M = U S V^dagger = sum_l s_l u_l conj(v_l)^T, so the idler mode is conj(v_l).
  const RVector inv_ws = moment.signal_weights.cwiseSqrt().cwiseInverse();
  const RVector inv_wi = moment.idler_weights.cwiseSqrt().cwiseInverse();
  dec.signal_modes.resize(M.rows(), rank);
  dec.idler_modes.resize(M.cols(), rank);
  for (Eigen::Index l = 0; l < rank; ++l) {
    CVector u = svd.matrixU().col(l);
    CVector v = svd.matrixV().col(l).conjugate();
    Eigen::Index peak = 0;
    (inv_ws.asDiagonal() * u).cwiseAbs2().maxCoeff(&peak);
    const cdouble phase = std::polar(1.0, std::arg(u[peak]));
    u /= phase;
    v *= phase;
    u[peak] = std::abs(u[peak]);
    dec.signal_modes.col(l) = inv_ws.asDiagonal() * u;
    dec.idler_modes.col(l) = inv_wi.asDiagonal() * v;
  }
  return dec;
}

CMatrix reconstruct_jsa(const SchmidtDecomposition& dec) {
  return dec.signal_modes * dec.r.cast<cdouble>().asDiagonal() * dec.idler_modes.transpose();
}

CMatrix reconstruct_moment(const SchmidtDecomposition& dec) {
  const RVector ws = dec.signal_weights.cwiseSqrt();
  const RVector wi = dec.idler_weights.cwiseSqrt();
  return ws.asDiagonal() * dec.signal_modes * dec.sigma.cast<cdouble>().asDiagonal() *
         dec.idler_modes.transpose() * wi.asDiagonal();
}

double gain_to_db(double gain) { return 20.0 * gain * std::numbers::log10e; }

SpectralMetrics metrics_from_r(const RVector& r) {
  SpectralMetrics out;
  if (r.size() == 0 || !(r.maxCoeff() > 0.0))
    throw EmptySpectrum("all squeezing parameters vanish; purity is undefined");
  // sinh^2 is evaluated relative to the leading mode to stay finite at very high gain.
  const double r1 = r.maxCoeff();
  RVector s2(r.size());
  for (Eigen::Index l = 0; l < r.size(); ++l) {
    const double s = std::sinh(r[l]) / std::sinh(r1);
    s2[l] = s * s;
  }
  const double total = s2.sum();
  out.mode_weights = s2 / total;
  out.purity = out.mode_weights.squaredNorm();
  out.gain = r.norm();
  out.gain_db = gain_to_db(out.gain);
  out.effective_modes = 1.0 / out.purity;
  return out;
}

SpectralMetrics metrics(const SchmidtDecomposition& dec) { return metrics_from_r(dec.r); }

}  // namespace hgpdc
