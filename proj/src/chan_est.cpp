#include "sdarray/chan_est.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "sdarray/error.hpp"
#include "sdarray/kernels.hpp"
#include "sdarray/rng.hpp"

namespace sdarray {
namespace {

constexpr int kMaxRedraws = 16;

RMatrix random_sign_matrix(int rows, int cols, std::mt19937_64& gen) {
  const double v = 1.0 / std::sqrt(static_cast<double>(rows));
  RMatrix m(rows, cols);
  std::uint64_t bits = 0;
  int left = 0;
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      if (left == 0) {
        bits = gen();
        left = 64;
      }
      m(r, c) = (bits & 1U) ? v : -v;
      bits >>= 1;
      --left;
    }
  }
  return m;
}

}  // namespace

RMatrix PilotDesign::combined() const {
  RMatrix out(antennas, beams());
  for (int t = 0; t < slots; ++t) out.middleCols(t * rf_chains, rf_chains) = rf[t] * baseband[t];
  return out;
}

PilotDesign make_pilot_design(int antennas, int rf_chains, int slots, double pilot_power,
                              std::mt19937_64& gen) {
  require(antennas >= 1, "make_pilot_design: N must be positive");
  require(rf_chains >= 1 && rf_chains <= antennas, "make_pilot_design: need 1 <= N_RF <= N");
  require(slots >= 1, "make_pilot_design: N_slot must be positive");
  require(pilot_power > 0.0, "make_pilot_design: pilot power must be positive");
  PilotDesign d;
  d.antennas = antennas;
  d.rf_chains = rf_chains;
  d.slots = slots;
  d.pilot_power = pilot_power;
  d.rf.reserve(slots);
  d.baseband.reserve(slots);
  for (int t = 0; t < slots; ++t) {
    for (int attempt = 0;; ++attempt) {
      RMatrix v = random_sign_matrix(antennas, rf_chains, gen);
      const Eigen::LLT<RMatrix> llt(v.transpose() * v);
      const RMatrix upper = llt.matrixU();
      const double min_pivot = upper.diagonal().cwiseAbs().minCoeff();
      if (llt.info() == Eigen::Success && min_pivot > 1e-10) {
        d.baseband.push_back(
            upper.triangularView<Eigen::Upper>().solve(RMatrix::Identity(rf_chains, rf_chains)));
        d.rf.push_back(std::move(v));
        break;
      }
      if (attempt + 1 >= kMaxRedraws) {
        std::ostringstream msg;
        msg << "make_pilot_design: analog combiner of slot " << t << " is rank deficient after "
            << kMaxRedraws << " draws";
        throw NumericalError(msg.str());
      }
    }
  }
  return d;
}

PilotDesign make_pilot_design(int antennas, int rf_chains, int slots, double pilot_power,
                              std::uint64_t seed) {
  std::mt19937_64 gen = make_stream(seed, 0, 0);
  PilotDesign d = make_pilot_design(antennas, rf_chains, slots, pilot_power, gen);
  d.seed = seed;
  return d;
}

CVector measure(const CVector& h, double beta, const PilotDesign& design, double noise_variance,
                std::mt19937_64& gen) {
  require(h.size() == design.antennas, "measure: channel length does not match the design");
  require(beta >= 0.0 && noise_variance >= 0.0, "measure: β and σ² must be nonnegative");
  const double amp = std::sqrt(beta * design.pilot_power);
  const int n = design.antennas;
  const int r = design.rf_chains;
  CVector y(design.beams());
  CVector noise(n);
  for (int t = 0; t < design.slots; ++t) {
    const RMatrix v = design.rf[t] * design.baseband[t];
    CVector slot = amp * (v.transpose().cast<cdouble>() * h);
    if (noise_variance > 0.0) {
      for (int i = 0; i < n; ++i) noise(i) = complex_normal(gen, noise_variance);
      slot += v.transpose().cast<cdouble>() * noise;
    }
    y.segment(t * r, r) = slot;
  }
  return y;
}

CVector measure(const CVector& h, double beta, const PilotDesign& design, double noise_variance,
                std::uint64_t seed) {
  std::mt19937_64 gen = make_stream(seed, 0, 1);
  return measure(h, beta, design, noise_variance, gen);
}

Dictionary build_dictionary(const ChannelModel& model, int size, double theta_max) {
  require(size >= 1, "build_dictionary: G must be positive");
  Dictionary d;
  d.theta_max = theta_max;
  d.angles.resize(size);
  d.columns.resize(model.size(), size);
  for (int g = 0; g < size; ++g) {
    d.angles(g) = theta_max * g / size;
    d.columns.col(g) = model.channel(d.angles(g));
  }
  return d;
}

namespace {

EstimationResult pick(const std::vector<double>& scores, const Dictionary& dict, bool zero_input) {
  EstimationResult r;
  r.degenerate = zero_input;
  if (!zero_input) {
    double best = scores[0];
    for (std::size_t g = 1; g < scores.size(); ++g) {
      if (scores[g] > best) {
        best = scores[g];
        r.index = static_cast<int>(g);
      }
    }
  } else {
    std::clog << "warning: OMP received an all-zero measurement; returning grid index 0\n";
  }
  r.estimate = dict.columns.col(r.index);
  return r;
}

}  // namespace

EstimationResult omp_single_path(const CVector& y, const CMatrix& phi, const Dictionary& dict) {
  require(phi.rows() == y.size(), "omp_single_path: Φ rows must match the measurement length");
  require(phi.cols() == dict.size(), "omp_single_path: Φ must have G columns");
  std::vector<double> scores(dict.size());
  kernels::column_correlations({phi.data(), static_cast<std::size_t>(phi.size())},
                               static_cast<std::size_t>(phi.rows()),
                               {y.data(), static_cast<std::size_t>(y.size())}, scores);
  return pick(scores, dict, y.squaredNorm() == 0.0);
}

EstimationResult omp_single_path(const CVector& y, const PilotDesign& design,
                                 const Dictionary& dict) {
  require(y.size() == design.beams(), "omp_single_path: measurement length must equal N_beam");
  require(dict.columns.rows() == design.antennas, "omp_single_path: dictionary size mismatch");
  CVector q = CVector::Zero(design.antennas);
  for (int t = 0; t < design.slots; ++t) {
    const RMatrix v = design.rf[t] * design.baseband[t];
    q += v.cast<cdouble>() * y.segment(t * design.rf_chains, design.rf_chains);
  }
  std::vector<double> scores(dict.size());
  kernels::column_correlations(
      {dict.columns.data(), static_cast<std::size_t>(dict.columns.size())},
      static_cast<std::size_t>(dict.columns.rows()), {q.data(), static_cast<std::size_t>(q.size())},
      scores);
  return pick(scores, dict, y.squaredNorm() == 0.0);
}

CMatrix sensing_matrix(const PilotDesign& design, const Dictionary& dict) {
  return std::sqrt(design.pilot_power) * (design.combined().transpose().cast<cdouble>() * dict.columns);
}

double nse(const std::vector<CVector>& truth, const std::vector<CVector>& estimates) {
  require(!truth.empty() && truth.size() == estimates.size(),
          "nse: need K >= 1 matching channel/estimate pairs");
  double acc = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    require(truth[k].size() == estimates[k].size(), "nse: vector length mismatch");
    acc += (truth[k] - estimates[k]).squaredNorm() / truth[k].squaredNorm();
  }
  return acc / static_cast<double>(truth.size());
}

double channel_estimation_power(int users, int beams, double pilot_power) {
  return static_cast<double>(users) * beams * pilot_power;
}

}  // namespace sdarray
