// Copyright 2026 The risfeel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risfeel/ris_optimizer.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "risfeel/status_macros.h"

namespace risfeel {
namespace {

constexpr double kRelativeImprovement = 1e-12;
constexpr int64_t kBruteForceLimit = 1000000;

// Aggregation-MSE descent state for one device set and one beamformer.
class MseState {
 public:
  MseState(const ChannelRealization& real, std::vector<int> selected,
           std::vector<double> weights, std::vector<double> power)
      : real_(real),
        selected_(std::move(selected)),
        weights_(std::move(weights)),
        power_(std::move(power)) {}

  // Rebuilds per-element couplings u(k, l) = a_kl (f^H G(:, l)) and the
  // combined gains g_k = f^H h_k(theta) from scratch.
  void Reset(const Beamformer& f, const ComplexVector& theta) {
    const int n = static_cast<int>(selected_.size());
    const int num_elements = real_.num_elements();
    const ComplexVector fg =
        num_elements > 0 ? ComplexVector(real_.ris_to_server.transpose() *
                                         f.coefficients().conjugate())
                         : ComplexVector();
    coupling_.resize(n, num_elements);
    gains_.resize(n);
    for (int i = 0; i < n; ++i) {
      const int k = selected_[i];
      Complex g = f.Combine(real_.direct.row(k).transpose());
      for (int l = 0; l < num_elements; ++l) {
        coupling_(i, l) = real_.device_to_ris(k, l) * fg[l];
        g += coupling_(i, l) * theta[l];
      }
      gains_[i] = g;
    }
  }

  double Eta() const { return EtaWithShift(-1, Complex(0.0, 0.0)); }

  // eta after adding `delta` * coupling(:, l) to the gains (l < 0: none).
  double EtaWithShift(int l, Complex delta) const {
    double eta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(gains_.size()); ++i) {
      const double w = weights_[i];
      if (w <= 0.0) continue;
      const Complex g = l < 0 ? gains_[i] : gains_[i] + coupling_(i, l) * delta;
      eta = std::min(eta, power_[i] * std::norm(g) / (w * w));
    }
    return eta;
  }

  // eta after shifting several elements at once.
  double EtaWithShifts(std::span<const int> elements,
                       std::span<const Complex> deltas) const {
    double eta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(gains_.size()); ++i) {
      const double w = weights_[i];
      if (w <= 0.0) continue;
      Complex g = gains_[i];
      for (size_t j = 0; j < elements.size(); ++j) {
        g += coupling_(i, elements[j]) * deltas[j];
      }
      eta = std::min(eta, power_[i] * std::norm(g) / (w * w));
    }
    return eta;
  }

  void Shift(int l, Complex delta) {
    for (int i = 0; i < static_cast<int>(gains_.size()); ++i) {
      gains_[i] += coupling_(i, l) * delta;
    }
  }

 private:
  const ChannelRealization& real_;
  std::vector<int> selected_;
  std::vector<double> weights_;
  std::vector<double> power_;
  ComplexMatrix coupling_;
  std::vector<Complex> gains_;
};

double ObjectiveFromEta(double eta, double noise_std) {
  if (!(eta > 0.0)) return std::numeric_limits<double>::infinity();
  return noise_std * noise_std / (2.0 * eta);
}

absl::StatusOr<ComplexVector> InitialPhases(int restart, int num_elements,
                                            const PhaseCodebook& codebook,
                                            const RandomStream& stream) {
  if (restart == 0) return ComplexVector::Ones(num_elements);
  RandomStream child = stream.Fork(static_cast<uint64_t>(restart));
  return RandomPhases(num_elements, codebook, child).phases();
}

// Joint change of several discrete phases.
struct JointMove {
  std::vector<int> elements;
  std::vector<Complex> next;
};

// Largest number of candidate points a joint-move neighborhood may have.
constexpr double kJointMoveBudget = 2e5;

double JointNeighborhoodSize(int num_elements, int order, int levels) {
  double size = 1.0;
  for (int i = 0; i < order; ++i) {
    size *= static_cast<double>(num_elements - i) / (i + 1) * (levels - 1);
  }
  return size;
}

// First joint move of `order` elements (every chosen element changes level)
// accepted by `improves`, in lexicographic order of elements and levels.
template <typename Improves>
bool FindJointMove(const ComplexVector& theta, const PhaseCodebook& codebook,
                   int order, JointMove* move, Improves improves) {
  const int n = static_cast<int>(theta.size());
  JointMove candidate;
  candidate.elements.resize(order);
  candidate.next.resize(order);
  // Depth-first over increasing element indices, then levels.
  auto recurse = [&](auto& self, int depth, int first) -> bool {
    if (depth == order) return improves(candidate);
    for (int l = first; l <= n - (order - depth); ++l) {
      candidate.elements[depth] = l;
      for (int q = 0; q < codebook.levels; ++q) {
        const Complex level = codebook.Level(q);
        if (std::abs(level - theta[l]) < 1e-15) continue;
        candidate.next[depth] = level;
        if (self(self, depth + 1, l + 1)) return true;
      }
    }
    return false;
  };
  if (!recurse(recurse, 0, 0)) return false;
  *move = candidate;
  return true;
}

// Escalates from two-element to larger joint moves while the neighborhood
// stays within kJointMoveBudget. Single-element moves are the caller's job.
template <typename Improves>
bool FindEscapeMove(const ComplexVector& theta, const PhaseCodebook& codebook,
                    JointMove* move, Improves improves) {
  const int n = static_cast<int>(theta.size());
  // Orders up to n - 1: the full neighborhood would be exhaustive search.
  for (int order = 2; order < n; ++order) {
    if (JointNeighborhoodSize(n, order, codebook.levels) > kJointMoveBudget) {
      break;
    }
    if (FindJointMove(theta, codebook, order, move, improves)) return true;
  }
  return false;
}

struct MseRun {
  ComplexVector theta;
  Beamformer f;
  double eta = 0.0;
  std::vector<double> trace;
};

absl::StatusOr<MseRun> DescendMse(const ChannelRealization& real,
                                  std::span<const int> selected,
                                  MseState& state, ComplexVector theta,
                                  double noise_std,
                                  const OptimizerOptions& options) {
  const int num_elements = real.num_elements();
  const bool multi_antenna = real.num_antennas() > 1;
  const int levels = options.codebook.levels;

  auto dominant =
      [&](const ComplexVector& phases) -> absl::StatusOr<Beamformer> {
    if (!multi_antenna) return Beamformer::Canonical(1);
    RISFEEL_ASSIGN_OR_RETURN(RisConfig cfg, RisConfig::Create(phases));
    RISFEEL_ASSIGN_OR_RETURN(ComplexMatrix h, EffectiveChannel(real, cfg));
    return DominantBeamformer(h, selected);
  };

  MseRun run;
  RISFEEL_ASSIGN_OR_RETURN(run.f, dominant(theta));
  state.Reset(run.f, theta);
  run.eta = state.Eta();
  run.trace.push_back(ObjectiveFromEta(run.eta, noise_std));

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    bool improved = false;
    if (multi_antenna && sweep > 0) {
      RISFEEL_ASSIGN_OR_RETURN(Beamformer candidate, dominant(theta));
      state.Reset(candidate, theta);
      const double eta = state.Eta();
      if (eta > run.eta * (1.0 + kRelativeImprovement)) {
        run.f = std::move(candidate);
        run.eta = eta;
        improved = true;
      } else {
        state.Reset(run.f, theta);
      }
    }
    for (int l = 0; l < num_elements; ++l) {
      double best_eta = state.Eta();
      int best_q = -1;
      for (int q = 0; q < levels; ++q) {
        const Complex delta = options.codebook.Level(q) - theta[l];
        if (std::abs(delta) < 1e-15) continue;
        const double eta = state.EtaWithShift(l, delta);
        if (eta > best_eta * (1.0 + kRelativeImprovement)) {
          best_eta = eta;
          best_q = q;
        }
      }
      if (best_q >= 0) {
        const Complex next = options.codebook.Level(best_q);
        state.Shift(l, next - theta[l]);
        theta[l] = next;
      }
    }
    // Recompute from scratch so rounding does not accumulate across sweeps.
    state.Reset(run.f, theta);
    const double eta = state.Eta();
    if (eta > run.eta * (1.0 + kRelativeImprovement)) {
      run.eta = eta;
      improved = true;
    }
    if (!improved) {
      // Single-element moves are exhausted; joint moves escape stalls where
      // several devices bind at the minimum.
      JointMove move;
      std::vector<Complex> deltas;
      const bool found = FindEscapeMove(
          theta, options.codebook, &move, [&](const JointMove& m) {
            deltas.resize(m.elements.size());
            for (size_t j = 0; j < m.elements.size(); ++j) {
              deltas[j] = m.next[j] - theta[m.elements[j]];
            }
            return state.EtaWithShifts(m.elements, deltas) >
                   eta * (1.0 + kRelativeImprovement);
          });
      if (!found) break;
      for (size_t j = 0; j < move.elements.size(); ++j) {
        theta[move.elements[j]] = move.next[j];
      }
      state.Reset(run.f, theta);
      run.eta = std::max(run.eta, state.Eta());
    }
    run.trace.push_back(ObjectiveFromEta(run.eta, noise_std));
  }
  run.theta = std::move(theta);
  return run;
}

// Alignment residual state for a single-antenna realization.
class AlignmentState {
 public:
  AlignmentState(const ChannelRealization& real, std::span<const double> w)
      : weights_(w.begin(), w.end()) {
    const int k = real.num_devices();
    const int num_elements = real.num_elements();
    direct_ = real.direct.col(0);
    coupling_.resize(k, num_elements);
    for (int i = 0; i < k; ++i) {
      for (int l = 0; l < num_elements; ++l) {
        coupling_(i, l) = real.ris_to_server(0, l) * real.device_to_ris(i, l);
      }
    }
  }

  ComplexVector Channel(const ComplexVector& theta) const {
    if (coupling_.cols() == 0) return direct_;
    return direct_ + coupling_ * theta;
  }

  double Residual(const ComplexVector& h, Complex* scale) const {
    return AlignmentResidual(h, weights_, scale);
  }

  const ComplexMatrix& coupling() const { return coupling_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
  ComplexVector direct_;
  ComplexMatrix coupling_;
};

// Nearest codebook level per element.
ComplexVector QuantizePhases(const ComplexVector& theta,
                             const PhaseCodebook& codebook) {
  ComplexVector out(theta.size());
  const double step = 2.0 * M_PI / codebook.levels;
  for (Eigen::Index l = 0; l < theta.size(); ++l) {
    const double angle = std::arg(theta[l]);
    const long q = std::lround(angle / step);
    out[l] = codebook.Level(static_cast<int>(
        ((q % codebook.levels) + codebook.levels) % codebook.levels));
  }
  return out;
}

struct AlignmentRun {
  ComplexVector theta;
  double residual = 0.0;
  std::vector<double> trace;
};

AlignmentRun DescendAlignment(const AlignmentState& state, ComplexVector theta,
                              const OptimizerOptions& options) {
  const int num_elements = static_cast<int>(theta.size());
  const ComplexMatrix& v = state.coupling();
  const std::vector<double>& w = state.weights();
  ComplexVector h = state.Channel(theta);
  Complex scale;
  double residual = state.Residual(h, &scale);

  AlignmentRun run;
  run.trace.push_back(residual);
  for (int sweep = 0; sweep < options.max_sweeps && num_elements > 0; ++sweep) {
    const double start = residual;
    for (int l = 0; l < num_elements; ++l) {
      const double tol = kRelativeImprovement * std::max(residual, 1e-300);
      if (options.codebook.continuous()) {
        // With c fixed, sum_k |u_k + theta_l v_kl|^2 is minimized on the unit
        // circle by theta_l = -conj(s) / |s|, s = sum_k conj(u_k) v_kl.
        Complex s{0.0, 0.0};
        for (Eigen::Index k = 0; k < h.size(); ++k) {
          const Complex u = h[k] - v(k, l) * theta[l] - scale * w[k];
          s += std::conj(u) * v(k, l);
        }
        if (std::abs(s) == 0.0) continue;
        const Complex next = -std::conj(s) / std::abs(s);
        ComplexVector candidate = h + v.col(l) * (next - theta[l]);
        Complex candidate_scale;
        const double r = state.Residual(candidate, &candidate_scale);
        if (r < residual - tol) {
          h = std::move(candidate);
          theta[l] = next;
          residual = r;
          scale = candidate_scale;
        }
      } else {
        int best_q = -1;
        double best = residual;
        for (int q = 0; q < options.codebook.levels; ++q) {
          const Complex delta = options.codebook.Level(q) - theta[l];
          if (std::abs(delta) < 1e-15) continue;
          const double r = state.Residual(h + v.col(l) * delta, nullptr);
          if (r < best - tol) {
            best = r;
            best_q = q;
          }
        }
        if (best_q >= 0) {
          const Complex next = options.codebook.Level(best_q);
          h += v.col(l) * (next - theta[l]);
          theta[l] = next;
          residual = state.Residual(h, &scale);
        }
      }
    }
    h = state.Channel(theta);
    double exact = state.Residual(h, &scale);
    if (!(exact < start - kRelativeImprovement * std::max(start, 1e-300))) {
      if (options.codebook.continuous()) break;
      // Same joint-move escape as the MSE descent.
      const double tol = kRelativeImprovement * std::max(exact, 1e-300);
      JointMove move;
      ComplexVector trial;
      const bool found = FindEscapeMove(
          theta, options.codebook, &move, [&](const JointMove& m) {
            trial = h;
            for (size_t j = 0; j < m.elements.size(); ++j) {
              trial +=
                  v.col(m.elements[j]) * (m.next[j] - theta[m.elements[j]]);
            }
            return state.Residual(trial, nullptr) < exact - tol;
          });
      if (!found) break;
      for (size_t j = 0; j < move.elements.size(); ++j) {
        theta[move.elements[j]] = move.next[j];
      }
      h = state.Channel(theta);
      exact = state.Residual(h, &scale);
    }
    residual = exact;
    run.trace.push_back(residual);
  }
  run.theta = std::move(theta);
  run.residual = run.trace.back();
  return run;
}

absl::Status CheckDescentInputs(const ChannelRealization& real,
                                std::span<const int> selected,
                                std::span<const DeviceProfile> profiles) {
  if (selected.empty()) {
    return absl::InvalidArgumentError("selected device set is empty");
  }
  if (static_cast<int>(profiles.size()) != real.num_devices()) {
    return absl::InvalidArgumentError("one profile per device required");
  }
  for (int k : selected) {
    if (k < 0 || k >= real.num_devices()) {
      return absl::InvalidArgumentError(
          absl::StrCat("device index ", k, " out of range"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<MseState> MakeMseState(const ChannelRealization& real,
                                      std::span<const int> selected,
                                      std::span<const DeviceProfile> profiles) {
  double total = 0.0;
  for (const DeviceProfile& p : profiles) total += p.weight;
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError("aggregation weights sum to zero");
  }
  std::vector<double> weights;
  std::vector<double> power;
  for (int k : selected) {
    weights.push_back(profiles[k].weight / total);
    power.push_back(profiles[k].power_budget);
  }
  return MseState(real, std::vector<int>(selected.begin(), selected.end()),
                  std::move(weights), std::move(power));
}

}  // namespace

Complex PhaseCodebook::Level(int q) const {
  return std::polar(1.0, 2.0 * M_PI * q / levels);
}

absl::Status ValidateCodebook(const PhaseCodebook& codebook) {
  if (codebook.continuous()) return absl::OkStatus();
  if (codebook.levels < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "phase codebook needs at least 2 levels, got ", codebook.levels));
  }
  return absl::OkStatus();
}

absl::StatusOr<Beamformer> DominantBeamformer(const ComplexMatrix& h_eff,
                                              std::span<const int> selected) {
  if (selected.empty()) {
    return absl::InvalidArgumentError("selected device set is empty");
  }
  const Eigen::Index antennas = h_eff.cols();
  ComplexMatrix columns(antennas, static_cast<Eigen::Index>(selected.size()));
  for (size_t i = 0; i < selected.size(); ++i) {
    if (selected[i] < 0 || selected[i] >= h_eff.rows()) {
      return absl::InvalidArgumentError("selected device outside channel");
    }
    columns.col(i) = h_eff.row(selected[i]).transpose();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(columns, Eigen::ComputeThinU);
  ComplexVector u = svd.matrixU().col(0);
  Eigen::Index pivot = 0;
  u.cwiseAbs().maxCoeff(&pivot);
  if (std::abs(u[pivot]) > 0.0) u *= std::conj(u[pivot]) / std::abs(u[pivot]);
  return Beamformer::FromDirection(u);
}

absl::StatusOr<double> MseObjective(const ChannelRealization& real,
                                    const RisConfig& theta, const Beamformer& f,
                                    std::span<const int> selected,
                                    std::span<const DeviceProfile> profiles,
                                    double noise_std) {
  RISFEEL_ASSIGN_OR_RETURN(ComplexMatrix h, EffectiveChannel(real, theta));
  RISFEEL_ASSIGN_OR_RETURN(TransmitPlan plan,
                           PlanTransmissions(h, selected, profiles, f));
  return AnalyticMse(plan, f, noise_std);
}

double AlignmentResidual(const Eigen::Ref<const ComplexVector>& h,
                         std::span<const double> weights, Complex* scale) {
  double energy = 0.0;
  Complex cross{0.0, 0.0};
  for (Eigen::Index k = 0; k < h.size(); ++k) {
    energy += weights[k] * weights[k];
    cross += weights[k] * h[k];
  }
  const Complex c = energy > 0.0 ? cross / energy : Complex(0.0, 0.0);
  if (scale != nullptr) *scale = c;
  double residual = 0.0;
  for (Eigen::Index k = 0; k < h.size(); ++k) {
    residual += std::norm(h[k] - c * weights[k]);
  }
  return residual;
}

absl::StatusOr<MseSolution> OptimizeMse(const ChannelRealization& real,
                                        std::span<const int> selected,
                                        std::span<const DeviceProfile> profiles,
                                        double noise_std,
                                        const OptimizerOptions& options,
                                        RandomStream& stream) {
  RISFEEL_RETURN_IF_ERROR(CheckDescentInputs(real, selected, profiles));
  RISFEEL_RETURN_IF_ERROR(ValidateCodebook(options.codebook));
  if (options.codebook.continuous()) {
    return absl::InvalidArgumentError(
        "MSE optimization needs a discrete phase codebook");
  }
  if (real.num_elements() < 1) {
    return absl::InvalidArgumentError(
        "MSE optimization needs at least one RIS element");
  }
  RISFEEL_ASSIGN_OR_RETURN(MseState state,
                           MakeMseState(real, selected, profiles));

  MseSolution best;
  best.eta = -1.0;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    RISFEEL_ASSIGN_OR_RETURN(
        ComplexVector init,
        InitialPhases(r, real.num_elements(), options.codebook, stream));
    RISFEEL_ASSIGN_OR_RETURN(
        MseRun run,
        DescendMse(real, selected, state, std::move(init), noise_std, options));
    best.traces.push_back(run.trace);
    if (run.eta > best.eta) {
      RISFEEL_ASSIGN_OR_RETURN(best.theta, RisConfig::Create(run.theta));
      best.beamformer = run.f;
      best.eta = run.eta;
      best.best_restart = r;
    }
  }
  if (!(best.eta > 0.0)) {
    return absl::FailedPreconditionError(
        "every selected device has a degenerate effective channel");
  }
  best.objective = ObjectiveFromEta(best.eta, noise_std);
  return best;
}

absl::StatusOr<AlignmentResult> OptimizeAlignmentCsitFree(
    const ChannelRealization& real, std::span<const double> weights,
    const OptimizerOptions& options, RandomStream& stream) {
  if (real.num_antennas() != 1) {
    return absl::UnimplementedError(absl::StrCat(
        "CSIT-free alignment supports a single receive antenna, got M=",
        real.num_antennas()));
  }
  if (static_cast<int>(weights.size()) != real.num_devices()) {
    return absl::InvalidArgumentError("one weight per device required");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      return absl::InvalidArgumentError("alignment weights must be >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError("alignment weights are all zero");
  }
  RISFEEL_RETURN_IF_ERROR(ValidateCodebook(options.codebook));

  const AlignmentState state(real, weights);
  AlignmentResult best;
  best.residual = std::numeric_limits<double>::infinity();
  ComplexVector best_theta;
  const int restarts =
      real.num_elements() == 0 ? 1 : std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    RISFEEL_ASSIGN_OR_RETURN(
        ComplexVector init,
        InitialPhases(r, real.num_elements(), options.codebook, stream));
    if (r > 0 && !options.codebook.continuous()) {
      // Random restarts start from the rounded continuous optimum reached from
      // a random point on the unit circle.
      OptimizerOptions relaxed = options;
      relaxed.codebook = PhaseCodebook::Continuous();
      RandomStream child =
          stream.Fork("relaxed").Fork(static_cast<uint64_t>(r));
      ComplexVector start =
          RandomPhases(real.num_elements(), relaxed.codebook, child).phases();
      init = QuantizePhases(
          DescendAlignment(state, std::move(start), relaxed).theta,
          options.codebook);
    }
    AlignmentRun run = DescendAlignment(state, std::move(init), options);
    best.traces.push_back(run.trace);
    if (run.residual < best.residual) {
      best.residual = run.residual;
      best_theta = std::move(run.theta);
      best.best_restart = r;
    }
  }
  RISFEEL_ASSIGN_OR_RETURN(best.theta, RisConfig::Create(best_theta));
  best.residual = state.Residual(state.Channel(best_theta), &best.scale);
  return best;
}

absl::StatusOr<BruteForceResult> BruteForcePhases(
    const ChannelRealization& real, std::span<const int> selected,
    std::span<const DeviceProfile> profiles, double noise_std, int levels,
    PhaseObjective objective) {
  RISFEEL_RETURN_IF_ERROR(CheckDescentInputs(real, selected, profiles));
  RISFEEL_RETURN_IF_ERROR(ValidateCodebook(PhaseCodebook::Discrete(levels)));
  const int num_elements = real.num_elements();
  int64_t count = 1;
  for (int l = 0; l < num_elements; ++l) {
    count *= levels;
    if (count > kBruteForceLimit) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "exhaustive search over ", levels, "^", num_elements,
          " configurations exceeds the limit of ", kBruteForceLimit));
    }
  }
  if (objective == PhaseObjective::kAlignment && real.num_antennas() != 1) {
    return absl::UnimplementedError(
        "alignment objective supports a single receive antenna");
  }

  const ChannelRealization sub = RestrictToDevices(real, selected);
  std::vector<double> weights;
  for (int k : selected) weights.push_back(profiles[k].weight);
  const PhaseCodebook codebook = PhaseCodebook::Discrete(levels);

  std::vector<int> digits(num_elements, 0);
  BruteForceResult best;
  best.value = std::numeric_limits<double>::infinity();
  ComplexVector best_theta = ComplexVector::Ones(num_elements);
  ComplexVector theta(num_elements);
  for (int64_t index = 0; index < count; ++index) {
    for (int l = 0; l < num_elements; ++l) theta[l] = codebook.Level(digits[l]);
    RISFEEL_ASSIGN_OR_RETURN(RisConfig cfg, RisConfig::Create(theta));
    double value = std::numeric_limits<double>::infinity();
    if (objective == PhaseObjective::kAlignment) {
      RISFEEL_ASSIGN_OR_RETURN(ComplexMatrix h, EffectiveChannel(sub, cfg));
      value = AlignmentResidual(h.col(0), weights, nullptr);
    } else {
      RISFEEL_ASSIGN_OR_RETURN(ComplexMatrix h, EffectiveChannel(real, cfg));
      RISFEEL_ASSIGN_OR_RETURN(Beamformer f, DominantBeamformer(h, selected));
      auto plan = PlanTransmissions(h, selected, profiles, f);
      if (plan.ok()) {
        RISFEEL_ASSIGN_OR_RETURN(value, AnalyticMse(*plan, f, noise_std));
      } else if (!absl::IsFailedPrecondition(plan.status())) {
        return plan.status();
      }
    }
    ++best.evaluations;
    if (value < best.value) {
      best.value = value;
      best_theta = theta;
    }
    for (int l = 0; l < num_elements; ++l) {
      if (++digits[l] < levels) break;
      digits[l] = 0;
    }
  }
  RISFEEL_ASSIGN_OR_RETURN(best.theta, RisConfig::Create(best_theta));
  return best;
}

RisConfig RandomPhases(int num_elements, const PhaseCodebook& codebook,
                       RandomStream& stream) {
  ComplexVector phases(num_elements);
  for (int l = 0; l < num_elements; ++l) {
    if (codebook.continuous()) {
      phases[l] = std::polar(1.0, 2.0 * M_PI * stream.Uniform());
    } else {
      phases[l] = codebook.Level(
          static_cast<int>(stream.UniformIndex(codebook.levels)));
    }
  }
  return *RisConfig::Create(std::move(phases));
}

}  // namespace risfeel
