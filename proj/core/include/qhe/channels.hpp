#pragma once

// Kraus-operator channels: qubit generalized amplitude damping (GAD), qubit
// amplitude damping (AD) and the six-operator qutrit GAD.

#include <string>
#include <vector>

#include "qhe/linalg.hpp"
#include "qhe/qstate.hpp"

namespace qhe {

// Corrected is the self-consistent channel/formula set. Literal keeps the
// uncorrected variants for comparison: sqrt(f') on F3 (not trace preserving),
// the flipped p_g term in the non-cyclic p'_e, the + sign on the emission
// term of qutrit Q1 and Delta^c_12 in the qutrit rejected heat.
enum class Convention { Corrected, Literal };

#ifdef NDEBUG
inline constexpr bool kVerifyChannelsByDefault = false;
#else
inline constexpr bool kVerifyChannelsByDefault = true;
#endif

struct ChannelOptions {
  Convention convention = Convention::Corrected;
  // Check completeness at construction and throw on failure.
  bool verify = kVerifyChannelsByDefault;
};

enum class ChannelFamily { QubitGad, QubitAd, QutritGad };

struct ChannelParams {
  ChannelFamily family = ChannelFamily::QubitGad;
  double f = 1.0;        // emission weight (f or f')
  double gamma = 0.0;    // qubit damping probability (k for AD)
  double lambda1 = 0.0;  // qutrit |1> <-> |0> damping
  double lambda2 = 0.0;  // qutrit |2> <-> |0> damping
};

class KrausSet {
 public:
  KrausSet(std::vector<Matrix> operators, ChannelParams params);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Matrix>& operators() const noexcept { return operators_; }
  const ChannelParams& params() const noexcept { return params_; }

  // Sum_k A_k† A_k.
  Matrix completeness_sum() const;
  // max |(Sum_k A_k† A_k - I)_ij|.
  double completeness_residual() const;
  double max_singular_value() const;

 private:
  std::size_t dim_;
  std::vector<Matrix> operators_;
  ChannelParams params_;
};

// Damping strength accumulated over contact time: 1 - exp(-rate * time).
struct DampingSchedule {
  double rate = 0.0;
  double time = 0.0;
};

double damping_from_schedule(const DampingSchedule& schedule);

KrausSet gad_qubit(double f, double gamma, const ChannelOptions& options = {});
// Pure amplitude damping: gad_qubit(1, k).
KrausSet ad_qubit(double k, const ChannelOptions& options = {});
// Requires lambda1 + lambda2 <= 1 (InfeasibleDamping otherwise).
KrausSet gad_qutrit(double f_prime, double lambda1, double lambda2, const ChannelOptions& options = {});

// Sum_k A_k rho A_k†.
DensityMatrix apply(const KrausSet& channel, const DensityMatrix& state);

// Stationary state, found by iterating the channel from the maximally mixed
// state until successive iterates are within 1e-13 (at most 1e6 steps).
DensityMatrix fixed_point(const KrausSet& channel);

}  // namespace qhe
