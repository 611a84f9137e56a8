#pragma once

// Pieces shared between the current and the MSD integrands.

#include "tfse/edge_current.hpp"
#include "tfse/mittag_leffler.hpp"

namespace tfse::detail {

/// E_{a,1} and E_{a,a} for one alpha. Built once per trace so the
/// high-precision seed caches are shared across times.
struct MLPair {
  explicit MLPair(double alpha);
  MittagLeffler e1;
  MittagLeffler ea;
};

/// Phase swept by exp(t lambda^(1/a) e^{i theta}) across the support, zero
/// when the exponential part is absent.
double exp_phase_range(const FractionalOrder& order, const EdgeSystem& sys, double t);

}  // namespace tfse::detail
