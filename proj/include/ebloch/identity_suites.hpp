#pragma once

// Randomized checks of the relations among generators, run through the
// computable maps (R, nu, epsilon). Deterministic for a fixed seed.

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ebloch/extended_bloch.hpp"

namespace ebloch {

/// mt19937_64 with hand-written mappings so draws agree on every platform.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Inclusive range.
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }
  /// Off the real axis: Im z in +/-[0.1, 2].
  std::complex<double> generic_complex();
  std::complex<double> upper_half_plane();
  /// (x, y) in FT+, kept a little away from the triangle's sides.
  std::pair<std::complex<double>, std::complex<double>> ft_plus_point();

 private:
  std::mt19937_64 gen_;
};

struct SuiteResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  double max_r_residual = 0.0;
  bool nu_exact = true;
  std::vector<std::string> counterexamples;
  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  int count = 100;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  /// Counterexamples kept per suite.
  int max_dumps = 5;
};

SuiteResult five_term_suite(const VerifyOptions& o);
SuiteResult transfer_suite(const VerifyOptions& o);
SuiteResult super_transfer_suite(const VerifyOptions& o);
SuiteResult three_equations_suite(const VerifyOptions& o);
SuiteResult homo_suite(const VerifyOptions& o);
SuiteResult one_minus_x_suite(const VerifyOptions& o);
SuiteResult chi_suite(const VerifyOptions& o);
SuiteResult chi_hat_suite(const VerifyOptions& o);
SuiteResult kappa_epsilon_suite(const VerifyOptions& o);
SuiteResult edge_kernel_suite(const VerifyOptions& o);
SuiteResult cycle_three_suite(const VerifyOptions& o);
SuiteResult cycle_folded_suite(const VerifyOptions& o);

std::vector<SuiteResult> run_identity_suites(const VerifyOptions& o);

}  // namespace ebloch
