#pragma once

// Lower-bound constructions: the mu-parameterized network revenue management
// family and the stochastic packing programs of the lower bound with their closed forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ksb/env/instance.hpp"
#include "ksb/error.hpp"
#include "ksb/lp/packing.hpp"

namespace ksb::hard {

class EtaTooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class QOutOfRange : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Closed form and solver disagree somewhere.
class GapMismatch : public Error {
 public:
  using Error::Error;
};

/// Two rows of perturbations, one entry per action. Row 1 shifts the
/// revenue-bearing product, row 2 the two resource-bearing products.
struct MuMatrix {
  std::vector<double> mu1;
  std::vector<double> mu2;

  std::size_t K() const noexcept { return mu1.size(); }
};

struct HardBnrm {
  env::BnrmInstance instance;
  std::optional<std::string> warning;  // set when K < 2(d+1)
};

/// d resources with B_i = T/2 and n = K(d+1) products in K blocks of d+1.
/// Product (k-1)(d+1)+1 carries price 1 and no consumption; the remaining
/// d products of each block consume one unit of resources 1..d.
HardBnrm build_hard_bnrm(std::int64_t T, std::size_t d, std::size_t K, const MuMatrix& mu);

/// Product of action k whose mean is 1/2 - mu2_k, i.e. (k-1)(d+1)+(k-1)%(d+1)+1
/// in 1-based terms. Both k and the result are 0-based here. When this is the
/// revenue-bearing product the revenue rule wins.
std::size_t minus_product(std::size_t d, std::size_t k);
/// Product of action k whose mean is 1/2 + mu2_k: (k-1)(d+1)+k%(d+1)+1, 1-based.
std::size_t plus_product(std::size_t d, std::size_t k);

struct Lemma1Mu {
  double eta = 0.0;
  MuMatrix mu;
};

/// eta = c0 T^-alpha, mu1 = (eta/(d+1), 0, ..., 0, -eta/(d+1)), mu2 = eta.
/// K defaults to d+1; larger K repeats the pattern with period d+1.
Lemma1Mu lemma1_mu(std::int64_t T, std::size_t d, double alpha, double c0,
                   std::optional<std::size_t> K = std::nullopt);

/// Same assignment for a given eta.
MuMatrix lemma1_mu_for_eta(std::size_t d, double eta, std::optional<std::size_t> K = std::nullopt);

struct Lemma1Values {
  double J_full = 0.0;
  std::vector<double> J;    // J_l with x_l excluded, l = 1..d+1
  std::vector<double> J_G;  // x_l capped at zeta T/(d+1), l = 1..d+1
  double Delta = 0.0;       // (J_full - max_l J_G) / J_full
};

/// Exact optimal values of the lower-bound program family. J_full = T/2 and
/// J_{d+1} = (T/2)(1 - 4 eta / (d(d+1)^2 + 4 eta (d+1))) is the largest J_l.
/// For l <= d the value is the better of the tail vertex
/// (T/2)(1 - 2 eta / ((d-l+1)(d+1))) and a head vertex that keeps x_1 large,
/// and J_G_l can exceed zeta J_full + (1 - zeta) J_l.
Lemma1Values lemma1_closed_forms(double T, std::size_t d, double eta, double zeta);

/// max  sum_k x_k/2 + eta/(d+1) (x_1 - x_{d+1})
/// s.t. sum_k x_k/2 + eta (x_i - x_{i+1}) <= T/2   (i = 1..d),  sum_k x_k <= T.
lp::PackingProgram lemma1_program(double T, std::size_t d, double eta);

/// lemma1_program with x_l pinned to 0 (l is 1-based).
lp::PackingProgram lemma1_excluded(double T, std::size_t d, double eta, std::size_t l);

/// lemma1_program with x_l <= zeta T/(d+1) (l is 1-based).
lp::PackingProgram lemma1_capped(double T, std::size_t d, double eta, double zeta, std::size_t l);

struct GapCheck {
  std::string name;
  double solver = 0.0;
  double closed_form = 0.0;
  bool ok = false;
};

struct ProbeResult {
  std::size_t excluded = 0;  // 1-based l maximizing J_l
  std::vector<std::size_t> actions;
  std::vector<std::int64_t> lengths;
  std::size_t trials = 0;
  double mean_revenue = 0.0;
  double stderr_revenue = 0.0;
  double max_switches = 0.0;
  double reference = 0.0;  // J_full
  double shortfall = 0.0;  // reference - mean_revenue
};

struct GapReport {
  std::int64_t T = 0;
  std::size_t d = 0;
  double eta = 0.0;
  double zeta = 0.0;
  double tolerance = 0.0;
  std::vector<GapCheck> checks;
  std::optional<ProbeResult> probe;

  bool ok() const;
  std::vector<std::string> mismatches() const;
};

struct ProbeOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
};

/// Solves every variant of the lower-bound program and compares with the closed
/// forms within 1e-8 T; then runs a clairvoyant probe on the hard instance
/// that plays the d actions left by the best exclusion (one switch fewer than
/// the full-support optimum needs). probe = nullopt skips the simulation.
GapReport verify_gap(std::int64_t T, std::size_t d, double eta, double zeta,
                     std::optional<ProbeOptions> probe = ProbeOptions{});

nlohmann::json to_json(const GapReport& report);

}  // namespace ksb::hard
