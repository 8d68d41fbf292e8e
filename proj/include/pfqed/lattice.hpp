#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pfqed {

inline constexpr double kSpeedOfLight = 137.035999084;

// Raw parameter record as read from input. h is optional: when absent it tracks Delta.
struct ParamsInput {
  double eta = 1;
  double N = 1;
  double L = 1;
  double Lambda = 2;
  int a = 1;
  std::optional<double> h;
  double c = kSpeedOfLight;
  int K = 0;
  std::vector<double> Z;
  double t = 0;
  double eps = 1e-3;
};

// Validated parameters with every derived quantity populated.
struct SimulationParams {
  ParamsInput input;

  double eta = 1;
  double N = 1;
  double L = 1;
  double Lambda = 2;
  int a = 1;
  double h = 1;
  double c = kSpeedOfLight;
  int K = 0;
  std::vector<double> Z;
  double t = 0;
  double eps = 1e-3;

  double K_h = 1.0;  // h <= K_h * Delta
  double Delta = 1;
  double Omega = 1;
  double d = 4;  // link space dimension 2*Lambda
  double Z_sum = 0;
  double Z_max = 0;
  double eta_s = 1;

  // Set only by the strict path: integral grid side and power-of-two cutoff.
  bool lattice_valid = false;
  std::int64_t side = 0;
  int lambda_int = 0;
};

/// Strict validation: N a perfect cube, Lambda a power of two, and every count integral.
SimulationParams derive(const ParamsInput& raw);

/// Real-valued validation for the asymptotic cost models: positivity only. N and Lambda
/// may be any positive reals (sweeps run through 10^15 sites and non-power-of-two cutoffs).
SimulationParams derive_relaxed(const ParamsInput& raw);

ParamsInput params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const ParamsInput& p);

/// Neon attosecond reference instance.
ParamsInput neon_reference();

using Site = std::array<std::int64_t, 3>;

struct LinkIndex {
  Site q{};
  int mu = 1;  // direction 1..3
  bool operator==(const LinkIndex&) const = default;
};

struct Plaquette {
  int mu = 1;
  int nu = 2;
  std::array<LinkIndex, 4> links{};  // (q,mu), (q+mu,nu), (q+nu,mu), (q,nu)
};

class Lattice {
 public:
  explicit Lattice(std::int64_t side);
  explicit Lattice(const SimulationParams& p);

  std::int64_t side() const { return side_; }
  std::int64_t sites() const { return side_ * side_ * side_; }
  std::int64_t link_count() const { return 3 * sites(); }

  // Row-major flattening with z fastest.
  std::int64_t flatten(const Site& q) const;
  Site unflatten(std::int64_t index) const;

  // q + k * e_mu with periodic wrap.
  Site step(const Site& q, int mu, std::int64_t k = 1) const;

  std::int64_t link_id(const LinkIndex& l) const;

  std::vector<Plaquette> plaquettes() const;

 private:
  std::int64_t side_;
};

}  // namespace pfqed
