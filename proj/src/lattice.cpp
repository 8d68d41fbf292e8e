#include "pfqed/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pfqed/errors.hpp"

namespace pfqed {

namespace {

bool is_power_of_two(double x) {
  if (x < 1 || x != std::floor(x) || x > 9.0e15) return false;
  const auto v = static_cast<std::uint64_t>(x);
  return (v & (v - 1)) == 0;
}

std::int64_t integer_cube_root(double n) {
  if (n < 1 || n != std::floor(n) || n > 9.0e15) return -1;
  auto r = static_cast<std::int64_t>(std::llround(std::cbrt(n)));
  for (std::int64_t c = std::max<std::int64_t>(1, r - 1); c <= r + 1; ++c) {
    if (static_cast<double>(c * c * c) == n) return c;
  }
  return -1;
}

SimulationParams fill(const ParamsInput& raw, double side) {
  SimulationParams p;
  p.input = raw;
  p.eta = raw.eta;
  p.N = raw.N;
  p.L = raw.L;
  p.Lambda = raw.Lambda;
  p.a = raw.a;
  p.c = raw.c;
  p.K = raw.K;
  p.Z = raw.Z;
  p.t = raw.t;
  p.eps = raw.eps;
  p.Delta = raw.L / side;
  p.Omega = raw.L * raw.L * raw.L;
  p.d = 2.0 * raw.Lambda;
  p.Z_sum = 0;
  p.Z_max = 0;
  for (double z : raw.Z) {
    p.Z_sum += std::abs(z);
    p.Z_max = std::max(p.Z_max, std::abs(z));
  }
  p.eta_s = p.eta + p.Z_sum;
  p.h = raw.h.value_or(p.Delta);
  if (p.h > p.K_h * p.Delta * (1 + 1e-12)) {
    throw InvalidArgument("h must satisfy h <= K_h * Delta");
  }
  return p;
}

void check_common(const ParamsInput& raw) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be positive");
  };
  positive(raw.eta, "eta");
  positive(raw.N, "N");
  positive(raw.L, "L");
  positive(raw.Lambda, "Lambda");
  positive(raw.c, "c");
  positive(raw.eps, "eps");
  if (raw.h) positive(*raw.h, "h");
  if (raw.a < 1) throw InvalidArgument("a must be >= 1");
  if (raw.K < 0) throw InvalidArgument("K must be >= 0");
  if (static_cast<std::size_t>(raw.K) != raw.Z.size()) {
    throw InvalidArgument("Z must list exactly K charges");
  }
  if (!(raw.t >= 0) || !std::isfinite(raw.t)) throw InvalidArgument("t must be >= 0");
}

}  // namespace

SimulationParams derive(const ParamsInput& raw) {
  check_common(raw);
  if (raw.eta < 1 || raw.eta != std::floor(raw.eta)) {
    throw InvalidArgument("eta must be a positive integer");
  }
  const auto side = integer_cube_root(raw.N);
  if (side < 1) throw InvalidArgument("N must be a perfect cube");
  if (!is_power_of_two(raw.Lambda) || raw.Lambda < 2) {
    throw InvalidArgument("Lambda must be a power of two, at least 2");
  }
  SimulationParams p = fill(raw, static_cast<double>(side));
  p.lattice_valid = true;
  p.side = side;
  p.lambda_int = static_cast<int>(raw.Lambda);
  return p;
}

SimulationParams derive_relaxed(const ParamsInput& raw) {
  check_common(raw);
  return fill(raw, std::cbrt(raw.N));
}

ParamsInput params_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {"eta", "N", "L", "Lambda", "a", "h",
                                              "c",   "K", "Z", "t",      "eps"};
  if (!j.is_object()) throw InvalidArgument("params must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InvalidArgument("unknown params field: " + key);
  }
  ParamsInput p;
  try {
    if (j.contains("eta")) p.eta = j.at("eta").get<double>();
    if (j.contains("N")) p.N = j.at("N").get<double>();
    if (j.contains("L")) p.L = j.at("L").get<double>();
    if (j.contains("Lambda")) p.Lambda = j.at("Lambda").get<double>();
    if (j.contains("a")) p.a = j.at("a").get<int>();
    if (j.contains("h")) p.h = j.at("h").get<double>();
    if (j.contains("c")) p.c = j.at("c").get<double>();
    if (j.contains("Z")) p.Z = j.at("Z").get<std::vector<double>>();
    p.K = j.contains("K") ? j.at("K").get<int>() : static_cast<int>(p.Z.size());
    if (j.contains("t")) p.t = j.at("t").get<double>();
    if (j.contains("eps")) p.eps = j.at("eps").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("params: ") + e.what());
  }
  return p;
}

nlohmann::json params_to_json(const ParamsInput& p) {
  nlohmann::json j = {{"eta", p.eta}, {"N", p.N}, {"L", p.L}, {"Lambda", p.Lambda},
                      {"a", p.a},     {"c", p.c}, {"K", p.K}, {"Z", p.Z},
                      {"t", p.t},     {"eps", p.eps}};
  if (p.h) j["h"] = *p.h;
  return j;
}

ParamsInput neon_reference() {
  ParamsInput p;
  p.eta = 10;
  p.N = 1e6;
  p.L = 30;
  p.Lambda = 100;
  p.a = 1;
  p.K = 1;
  p.Z = {10};
  p.t = 83;
  p.eps = 1e-3;
  return p;
}

Lattice::Lattice(std::int64_t side) : side_(side) {
  if (side < 1) throw InvalidArgument("lattice side must be >= 1");
}

Lattice::Lattice(const SimulationParams& p) : side_(p.side) {
  if (!p.lattice_valid) throw InvalidArgument("params were not validated for lattice use");
}

std::int64_t Lattice::flatten(const Site& q) const {
  return (q[0] * side_ + q[1]) * side_ + q[2];
}

Site Lattice::unflatten(std::int64_t index) const {
  return {index / (side_ * side_), (index / side_) % side_, index % side_};
}

Site Lattice::step(const Site& q, int mu, std::int64_t k) const {
  if (mu < 1 || mu > 3) throw InvalidArgument("direction must be 1..3");
  Site r = q;
  auto& x = r[static_cast<std::size_t>(mu - 1)];
  x = ((x + k) % side_ + side_) % side_;
  return r;
}

std::int64_t Lattice::link_id(const LinkIndex& l) const {
  return 3 * flatten(l.q) + (l.mu - 1);
}

std::vector<Plaquette> Lattice::plaquettes() const {
  std::vector<Plaquette> out;
  out.reserve(static_cast<std::size_t>(3 * sites()));
  for (std::int64_t s = 0; s < sites(); ++s) {
    const Site q = unflatten(s);
    for (int mu = 1; mu <= 3; ++mu) {
      for (int nu = mu + 1; nu <= 3; ++nu) {
        Plaquette pl;
        pl.mu = mu;
        pl.nu = nu;
        pl.links = {LinkIndex{q, mu}, LinkIndex{step(q, mu), nu}, LinkIndex{step(q, nu), mu},
                    LinkIndex{q, nu}};
        out.push_back(pl);
      }
    }
  }
  return out;
}

}  // namespace pfqed
