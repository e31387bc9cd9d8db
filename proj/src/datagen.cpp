#include "depcor/datagen.hpp"

#include "depcor/error.hpp"

#include <cmath>
#include <sstream>

namespace depcor {

Law Law::parse(const std::string& text) {
  const auto colon = text.find(':');
  const auto comma = text.find(',', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || comma == std::string::npos) {
    throw UsageError("law '" + text + "': expected uniform:a,b or normal:mu,sigma");
  }
  const std::string name = text.substr(0, colon);
  Law law;
  try {
    std::size_t used = 0;
    const std::string first = text.substr(colon + 1, comma - colon - 1);
    const std::string second = text.substr(comma + 1);
    law.a = std::stod(first, &used);
    if (used != first.size()) throw std::invalid_argument(first);
    law.b = std::stod(second, &used);
    if (used != second.size()) throw std::invalid_argument(second);
  } catch (const std::logic_error&) {
    throw UsageError("law '" + text + "': parameters must be numbers");
  }
  if (name == "uniform") {
    law.kind = Kind::uniform;
  } else if (name == "normal") {
    law.kind = Kind::normal;
  } else {
    throw UsageError("law '" + text + "': unknown family '" + name + "'");
  }
  law.validate();
  return law;
}

std::string Law::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << (kind == Kind::uniform ? "uniform:" : "normal:") << a << ',' << b;
  return os.str();
}

void Law::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b)) throw UsageError("law: parameters must be finite");
  if (kind == Kind::uniform && !(a < b)) throw UsageError("law: uniform needs a < b");
  if (kind == Kind::normal && !(b > 0.0)) throw UsageError("law: normal needs sigma > 0");
}

double Law::draw(Rng& rng) const {
  return kind == Kind::uniform ? a + (b - a) * rng.uniform() : a + b * rng.normal();
}

void ModelConfig::validate() const {
  if (beta2 == 0.0) throw UsageError("bump model: beta2 must be nonzero");
  if (!(noise_sd >= 0.0)) throw UsageError("bump model: noise_sd must be >= 0");
  if (n < 2) throw UsageError("bump model: n must be >= 2");
  x_law.validate();
}

double bump_mean(const ModelConfig& c, double x) {
  const double d = x - c.beta3;
  return (c.beta1 / c.beta2) * std::exp(-(d * d) / (2.0 * c.beta2 * c.beta2));
}

PairedSample gen_bump(const ModelConfig& c) {
  c.validate();
  Rng x_rng(derive_seed(c.seed, 0, 0));
  Rng noise_rng(derive_seed(c.seed, 1, 0));
  Matrix x(c.n, 1), y(c.n, 1);
  for (Index i = 0; i < c.n; ++i) {
    x(i, 0) = c.x_law.draw(x_rng);
    const double eps = c.noise_sd > 0.0 ? c.noise_sd * noise_rng.normal() : 0.0;
    y(i, 0) = bump_mean(c, x(i, 0)) + eps;
  }
  return PairedSample(std::move(x), std::move(y));
}

PairedSample gen_gaussian(Index n, double rho, std::uint64_t seed) {
  if (!(std::abs(rho) < 1.0)) throw UsageError("gaussian model: |rho| must be < 1");
  if (n < 2) throw UsageError("gaussian model: n must be >= 2");
  Rng x_rng(derive_seed(seed, 0, 0));
  Rng z_rng(derive_seed(seed, 1, 0));
  const double tail = std::sqrt(1.0 - rho * rho);
  Matrix x(n, 1), y(n, 1);
  for (Index i = 0; i < n; ++i) {
    x(i, 0) = x_rng.normal();
    y(i, 0) = rho * x(i, 0) + tail * z_rng.normal();
  }
  return PairedSample(std::move(x), std::move(y));
}

PairedSample gen_independent(Index n, const Law& x_law, const Law& y_law, std::uint64_t seed) {
  x_law.validate();
  y_law.validate();
  if (n < 2) throw UsageError("independent model: n must be >= 2");
  Rng x_rng(derive_seed(seed, 0, 0));
  Rng y_rng(derive_seed(seed, 1, 0));
  Matrix x(n, 1), y(n, 1);
  for (Index i = 0; i < n; ++i) x(i, 0) = x_law.draw(x_rng);
  for (Index i = 0; i < n; ++i) y(i, 0) = y_law.draw(y_rng);
  return PairedSample(std::move(x), std::move(y));
}

}  // namespace depcor
