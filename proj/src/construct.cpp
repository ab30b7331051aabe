#include "polarot/construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polarot/numeric.hpp"

namespace ot {

namespace {

const Quadrature& gh96() {
  static const Quadrature q = gauss_hermite(96);
  return q;
}

constexpr double kSigmaMax = 60.0;
constexpr double kLn2 = 0.6931471805599453;

}  // namespace

double j_function(double sigma) {
  if (sigma <= 0.0) return 0.0;
  const auto& q = gh96();
  const double mu = 0.5 * sigma * sigma;
  const double scale = sigma * std::sqrt(2.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double l = mu + scale * q.nodes[i];
    acc += q.weights[i] * (log1pexp(-l) / kLn2);
  }
  return 1.0 - acc / std::sqrt(3.14159265358979323846);
}

double j_inverse(double i) {
  if (i <= 0.0) return 0.0;
  if (i >= 1.0) return kSigmaMax;
  double lo = 0.0, hi = kSigmaMax;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (j_function(mid) < i)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double i0_from_snr(double snr) {
  if (snr < 0.0) throw std::invalid_argument("snr must be nonnegative");
  return j_function(2.0 * std::sqrt(snr));
}

double snr_from_i0(double i0) {
  const double s = 0.5 * j_inverse(i0);
  return s * s;
}

double snr_from_db(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

std::vector<double> ga_profile(unsigned m, double snr) {
  auto f_plus = [](double i) { return j_function(std::sqrt(2.0) * j_inverse(i)); };
  auto f_minus = [&](double i) { return 1.0 - j_function(std::sqrt(2.0) * j_inverse(1.0 - i)); };
  std::vector<double> prof{i0_from_snr(snr)};
  for (unsigned s = 0; s < m; ++s) {
    std::vector<double> next(prof.size() * 2);
    for (std::size_t i = 0; i < prof.size(); ++i) {
      next[2 * i] = f_minus(prof[i]);
      next[2 * i + 1] = f_plus(prof[i]);
    }
    prof.swap(next);
  }
  return prof;
}

std::vector<double> z_profile(unsigned m, double snr) {
  std::vector<double> prof{std::exp(-snr)};
  for (unsigned s = 0; s < m; ++s) {
    std::vector<double> next(prof.size() * 2);
    for (std::size_t i = 0; i < prof.size(); ++i) {
      const double z = prof[i];
      next[2 * i] = 2.0 * z - z * z;
      next[2 * i + 1] = z * z;
    }
    prof.swap(next);
  }
  return prof;
}

double default_gamma(std::size_t n) {
  const double g = std::pow(2.0, -std::pow(static_cast<double>(n), 0.3));
  return std::clamp(g, 1e-6, 0.25);
}

std::vector<std::size_t> good_set(const std::vector<double>& mi, double gamma) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mi.size(); ++i)
    if (mi[i] >= 1.0 - gamma) out.push_back(i);
  return out;
}

std::vector<std::size_t> bad_set(const std::vector<double>& mi, double gamma) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mi.size(); ++i)
    if (mi[i] <= gamma) out.push_back(i);
  return out;
}

std::vector<std::size_t> reliability_order(const std::vector<double>& mi) {
  std::vector<std::size_t> idx(mi.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (mi[a] != mi[b]) return mi[a] > mi[b];
    return a < b;
  });
  return idx;
}

}  // namespace ot
