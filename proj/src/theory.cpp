#include "rgd/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "format.hpp"
#include "rgd/errors.hpp"

namespace rgd {

namespace {

double smallest_nonzero_singular_value(const DenseMatrix& A) {
  const Vector sigma = singular_values(A);
  if (sigma.empty()) throw UsageError("matrix has no nonzero singular values");
  return sigma.back();
}

ContractionBound greedy_factor(const DenseMatrix& A, const IndexSet& selected,
                               const LossProfile& profile, double theta, LossKind kind,
                               std::optional<double> sigma_min_A) {
  if (profile.kind != kind) throw UsageError("loss profile kind does not match the bound");
  if (selected.empty()) throw UsageError("contraction factor needs a non-empty index set");
  if (!(profile.max_loss > 0.0)) {
    throw UsageError("contraction factor is undefined at a converged iterate");
  }
  if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("theta must lie in [0,1]");

  const bool rows = kind == LossKind::row;
  const auto sqnorms = rows ? A.row_sqnorms() : A.col_sqnorms();
  const double frob = A.frob_sq();

  FactorComponents c;
  for (std::size_t i : profile.zero_set) c.zero_set_mass += sqnorms[i];
  c.active_energy = frob - c.zero_set_mass;
  c.relaxation_weight = theta * frob / c.active_energy + (1.0 - theta);
  double selected_energy = 0.0;
  for (std::size_t i : selected) selected_energy += sqnorms[i];
  c.set_energy_fraction = selected_energy / frob;
  c.sigma_min_A = sigma_min_A ? *sigma_min_A : smallest_nonzero_singular_value(A);
  const DenseMatrix sub =
      rows ? A.select_rows(selected.indices()) : A.select_cols(selected.indices());
  c.sigma_max_sub = singular_values(sub).front();

  const double ratio = (c.sigma_min_A * c.sigma_min_A) / (c.sigma_max_sub * c.sigma_max_sub);
  // Nonnegative in exact arithmetic; clip rounding below zero.
  const double factor = std::max(0.0, 1.0 - c.relaxation_weight * c.set_energy_fraction * ratio);
  return {factor, c};
}

double randomized_factor(const DenseMatrix& A, double theta, std::span<const double> sqnorms) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("theta must lie in [0,1]");
  const double frob = A.frob_sq();
  const double eps = frob - *std::min_element(sqnorms.begin(), sqnorms.end());
  const double tau = theta * frob / eps + (1.0 - theta);
  const double smin = smallest_nonzero_singular_value(A);
  return 1.0 - tau * smin * smin / frob;
}

double seminorm_error(const DenseMatrix& A, std::span<const double> x,
                      std::span<const double> x_star) {
  Vector d(x.begin(), x.end());
  axpy(-1.0, x_star, d);
  return sqnorm(matvec(A, d));
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  const double d = distance(a, b);
  return d * d;
}

}  // namespace

void check_certify_size(std::size_t rows, std::size_t cols) {
  if (std::min(rows, cols) > kSvdSizeLimit || rows * cols > kCertifyEntryLimit) {
    throw SizeGuardError("certification refused: " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " exceeds the size guard (min(m,n) <= " +
                         std::to_string(kSvdSizeLimit) + " and m*n <= " +
                         std::to_string(kCertifyEntryLimit) + "); skip bound verification");
  }
}

void check_certify_size(const DenseMatrix& A) { check_certify_size(A.rows(), A.cols()); }

ContractionBound rgdr_factor(const DenseMatrix& A, const IndexSet& rows,
                             const LossProfile& profile, double theta1,
                             std::optional<double> sigma_min_A) {
  return greedy_factor(A, rows, profile, theta1, LossKind::row, sigma_min_A);
}

ContractionBound rgdc_factor(const DenseMatrix& A, const IndexSet& cols,
                             const LossProfile& profile, double theta2,
                             std::optional<double> sigma_min_A) {
  return greedy_factor(A, cols, profile, theta2, LossKind::column, sigma_min_A);
}

double rgrk_factor(const DenseMatrix& A, double theta1) {
  return randomized_factor(A, theta1, A.row_sqnorms());
}

double rgrcd_factor(const DenseMatrix& A, double theta2) {
  return randomized_factor(A, theta2, A.col_sqnorms());
}

std::uint64_t flops_rgdr(std::uint64_t m, std::uint64_t n, std::uint64_t set_size) {
  const std::uint64_t s = set_size;
  return (2 * s + 1) * (m + n) + s * (3 * s + 7) / 2 + (4 * m + 2);
}

std::uint64_t flops_rgdc(std::uint64_t n, std::uint64_t set_size) {
  const std::uint64_t s = set_size;
  return (2 * s + 1) * n + s * (3 * s + 11) / 2 + (4 * n + 2);
}

std::vector<BoundCertificate> certify_run(const SolveReport& report, const DenseMatrix& A,
                                          std::span<const double> b,
                                          std::span<const double> x_star,
                                          const SolveConfig& config) {
  const bool rows = report.method == Method::rgdr;
  if (!rows && report.method != Method::rgdc) {
    throw UsageError("certify_run: per-step bounds exist for rgdr and rgdc only");
  }
  if (report.iterates.size() != report.iterations + 1 ||
      report.sets.size() != report.iterations) {
    throw UsageError("certify_run: report has no recorded trace (enable record_trace)");
  }
  check_certify_size(A);
  const double theta = rows ? config.selection.theta1 : config.selection.theta2;
  const double smin = smallest_nonzero_singular_value(A);

  std::vector<BoundCertificate> out;
  out.reserve(report.iterations);
  for (std::size_t k = 0; k < report.iterations; ++k) {
    const Vector& xk = report.iterates[k];
    const Vector& xk1 = report.iterates[k + 1];
    const Vector r = residual(A, b, xk);

    BoundCertificate cert;
    cert.k = k;
    double before = 0.0;
    double after = 0.0;
    ContractionBound bound;
    if (rows) {
      bound = rgdr_factor(A, report.sets[k], row_losses(A, r, config.selection.zero_tol_rel),
                          theta, smin);
      before = squared_distance(xk, x_star);
      after = squared_distance(xk1, x_star);
    } else {
      bound = rgdc_factor(A, report.sets[k], column_losses(A, r, config.selection.zero_tol_rel),
                          theta, smin);
      before = seminorm_error(A, xk, x_star);
      after = seminorm_error(A, xk1, x_star);
    }
    cert.factor_theoretical = bound.factor;
    cert.components = bound.parts;
    cert.ratio_measured = before > 0.0 ? after / before : 0.0;
    cert.satisfied = cert.ratio_measured <= cert.factor_theoretical + kBoundSlack;
    out.push_back(cert);
  }
  return out;
}

StatisticalCertificate certify_randomized(std::span<const SolveReport> reports,
                                          const DenseMatrix& A, std::span<const double> x_star,
                                          const SolveConfig& config) {
  if (config.method != Method::rgrk && config.method != Method::rgrcd) {
    throw UsageError("certify_randomized: expected-rate bounds exist for rgrk and rgrcd only");
  }
  if (reports.size() < kMinStatisticalRuns) {
    throw UsageError("certify_randomized: need at least " + std::to_string(kMinStatisticalRuns) +
                     " runs");
  }
  check_certify_size(A);
  const bool rows = config.method == Method::rgrk;
  StatisticalCertificate cert;
  cert.expected_factor = rows ? rgrk_factor(A, config.selection.theta1)
                              : rgrcd_factor(A, config.selection.theta2);

  Vector ratios;
  for (const auto& report : reports) {
    if (report.iterations == 0) continue;
    if (report.iterates.size() != report.iterations + 1) {
      throw UsageError("certify_randomized: report has no recorded trace");
    }
    const auto& first = report.iterates.front();
    const auto& last = report.iterates.back();
    const double e0 = rows ? squared_distance(first, x_star) : seminorm_error(A, first, x_star);
    const double ek = rows ? squared_distance(last, x_star) : seminorm_error(A, last, x_star);
    ratios.push_back(e0 > 0.0 ? std::pow(ek / e0, 1.0 / static_cast<double>(report.iterations))
                              : 0.0);
  }
  cert.runs = ratios.size();
  if (cert.runs < 2) throw UsageError("certify_randomized: too few non-trivial runs");
  const double n = static_cast<double>(cert.runs);
  cert.mean_ratio = std::accumulate(ratios.begin(), ratios.end(), 0.0) / n;
  double var = 0.0;
  for (double v : ratios) var += (v - cert.mean_ratio) * (v - cert.mean_ratio);
  var /= (n - 1.0);
  cert.standard_error = std::sqrt(var / n);
  cert.satisfied = cert.mean_ratio <= cert.expected_factor + 3.0 * cert.standard_error;
  return cert;
}

void write_certificates_csv(std::ostream& out, std::span<const BoundCertificate> certificates) {
  using detail::format_double;
  out << "k,factor,ratio,satisfied,relaxation_weight,active_energy,zero_set_mass,sigma_min_A,"
         "sigma_max_sub,set_energy_fraction\n";
  for (const auto& c : certificates) {
    out << c.k << ',' << format_double(c.factor_theoretical) << ','
        << format_double(c.ratio_measured) << ',' << (c.satisfied ? 1 : 0) << ','
        << format_double(c.components.relaxation_weight) << ','
        << format_double(c.components.active_energy) << ','
        << format_double(c.components.zero_set_mass) << ','
        << format_double(c.components.sigma_min_A) << ','
        << format_double(c.components.sigma_max_sub) << ','
        << format_double(c.components.set_energy_fraction) << '\n';
  }
}

}  // namespace rgd
