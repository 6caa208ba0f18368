#include "rgd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "format.hpp"
#include "json.hpp"
#include "rgd/errors.hpp"

namespace rgd {

namespace {

using detail::format_double;

ProblemSize parse_size(const nlohmann::json& j) {
  ProblemSize s;
  s.kind = parse_matrix_kind(j.value("kind", std::string("randn")));
  s.m = j.at("m").get<std::size_t>();
  s.n = j.at("n").get<std::size_t>();
  s.r = j.value("r", std::size_t{0});
  s.sigma1 = j.value("sigma1", 0.0);
  s.sigma2 = j.value("sigma2", 0.0);
  return s;
}

BenchMethod parse_bench_method(const nlohmann::json& j) {
  if (j.is_string()) return {parse_method(j.get<std::string>()), std::nullopt};
  BenchMethod bm;
  bm.method = parse_method(j.at("name").get<std::string>());
  if (j.contains("thetas")) bm.thetas = j.at("thetas").get<std::vector<double>>();
  return bm;
}

GeneratorSpec spec_for(const BenchConfig& config, const ProblemSize& size, std::uint64_t seed) {
  GeneratorSpec g;
  g.kind = size.kind;
  g.m = size.m;
  g.n = size.n;
  g.r = size.r;
  g.sigma1 = size.sigma1;
  g.sigma2 = size.sigma2;
  g.inconsistent = config.inconsistent;
  g.noise_scale = config.noise_scale;
  g.seed = seed;
  return g;
}

double mean_of(const Vector& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

const BenchRow* find_row(const std::vector<BenchRow>& rows, Method method, double theta,
                         const ProblemSize& size) {
  for (const auto& row : rows) {
    if (row.method == method && row.theta && *row.theta == theta && row.size.kind == size.kind &&
        row.size.m == size.m && row.size.n == size.n && row.size.r == size.r &&
        row.size.sigma1 == size.sigma1 && row.size.sigma2 == size.sigma2) {
      return &row;
    }
  }
  return nullptr;
}

}  // namespace

void BenchConfig::validate() const {
  if (methods.empty()) throw UsageError("bench: method list is empty");
  if (sizes.empty()) throw UsageError("bench: size list is empty");
  if (seeds.empty()) throw UsageError("bench: seed list is empty");
  if (repeats == 0) throw UsageError("bench: repeats must be >= 1");
  if (!(tol > 0.0)) throw UsageError("bench: tol must be positive");
  if (max_iters == 0) throw UsageError("bench: max_iters must be positive");
  auto check_thetas = [](const std::vector<double>& ts) {
    if (ts.empty()) throw UsageError("bench: theta list is empty");
    for (double t : ts) {
      if (!(t >= 0.0 && t <= 1.0)) throw UsageError("bench: theta must lie in [0,1]");
    }
  };
  check_thetas(thetas);
  for (const auto& m : methods) {
    if (m.thetas) check_thetas(*m.thetas);
  }
  for (const auto& s : sizes) {
    GeneratorSpec g;
    g.kind = s.kind;
    g.m = s.m;
    g.n = s.n;
    g.r = s.r;
    g.sigma1 = s.sigma1;
    g.sigma2 = s.sigma2;
    g.inconsistent = inconsistent;
    g.noise_scale = noise_scale;
    g.validate();
  }
  SelectionConfig sel;
  sel.eta1 = eta1;
  sel.eta2 = eta2;
  sel.block_size = block_size;
  sel.validate();
}

BenchConfig BenchConfig::from_json(std::string_view text) {
  BenchConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& m : j.at("methods")) c.methods.push_back(parse_bench_method(m));
    if (j.contains("thetas")) c.thetas = j.at("thetas").get<std::vector<double>>();
    for (const auto& s : j.at("sizes")) c.sizes.push_back(parse_size(s));
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.tol = j.value("tol", c.tol);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.repeats = j.value("repeats", c.repeats);
    c.inconsistent = j.value("inconsistent", c.inconsistent);
    c.noise_scale = j.value("noise_scale", c.noise_scale);
    c.eta1 = j.value("eta1", c.eta1);
    c.eta2 = j.value("eta2", c.eta2);
    c.block_size = j.value("block_size", c.block_size);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bench config: ") + e.what());
  }
  c.validate();
  return c;
}

BenchResult run_bench(const BenchConfig& config) {
  config.validate();
  BenchResult result;
  for (const auto& size : config.sizes) {
    std::vector<ProblemInstance> instances;
    instances.reserve(config.seeds.size());
    for (std::uint64_t seed : config.seeds) instances.push_back(generate(spec_for(config, size, seed)));

    for (const auto& bm : config.methods) {
      std::vector<std::optional<double>> thetas;
      if (uses_theta(bm.method)) {
        for (double t : bm.thetas.value_or(config.thetas)) thetas.emplace_back(t);
      } else {
        thetas.emplace_back(std::nullopt);
      }
      const std::size_t repeats = is_randomized(bm.method) ? config.repeats : 1;

      for (const auto& theta : thetas) {
        BenchRow row;
        row.method = bm.method;
        row.theta = theta;
        row.size = size;
        Vector its, secs, rses;
        for (const auto& inst : instances) {
          SolveConfig sc;
          sc.method = bm.method;
          if (theta) sc.set_theta(*theta);
          sc.selection.eta1 = config.eta1;
          sc.selection.eta2 = config.eta2;
          sc.selection.block_size = config.block_size;
          sc.stop.rse_tol = config.tol;
          sc.stop.max_iters = config.max_iters;
          for (std::size_t rep = 0; rep < repeats; ++rep) {
            sc.seed = inst.seed + rep;
            ++row.runs;
            try {
              const SolveReport rep_report = run_method(inst.A, inst.b, inst.x_star, sc);
              its.push_back(static_cast<double>(rep_report.iterations));
              secs.push_back(rep_report.wall_seconds);
              rses.push_back(rep_report.final_rse);
              if (rep_report.termination == Termination::converged) ++row.converged_runs;
            } catch (const std::exception& e) {
              ++row.failures;
              row.last_error = e.what();
            }
          }
        }
        row.mean_iterations = mean_of(its);
        row.mean_seconds = mean_of(secs);
        row.mean_final_rse = mean_of(rses);
        result.rows.push_back(std::move(row));
      }
    }
  }

  const std::pair<Method, Method> pairs[] = {{Method::rgdr, Method::rgrk},
                                             {Method::rgdc, Method::rgrcd}};
  for (const auto& row : result.rows) {
    for (const auto& [num, den] : pairs) {
      if (row.method != num || !row.theta) continue;
      const BenchRow* other = find_row(result.rows, den, *row.theta, row.size);
      if (other == nullptr || !(other->mean_iterations > 0.0)) continue;
      result.trends.push_back(
          {num, den, *row.theta, row.size, row.mean_iterations / other->mean_iterations});
    }
  }
  return result;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "method,theta,kind,m,n,runs,failures,converged_runs,mean_it,mean_cpu,mean_final_rse\n";
  for (const auto& row : rows) {
    out << to_string(row.method) << ',' << (row.theta ? format_double(*row.theta) : "") << ','
        << to_string(row.size.kind) << ',' << row.size.m << ',' << row.size.n << ',' << row.runs
        << ',' << row.failures << ',' << row.converged_runs << ','
        << format_mean_iterations(row.mean_iterations) << ',' << format_double(row.mean_seconds)
        << ',' << format_double(row.mean_final_rse) << '\n';
  }
}

void write_trend_csv(std::ostream& out, std::span<const TrendRow> trends) {
  out << "numerator,denominator,theta,kind,m,n,it_ratio\n";
  for (const auto& t : trends) {
    out << to_string(t.numerator) << ',' << to_string(t.denominator) << ','
        << format_double(t.theta) << ',' << to_string(t.size.kind) << ',' << t.size.m << ','
        << t.size.n << ',' << format_double(t.ratio) << '\n';
  }
}

RepeatSummary solve_repeated(const DenseMatrix& A, std::span<const double> b,
                             std::span<const double> x_star, const SolveConfig& config,
                             std::size_t repeats) {
  if (repeats == 0) throw UsageError("repeats must be >= 1");
  RepeatSummary s;
  SolveConfig sc = config;
  Vector its, secs, rses;
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    sc.seed = config.seed + rep;
    SolveReport report = run_method(A, b, x_star, sc);
    its.push_back(static_cast<double>(report.iterations));
    secs.push_back(report.wall_seconds);
    rses.push_back(report.final_rse);
    if (report.termination == Termination::converged) ++s.converged_runs;
    s.reports.push_back(std::move(report));
  }
  s.runs = repeats;
  s.mean_iterations = mean_of(its);
  s.mean_seconds = mean_of(secs);
  s.mean_final_rse = mean_of(rses);
  return s;
}

std::string format_mean_iterations(double mean) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", mean);
  return buf;
}

void write_trace_plot_csv(std::ostream& out, std::span<const SolveReport> reports) {
  out << "method,theta,k,cumulative_seconds,rse\n";
  std::vector<const SolveReport*> order;
  for (const auto& r : reports) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const SolveReport* a, const SolveReport* b) {
    const auto na = to_string(a->method);
    const auto nb = to_string(b->method);
    if (na != nb) return na < nb;
    return a->theta < b->theta;
  });
  for (const SolveReport* r : order) {
    for (std::size_t k = 0; k < r->rse_trace.size(); ++k) {
      out << to_string(r->method) << ',' << format_double(r->theta) << ',' << k << ','
          << format_double(k < r->time_trace.size() ? r->time_trace[k] : 0.0) << ','
          << format_double(r->rse_trace[k]) << '\n';
    }
  }
}

}  // namespace rgd
