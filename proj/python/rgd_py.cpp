#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "rgd/col_solvers.hpp"
#include "rgd/errors.hpp"
#include "rgd/methods.hpp"
#include "rgd/problems.hpp"
#include "rgd/row_solvers.hpp"
#include "rgd/theory.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

rgd::DenseMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw rgd::UsageError("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return rgd::DenseMatrix(rows, cols, std::vector<double>(a.data(), a.data() + a.size()));
}

rgd::Vector to_vector(const Array& a) {
  if (a.ndim() != 1) throw rgd::UsageError("expected a 1-D array");
  return rgd::Vector(a.data(), a.data() + a.size());
}

py::array_t<double> to_array(const rgd::Vector& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const rgd::DenseMatrix& A) {
  py::array_t<double> out({static_cast<py::ssize_t>(A.rows()), static_cast<py::ssize_t>(A.cols())});
  std::copy(A.row_major().begin(), A.row_major().end(), out.mutable_data());
  return out;
}

std::vector<std::size_t> to_list(const rgd::IndexSet& set) {
  return {set.begin(), set.end()};
}

py::dict loss_dict(const rgd::LossProfile& p) {
  return py::dict("losses"_a = to_array(p.losses), "weights"_a = to_array(p.weights),
                  "max_loss"_a = p.max_loss, "argmax"_a = p.argmax,
                  "weighted_mean"_a = p.weighted_mean, "zero_set"_a = to_list(p.zero_set));
}

py::dict report_dict(const rgd::SolveReport& r) {
  py::dict d("method"_a = std::string(rgd::to_string(r.method)), "theta"_a = r.theta,
             "seed"_a = r.seed, "iterations"_a = r.iterations, "final_rse"_a = r.final_rse,
             "termination"_a = std::string(rgd::to_string(r.termination)),
             "wall_seconds"_a = r.wall_seconds, "max_residual_drift"_a = r.max_residual_drift,
             "rse_trace"_a = to_array(r.rse_trace), "set_size_trace"_a = r.set_size_trace,
             "time_trace"_a = to_array(r.time_trace));
  if (!r.iterates.empty()) {
    py::list xs;
    for (const auto& x : r.iterates) xs.append(to_array(x));
    py::list sets;
    for (const auto& s : r.sets) sets.append(to_list(s));
    d["iterates"] = xs;
    d["sets"] = sets;
  }
  return d;
}

rgd::SolveConfig make_config(const std::string& method, double theta, double eta1, double eta2,
                             std::size_t block_size, double tol, std::size_t max_iters,
                             std::uint64_t seed, bool record_trace) {
  rgd::SolveConfig c;
  c.method = rgd::parse_method(method);
  c.set_theta(theta);
  c.selection.eta1 = eta1;
  c.selection.eta2 = eta2;
  c.selection.block_size = block_size;
  c.stop.rse_tol = tol;
  c.stop.max_iters = max_iters;
  c.seed = seed;
  c.record_trace = record_trace;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relaxed greedy deterministic row/column methods and comparison solvers";

  py::register_exception<rgd::SizeGuardError>(m, "SizeGuardError", PyExc_ValueError);

  m.def("methods", [] {
    std::vector<std::string> names;
    for (auto method : rgd::all_methods()) names.emplace_back(rgd::to_string(method));
    return names;
  });

  m.def(
      "generate",
      [](const std::string& kind, std::size_t m_, std::size_t n, std::size_t r, double sigma1,
         double sigma2, bool inconsistent, double noise_scale, std::uint64_t seed) {
        rgd::GeneratorSpec g;
        g.kind = rgd::parse_matrix_kind(kind);
        g.m = m_;
        g.n = n;
        g.r = r == 0 ? std::min(m_, n) : r;
        g.sigma1 = sigma1;
        g.sigma2 = sigma2;
        g.inconsistent = inconsistent;
        g.noise_scale = noise_scale;
        g.seed = seed;
        const auto p = rgd::generate(g);
        return py::dict("A"_a = to_array(p.A), "b"_a = to_array(p.b),
                        "x_star"_a = to_array(p.x_star), "consistent"_a = p.consistent);
      },
      "kind"_a, "m"_a, "n"_a, "r"_a = 0, "sigma1"_a = 1.25, "sigma2"_a = 1.0,
      "inconsistent"_a = false, "noise_scale"_a = 0.1, "seed"_a = 0,
      "Generate a test problem; returns a dict with A, b, x_star, consistent.");

  m.def(
      "solve",
      [](const Array& A, const Array& b, const Array& x_star, const std::string& method,
         double theta, double eta1, double eta2, std::size_t block_size, double tol,
         std::size_t max_iters, std::uint64_t seed, bool record_trace,
         std::optional<Array> x0) {
        auto config =
            make_config(method, theta, eta1, eta2, block_size, tol, max_iters, seed, record_trace);
        if (x0) config.x0 = to_vector(*x0);
        const auto mat = to_matrix(A);
        const auto rhs = to_vector(b);
        const auto ref = to_vector(x_star);
        rgd::SolveReport report;
        {
          py::gil_scoped_release release;
          report = rgd::run_method(mat, rhs, ref, config);
        }
        return report_dict(report);
      },
      "A"_a, "b"_a, "x_star"_a, "method"_a = "rgdr", "theta"_a = 0.5, "eta1"_a = 0.5,
      "eta2"_a = 0.1, "block_size"_a = 100, "tol"_a = 1e-4, "max_iters"_a = 1'000'000,
      "seed"_a = 0, "record_trace"_a = false, "x0"_a = py::none(),
      "Run one method; returns the report as a dict.");

  m.def(
      "row_losses",
      [](const Array& A, const Array& r) { return loss_dict(rgd::row_losses(to_matrix(A), to_vector(r))); },
      "A"_a, "r"_a);
  m.def(
      "column_losses",
      [](const Array& A, const Array& r) {
        return loss_dict(rgd::column_losses(to_matrix(A), to_vector(r)));
      },
      "A"_a, "r"_a, "Column losses from the residual r (y = A^T r is formed internally).");

  m.def(
      "relaxed_greedy_set",
      [](const Array& A, const Array& r, double theta, const std::string& kind)
          -> std::optional<std::vector<std::size_t>> {
        const auto mat = to_matrix(A);
        const auto res = to_vector(r);
        if (kind != "row" && kind != "column") throw rgd::UsageError("kind must be row or column");
        const auto profile =
            kind == "row" ? rgd::row_losses(mat, res) : rgd::column_losses(mat, res);
        const auto set = rgd::relaxed_greedy_set(profile, theta);
        if (!set) return std::nullopt;
        return to_list(*set);
      },
      "A"_a, "r"_a, "theta"_a, "kind"_a = "row",
      "Selected indices, or None when every loss is zero.");

  m.def(
      "rgdr_step",
      [](const Array& A, const Array& b, const Array& x, const std::vector<std::size_t>& rows) {
        const auto mat = to_matrix(A);
        auto state = rgd::SolveState::start(mat, to_vector(b), to_vector(x), false);
        const auto outcome = rgd::rgdr_step(state, mat, rgd::IndexSet(rows));
        return py::make_tuple(to_array(state.x), to_array(state.r), outcome.projection_weight);
      },
      "A"_a, "b"_a, "x"_a, "rows"_a, "One row step; returns (x, r, g1/g2).");

  m.def(
      "rgdc_step",
      [](const Array& A, const Array& b, const Array& x, const std::vector<std::size_t>& cols) {
        const auto mat = to_matrix(A);
        auto state = rgd::SolveState::start(mat, to_vector(b), to_vector(x), true);
        const auto outcome = rgd::rgdc_step(state, mat, rgd::IndexSet(cols));
        return py::make_tuple(to_array(state.x), to_array(state.r), to_array(state.y),
                              outcome.projection_weight);
      },
      "A"_a, "b"_a, "x"_a, "cols"_a, "One column step; returns (x, r, y, h1/h2).");

  m.def(
      "certify",
      [](const Array& A, const Array& b, const Array& x_star, const std::string& method,
         double theta, double tol, std::size_t max_iters) {
        const auto mat = to_matrix(A);
        const auto rhs = to_vector(b);
        const auto ref = to_vector(x_star);
        rgd::check_certify_size(mat);
        auto config = make_config(method, theta, 0.5, 0.1, 100, tol, max_iters, 0, true);
        const auto report = rgd::run_method(mat, rhs, ref, config);
        py::list out;
        for (const auto& c : rgd::certify_run(report, mat, rhs, ref, config)) {
          out.append(py::dict("k"_a = c.k, "factor"_a = c.factor_theoretical,
                              "ratio"_a = c.ratio_measured, "satisfied"_a = c.satisfied));
        }
        return out;
      },
      "A"_a, "b"_a, "x_star"_a, "method"_a = "rgdr", "theta"_a = 0.5, "tol"_a = 1e-4,
      "max_iters"_a = 100'000, "Per-step bound certificates for an rgdr or rgdc run.");

  m.def(
      "singular_values",
      [](const Array& A) { return to_array(rgd::singular_values(to_matrix(A))); }, "A"_a,
      "Nonzero singular values in decreasing order.");

  m.def(
      "cgls",
      [](const Array& A, const Array& b, double rel_tol) {
        return to_array(rgd::cgls(to_matrix(A), to_vector(b), rgd::CglsConfig{rel_tol, std::nullopt}));
      },
      "A"_a, "b"_a, "rel_tol"_a = 1e-12, "Minimum-norm least-squares solution.");

  m.def("flops_rgdr", &rgd::flops_rgdr, "m"_a, "n"_a, "set_size"_a);
  m.def("flops_rgdc", &rgd::flops_rgdc, "n"_a, "set_size"_a);
}
