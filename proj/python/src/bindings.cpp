#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "footrule/error.hpp"
#include "footrule/inference.hpp"
#include "footrule/mc_engine.hpp"
#include "footrule/moments.hpp"
#include "footrule/rank_core.hpp"
#include "footrule/representations.hpp"
#include "footrule/stats.hpp"

namespace py = pybind11;
using namespace footrule;

namespace {

TestMethod parse_method(const std::string& method) {
  if (method == "normal") return TestMethod::Normal;
  if (method == "exact") return TestMethod::Exact;
  throw py::value_error("method must be 'normal' or 'exact', got '" + method + "'");
}

py::dict ks_dict(const KsOutcome& k) {
  py::dict d;
  d["statistic"] = k.statistic;
  d["p_value"] = k.p_value;
  d["effective_n"] = k.effective_n;
  return d;
}

}  // namespace

PYBIND11_MODULE(_footrule, m) {
  m.doc() = "Spearman's footrule core bindings";

  // Keep the class alive for the interpreter's lifetime; the translator
  // below needs it after module init returns.
  static py::handle error_type =
      py::exception<Error>(m, "FootruleError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("code") = to_string(e.code());
      inst.attr("index") = e.index() ? py::cast(*e.index()) : py::none();
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  py::enum_<Statistic>(m, "Statistic")
      .value("PHI", Statistic::PhiN)
      .value("PHI_PRIME", Statistic::PhiPrime)
      .value("PHI_DOUBLE_PRIME", Statistic::PhiDoublePrime)
      .def_property_readonly("label", [](Statistic s) { return std::string(label(s)); });

  m.def("compute_ranks", [](const std::vector<double>& values) { return compute_ranks(values); },
        py::arg("values"), "Ranks 1..n of tie-free finite data.");

  m.def(
      "footrule",
      [](std::vector<double> x, std::vector<double> y) {
        const auto r = footrule_coefficient(PairedSample(std::move(x), std::move(y)));
        py::dict d;
        d["n"] = r.n;
        d["distance"] = r.distance;
        d["phi"] = r.phi;
        return d;
      },
      py::arg("x"), py::arg("y"),
      "Footrule distance and coefficient of paired data. Returns a dict with n, distance, phi.");

  m.def(
      "independence_test",
      [](std::vector<double> x, std::vector<double> y, const std::string& method) {
        const auto r = independence_test(PairedSample(std::move(x), std::move(y)),
                                         parse_method(method));
        py::dict d;
        d["n"] = r.n;
        d["distance"] = r.distance;
        d["phi"] = r.phi;
        d["z"] = r.z;
        d["p_value"] = r.p_two_sided;
        d["method"] = std::string(label(r.method));
        return d;
      },
      py::arg("x"), py::arg("y"), py::arg("method") = "normal",
      "Two-sided test of independence. 'exact' needs n <= 10 and otherwise falls back to "
      "'normal'; the returned method says which one was used.");

  py::class_<ExactNullDistribution>(m, "ExactNullDistribution")
      .def_property_readonly("n", &ExactNullDistribution::n)
      .def_property_readonly("counts", &ExactNullDistribution::counts)
      .def_property_readonly("total", &ExactNullDistribution::total)
      .def("probability", &ExactNullDistribution::probability, py::arg("distance"))
      .def("two_sided_p", &ExactNullDistribution::two_sided_p, py::arg("distance"))
      .def("phi_cdf", &ExactNullDistribution::phi_cdf)
      .def_property_readonly("phi_mean", &ExactNullDistribution::phi_mean)
      .def_property_readonly("phi_variance", &ExactNullDistribution::phi_variance)
      .def("__repr__", [](const ExactNullDistribution& d) {
        return "<ExactNullDistribution n=" + std::to_string(d.n()) + ">";
      });

  m.def("enumerate_null_distribution", &enumerate_null_distribution, py::arg("n"),
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>(),
        "Exact null law of the footrule distance by enumerating all n! permutations.");

  m.def(
      "phi_prime",
      [](const std::vector<double>& u, const std::vector<double>& v) { return phi_prime(u, v); },
      py::arg("u"), py::arg("v"));
  m.def(
      "phi_double_prime",
      [](const std::vector<double>& u, const std::vector<double>& v) {
        return phi_double_prime(u, v);
      },
      py::arg("u"), py::arg("v"));

  m.def(
      "null_variance",
      [](int n, Statistic s, bool exact) -> py::object {
        if (exact) {
          const Rational r = null_variance_exact(n, s);
          return py::make_tuple(r.num, r.den);
        }
        return py::float_(null_moments(n, s).variance);
      },
      py::arg("n"), py::arg("statistic"), py::arg("exact") = false,
      "Null variance; with exact=True a reduced (numerator, denominator) pair.");
  m.def("limiting_variance", &limiting_variance);
  m.def("cond_exp_abs_diff", &cond_exp_abs_diff, py::arg("u"));

  m.def(
      "simulate",
      [](std::uint64_t seed, std::size_t reps, int n, Statistic s, bool scale,
         bool normal_marginals, unsigned threads) {
        py::gil_scoped_release release;
        return simulate_draws(seed, reps, n, s, {scale, normal_marginals}, threads);
      },
      py::arg("seed"), py::arg("reps"), py::arg("n"), py::arg("statistic"),
      py::arg("scale") = false, py::arg("normal_marginals") = false, py::arg("threads") = 1,
      "Seeded null draws of one statistic; identical for every thread count.");

  m.def(
      "moment_study",
      [](Statistic s, std::vector<int> sizes, std::size_t reps, std::uint64_t seed,
         unsigned threads) {
        SimConfig cfg;
        cfg.seed = seed;
        cfg.replications = reps;
        cfg.sample_sizes = std::move(sizes);
        cfg.statistic = s;
        cfg.threads = threads;
        MomentReport report;
        {
          py::gil_scoped_release release;
          report = run_moment_study(cfg);
        }
        py::list rows;
        for (const auto& r : report.rows) {
          py::dict d;
          d["statistic"] = std::string(label(r.statistic));
          d["n"] = r.n;
          d["em"] = r.summary.em;
          d["ev"] = r.summary.ev;
          d["bias"] = r.summary.bias;
          d["rmse"] = r.summary.rmse;
          rows.append(d);
        }
        return rows;
      },
      py::arg("statistic"), py::arg("n_list"), py::arg("reps") = 10'000, py::arg("seed") = 42,
      py::arg("threads") = 1);

  m.def(
      "ks_two_sample",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return ks_dict(ks_two_sample(a, b));
      },
      py::arg("a"), py::arg("b"), "Two-sample KS test with the asymptotic Kolmogorov p-value.");
}
