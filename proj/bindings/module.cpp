#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ewp/combinatorics.hpp"
#include "ewp/errors.hpp"
#include "ewp/exact.hpp"
#include "ewp/mdp.hpp"
#include "ewp/posterior.hpp"
#include "ewp/rng.hpp"
#include "ewp/sampler.hpp"
#include "ewp/version.hpp"

namespace py = pybind11;
using namespace ewp;

namespace {

PosteriorContext make_ctx(double alpha, double theta, std::int64_t n, std::int64_t j) {
  PosteriorContext ctx{{alpha, theta}, n, j};
  ctx.validate();
  return ctx;
}

MgfMethod parse_method(const std::string& name) {
  if (name == "series") return MgfMethod::series;
  if (name == "dp") return MgfMethod::dp;
  if (name == "mc") return MgfMethod::mc;
  throw ValidationError("method must be series, dp or mc");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ewens-Pitman two-parameter Poisson-Dirichlet partition model";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  // combinatorics
  m.def(
      "rising_factorial",
      [](double base, int steps, double increment) {
        return rising_factorial(base, steps, increment);
      },
      py::arg("base"), py::arg("steps"), py::arg("increment") = 1.0);
  m.def("falling_factorial", &falling_factorial, py::arg("c"), py::arg("j"));
  m.def("stirling2", &stirling2, py::arg("n"), py::arg("k"));
  m.def("noncentral_stirling2", &noncentral_stirling2, py::arg("n"), py::arg("k"),
        py::arg("a"));
  m.def(
      "log_gen_binom",
      [](double x, int k) {
        const SignedLog v = log_gen_binom(x, k);
        return py::make_tuple(v.sign, v.log_abs);
      },
      py::arg("x"), py::arg("k"), "Returns (sign, log|C(x,k)|).");

  // exact laws, series, moments
  m.def(
      "law_kn",
      [](double alpha, double theta, std::int64_t n) {
        const ExactLaw law = law_kn(ModelParams{alpha, theta}, n);
        std::vector<double> probs(n + 1, 0.0);
        for (std::int64_t k = 1; k <= n; ++k) probs[k] = law.prob(k);
        return probs;
      },
      py::arg("alpha"), py::arg("theta"), py::arg("n"),
      "P(K_n = k) for k = 0..n (entry 0 is zero).");
  m.def(
      "law_multiplicities",
      [](double alpha, double theta, std::int64_t n) {
        const auto law = law_multiplicities(ModelParams{alpha, theta}, n);
        std::vector<std::pair<std::vector<std::int64_t>, double>> out;
        out.reserve(law.atoms.size());
        for (const auto& atom : law.atoms) out.emplace_back(atom.hist, atom.prob);
        return out;
      },
      py::arg("alpha"), py::arg("theta"), py::arg("n"),
      "[(histogram, prob)] with histogram[l-1] = M_l.");
  m.def("mgf_kn_series_log", &mgf_kn_series_log, py::arg("alpha"), py::arg("n"),
        py::arg("y"));
  m.def("mgf_mln_series_log", &mgf_mln_series_log, py::arg("alpha"), py::arg("n"),
        py::arg("l"), py::arg("y"));
  m.def(
      "factorial_moment_kstar",
      [](double alpha, double theta_p, std::int64_t m, int r) {
        return factorial_moment_kstar(ModelParams{alpha, theta_p}, m, r);
      },
      py::arg("alpha"), py::arg("theta_p"), py::arg("m"), py::arg("r"));
  m.def(
      "factorial_moment_mstar",
      [](double alpha, double theta_p, std::int64_t m, int l, int r) {
        return factorial_moment_mstar(ModelParams{alpha, theta_p}, m, l, r);
      },
      py::arg("alpha"), py::arg("theta_p"), py::arg("m"), py::arg("l"), py::arg("r"));
  m.def("beta_moments", &beta_moments, py::arg("a"), py::arg("b"), py::arg("r_max"));
  m.def(
      "binomial_moment",
      [](std::int64_t k, const std::vector<double>& p_moments, int r) {
        return binomial_moment(k, p_moments, r);
      },
      py::arg("k"), py::arg("p_moments"), py::arg("r"));

  // posterior representation
  m.def(
      "posterior_moment_k",
      [](double alpha, double theta, std::int64_t n, std::int64_t j, std::int64_t m,
         int r) { return posterior_moment_k(make_ctx(alpha, theta, n, j), m, r); },
      py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("j"), py::arg("m"),
      py::arg("r"));
  m.def(
      "posterior_moment_m",
      [](double alpha, double theta, std::int64_t n, std::int64_t j, std::int64_t m,
         int l, int r) {
        return posterior_moment_m(make_ctx(alpha, theta, n, j), m, l, r);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("j"), py::arg("m"),
      py::arg("l"), py::arg("r"));
  m.def(
      "sample_posterior_k",
      [](double alpha, double theta, std::int64_t n, std::int64_t j, std::int64_t m,
         std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return sample_posterior_k(make_ctx(alpha, theta, n, j), m, rng);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("j"), py::arg("m"),
      py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "sample_posterior_m",
      [](double alpha, double theta, std::int64_t n, std::int64_t j, std::int64_t m,
         int l, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return sample_posterior_m(make_ctx(alpha, theta, n, j), m, l, rng);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("j"), py::arg("m"),
      py::arg("l"), py::arg("seed"), py::arg("stream") = 0);

  // samplers
  m.def(
      "sample_gem",
      [](double alpha, double theta, int truncation, std::uint64_t seed,
         std::uint64_t stream) {
        RngStream rng(seed, stream);
        const auto w = sample_gem(ModelParams{alpha, theta}, truncation, rng);
        return py::make_tuple(w.sticks, w.residual);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("truncation"), py::arg("seed"),
      py::arg("stream") = 0, "Returns (sticks, residual).");
  m.def(
      "sample_kn",
      [](double alpha, double theta, std::int64_t n, std::uint64_t seed,
         std::uint64_t stream) {
        RngStream rng(seed, stream);
        return sample_kn(ModelParams{alpha, theta}, n, rng);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("seed"),
      py::arg("stream") = 0);
  m.def(
      "sample_mln",
      [](double alpha, double theta, std::int64_t n, int l, std::uint64_t seed,
         std::uint64_t stream) {
        RngStream rng(seed, stream);
        return sample_mln(ModelParams{alpha, theta}, n, l, rng);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("n"), py::arg("l"), py::arg("seed"),
      py::arg("stream") = 0);
  m.def(
      "sample_path",
      [](double alpha, double theta, const std::vector<std::int64_t>& checkpoints,
         int track_l_max, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        const auto path =
            sample_path(ModelParams{alpha, theta}, checkpoints, track_l_max, rng);
        std::vector<py::tuple> out;
        out.reserve(path.size());
        for (const auto& pt : path) out.push_back(py::make_tuple(pt.n, pt.k, pt.m));
        return out;
      },
      py::arg("alpha"), py::arg("theta"), py::arg("checkpoints"),
      py::arg("track_l_max"), py::arg("seed"), py::arg("stream") = 0,
      "[(n, K_n, [M_1..M_lmax])] at each checkpoint.");
  m.def(
      "bernoulli_kn_alpha0",
      [](double theta, std::int64_t n, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return bernoulli_kn_alpha0(theta, n, rng);
      },
      py::arg("theta"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

  // moderate deviations
  m.def("rate_k", &rate_k, py::arg("alpha"), py::arg("x"));
  m.def("rate_m", &rate_m, py::arg("alpha"), py::arg("l"), py::arg("x"));
  m.def("limit_logmgf_k", &limit_logmgf_k, py::arg("alpha"), py::arg("lam"));
  m.def("limit_logmgf_m", &limit_logmgf_m, py::arg("alpha"), py::arg("l"),
        py::arg("lam"));
  m.def(
      "legendre_rate",
      [](double alpha, double x, std::optional<int> l, double tol) {
        return legendre_rate(alpha, l, x, tol);
      },
      py::arg("alpha"), py::arg("x"), py::arg("l") = std::nullopt,
      py::arg("tol") = 1e-12);
  m.def(
      "entropy_form",
      [](double alpha, double x) {
        const auto ef = entropy_form(alpha, x);
        return py::make_tuple(ef.h_alpha, ef.value);
      },
      py::arg("alpha"), py::arg("x"), "Returns (H_alpha, rate value).");
  m.def("critical_alpha", &critical_alpha, py::arg("x"));
  m.def(
      "validate_schedule",
      [](double c, double p, double q, double alpha) {
        const auto v = validate_schedule(ScaleSchedule{c, p, q}, alpha);
        return py::make_tuple(v.valid, v.reason);
      },
      py::arg("c"), py::arg("p"), py::arg("q"), py::arg("alpha"),
      "beta_n = c n^p (ln n)^q; returns (valid, reason).");
  m.def(
      "scaled_logmgf",
      [](double alpha, double theta, double c, double p, double q, std::int64_t n,
         double lam, const std::string& statistic, int l, const std::string& method,
         std::int64_t reps, std::uint64_t seed, int workers) {
        const auto entry = scaled_logmgf(
            ModelParams{alpha, theta}, ScaleSchedule{c, p, q}, n, lam,
            statistic == "M" ? Statistic::M : Statistic::K, l, parse_method(method),
            reps, seed, 0, workers);
        return py::make_tuple(entry.value,
                              entry.mc_stderr ? py::cast(*entry.mc_stderr) : py::none());
      },
      py::arg("alpha"), py::arg("theta"), py::arg("c"), py::arg("p"), py::arg("q"),
      py::arg("n"), py::arg("lam"), py::arg("statistic") = "K", py::arg("l") = 1,
      py::arg("method") = "series", py::arg("reps") = 0, py::arg("seed") = 0,
      py::arg("workers") = 1, "Returns (scaled log-MGF, mc stderr or None).");
}
