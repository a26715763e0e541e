#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "beattylab/report.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
namespace bl = beattylab;

namespace {

py::object to_py_int(const mpz_class& v) {
    return py::module_::import("builtins").attr("int")(v.get_str());
}

bl::RealParam real_of(const std::string& text) { return bl::RealParam::parse(text); }

bl::APClass ap_of(std::uint64_t d, std::uint64_t f) {
    return d == 1 ? bl::APClass{} : bl::APClass(d, f);
}

py::dict json_to_dict(const bl::ordered_json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Beatty-sequence prime experiments: exact membership, continued "
              "fractions, prime sums, exponential sums and the bound evaluators.";

    py::register_exception<bl::UndecidableAtPrecision>(m, "UndecidableAtPrecision");
    py::register_exception<bl::PrecisionExhausted>(m, "PrecisionExhausted");
    py::register_exception<bl::InsufficientConvergents>(m, "InsufficientConvergents");
    py::register_exception<bl::CapacityExceeded>(m, "CapacityExceeded");
    py::register_exception<bl::PreconditionViolated>(m, "PreconditionViolated");
    py::register_exception<bl::ConstructionFailed>(m, "ConstructionFailed");

    // irrational
    m.def("floor_linear",
          [](long n, const std::string& alpha, const std::string& beta) {
              return to_py_int(bl::floor_linear(mpz_class(n), real_of(alpha), real_of(beta)));
          },
          py::arg("n"), py::arg("alpha"), py::arg("beta") = "0",
          "floor(n*alpha + beta) decided exactly for surd inputs");
    m.def("dist_nearest_int",
          [](const std::string& x) {
              return bl::dist_nearest_int(real_of(x)).enclosure(96).to_double();
          },
          py::arg("x"), "Distance from x to the nearest integer");
    m.def("certified_less",
          [](const std::string& x, const std::string& y) {
              return bl::certified_less(real_of(x), real_of(y));
          },
          py::arg("x"), py::arg("y"));

    // contfrac
    m.def("cf_expand",
          [](const std::string& x, std::size_t count) {
              bl::ContinuedFraction cf = bl::cf_expand(real_of(x), count);
              py::list quots, convs;
              for (const auto& a : cf.quotients) quots.append(to_py_int(a));
              for (const auto& [p, q] : cf.convergents)
                  convs.append(py::make_tuple(to_py_int(p), to_py_int(q)));
              py::dict out;
              out["quotients"] = quots;
              out["convergents"] = convs;
              return out;
          },
          py::arg("x"), py::arg("count"));
    m.def("dirichlet_approx",
          [](const std::string& x, const std::string& Q) {
              bl::RationalApprox a = bl::dirichlet_approx(real_of(x), mpz_class(Q));
              return py::make_tuple(to_py_int(a.a), to_py_int(a.q));
          },
          py::arg("x"), py::arg("Q"), "Best rational a/q with q <= Q and |x-a/q| <= 1/(qQ)");
    m.def("type_estimate",
          [](const std::string& x, std::size_t n_max) {
              bl::TypeEstimate t = bl::type_estimate(real_of(x), n_max);
              py::list samples;
              for (const auto& s : t.samples)
                  samples.append(py::make_tuple(to_py_int(s.q), s.exponent));
              py::dict out;
              out["t_lower"] = t.t_lower;
              out["samples"] = samples;
              return out;
          },
          py::arg("x"), py::arg("n_max") = 20);

    // primes
    m.def("sieve_count",
          [](std::uint64_t lo, std::uint64_t hi) { return bl::PrimeTable::build(lo, hi).count(); },
          py::arg("lo"), py::arg("hi"));
    m.def("primes",
          [](std::uint64_t lo, std::uint64_t hi) {
              std::vector<std::uint64_t> out;
              bl::PrimeTable::build(lo, hi).for_each_prime(
                  [&](std::uint64_t p) { out.push_back(p); });
              return out;
          },
          py::arg("lo"), py::arg("hi"));
    m.def("von_mangoldt", &bl::von_mangoldt, py::arg("n"));
    m.def("chebyshev_theta",
          [](std::uint64_t N, std::uint64_t d, std::uint64_t f, unsigned threads) {
              return bl::chebyshev_theta(N, ap_of(d, f), threads);
          },
          py::arg("N"), py::arg("d") = 1, py::arg("f") = 0, py::arg("threads") = 1);
    m.def("chebyshev_psi",
          [](std::uint64_t N, std::uint64_t d, std::uint64_t f, unsigned threads) {
              return bl::chebyshev_psi(N, ap_of(d, f), threads);
          },
          py::arg("N"), py::arg("d") = 1, py::arg("f") = 0, py::arg("threads") = 1);
    m.def("check_explicit_constants",
          [](std::uint64_t N) { return json_to_dict(bl::to_json(bl::check_explicit_constants(N))); },
          py::arg("N"));

    // beatty
    m.def("is_member",
          [](const std::string& m_, const std::string& alpha, const std::string& beta) {
              bl::BeattyParams p(real_of(alpha), real_of(beta));
              return bl::is_member(mpz_class(m_), p);
          },
          py::arg("m"), py::arg("alpha"), py::arg("beta") = "0");
    m.def("member_witness",
          [](const std::string& m_, const std::string& alpha, const std::string& beta) {
              bl::BeattyParams p(real_of(alpha), real_of(beta));
              return bl::member_witness(mpz_class(m_), p);
          },
          py::arg("m"), py::arg("alpha"), py::arg("beta") = "0");
    m.def("enumerate_members",
          [](const std::string& N, const std::string& alpha, const std::string& beta) {
              bl::BeattyParams p(real_of(alpha), real_of(beta));
              py::list out;
              for (const mpz_class& m_ : bl::enumerate_members(mpz_class(N), p))
                  out.append(to_py_int(m_));
              return out;
          },
          py::arg("N"), py::arg("alpha"), py::arg("beta") = "0");
    m.def("chi_delta",
          [](const std::string& theta, const std::string& delta) {
              mpq_class d(delta);
              d.canonicalize();
              return bl::chi_delta(real_of(theta), d);
          },
          py::arg("theta"), py::arg("delta"));
    m.def("sandwich_polys",
          [](const std::string& delta, std::size_t L) {
              mpq_class d(delta);
              d.canonicalize();
              return json_to_dict(bl::to_json(bl::sandwich_polys(d, L)));
          },
          py::arg("delta"), py::arg("L"));
    m.def("discrepancy", [](std::vector<double> pts) { return bl::discrepancy(std::move(pts)); },
          py::arg("points"));

    // expsums
    m.def("inner_sum",
          [](std::uint64_t N, std::uint64_t d, std::uint64_t f, const std::string& theta,
             long long l) { return bl::inner_sum(N, ap_of(d, f), real_of(theta), l); },
          py::arg("N"), py::arg("d"), py::arg("f"), py::arg("theta"), py::arg("l"));
    m.def("s_theta",
          [](std::uint64_t N, std::uint64_t L, std::uint64_t d, std::uint64_t f,
             const std::string& theta, bool include_l0, unsigned threads) {
              bl::ExpSumSpec spec;
              spec.N = N;
              spec.L = L;
              spec.ap = ap_of(d, f);
              spec.theta = real_of(theta);
              spec.include_l0 = include_l0;
              return bl::s_theta(spec, threads);
          },
          py::arg("N"), py::arg("L"), py::arg("d") = 1, py::arg("f") = 0, py::arg("theta"),
          py::arg("include_l0") = false, py::arg("threads") = 1);
    m.def("expsum_report",
          [](std::uint64_t N, std::uint64_t L, std::uint64_t d, std::uint64_t f,
             const std::string& theta, std::uint64_t U, double eps, unsigned threads) {
              bl::ExpSumSpec spec;
              spec.N = N;
              spec.L = L;
              spec.ap = ap_of(d, f);
              spec.theta = real_of(theta);
              return json_to_dict(bl::to_json(bl::expsum_report(spec, U, eps, threads)));
          },
          py::arg("N"), py::arg("L"), py::arg("d") = 1, py::arg("f") = 0, py::arg("theta"),
          py::arg("U") = 0, py::arg("eps") = 0.01, py::arg("threads") = 1);
    m.def("vaughan_pieces",
          [](std::uint64_t N, std::uint64_t U, std::uint64_t d, std::uint64_t f,
             const std::string& theta, long long l) {
              bl::VaughanPieces vp = bl::vaughan_pieces(N, U, ap_of(d, f), real_of(theta), l);
              py::dict out;
              out["inner"] = vp.inner;
              out["s1"] = vp.s1;
              out["s2"] = vp.s2;
              out["s31"] = vp.s31;
              out["s32"] = vp.s32;
              out["residual"] = vp.residual;
              out["head"] = vp.head;
              out["residual_cap"] = vp.residual_cap;
              return out;
          },
          py::arg("N"), py::arg("U"), py::arg("d"), py::arg("f"), py::arg("theta"), py::arg("l"));
    m.def("phi1", &bl::phi1, py::arg("m"), py::arg("U"));
    m.def("phi2", &bl::phi2, py::arg("m"), py::arg("U"));
    m.def("prop2_bound",
          [](std::uint64_t N, std::uint64_t L, const std::string& q, std::uint64_t d, double eps) {
              bl::Prop2Bound b = bl::prop2_bound(N, L, mpz_class(q), d, eps);
              py::dict out;
              out["formula"] = b.formula;
              out["trivial"] = b.trivial;
              out["value"] = b.value;
              return out;
          },
          py::arg("N"), py::arg("L"), py::arg("q"), py::arg("d") = 1, py::arg("eps") = 0.01);
    m.def("prop1_bound",
          [](std::uint64_t N, std::uint64_t L, const std::string& q, unsigned k, double eps) {
              return bl::prop1_bound(N, L, mpz_class(q), k, eps);
          },
          py::arg("N"), py::arg("L"), py::arg("q"), py::arg("k"), py::arg("eps") = 0.01);
    m.def("choose_params",
          [](const std::string& kind, std::uint64_t N, const std::string& q, std::uint64_t d,
             unsigned k) {
              bl::ParamKind pk;
              if (kind == "L_thm1")
                  pk = bl::ParamKind::L_thm1;
              else if (kind == "L_thm3")
                  pk = bl::ParamKind::L_thm3;
              else if (kind == "U_prop2")
                  pk = bl::ParamKind::U_prop2;
              else
                  throw bl::PreconditionViolated("kind must be L_thm1|L_thm3|U_prop2");
              bl::ParamChoice c = bl::choose_params(pk, N, mpz_class(q), d, k);
              return py::make_tuple(c.value, c.exact);
          },
          py::arg("kind"), py::arg("N"), py::arg("q"), py::arg("d") = 1, py::arg("k") = 2);

    // theorems
    m.def("thm1_experiment",
          [](const std::string& g, const std::string& alpha, const std::string& beta,
             std::uint64_t N, double eps, unsigned threads, bool prime_powers) {
              bl::BeattyParams p(real_of(alpha), real_of(beta));
              return json_to_dict(bl::to_json(bl::thm1_experiment(
                  bl::IntPolynomial::parse(g), p, N, eps, threads, prime_powers)));
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta") = "0", py::arg("N") = 10000,
          py::arg("eps") = 0.01, py::arg("threads") = 1, py::arg("prime_powers") = false);
    m.def("thm2_bound",
          [](const std::string& g, const std::string& alpha, const std::string& beta, unsigned l,
             double eps) {
              bl::BeattyParams p(real_of(alpha), real_of(beta));
              return json_to_dict(
                  bl::to_json(bl::thm2_bound(bl::IntPolynomial::parse(g), p, l, eps)));
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta") = "0", py::arg("l") = 1,
          py::arg("eps") = 0.0);
    m.def("thm3_experiment",
          [](const std::string& alpha, const std::string& beta, std::uint64_t d, std::uint64_t f,
             std::uint64_t N, double eps, unsigned threads, bool prime_powers) {
              bl::BeattyParams p(real_of(alpha), real_of(beta));
              return json_to_dict(bl::to_json(
                  bl::thm3_experiment(p, ap_of(d, f), N, eps, threads, prime_powers)));
          },
          py::arg("alpha"), py::arg("beta") = "0", py::arg("d") = 1, py::arg("f") = 0,
          py::arg("N") = 100000, py::arg("eps") = 0.01, py::arg("threads") = 1,
          py::arg("prime_powers") = false);
    m.def("remark1_bound",
          [](const std::string& alpha, const std::string& beta, std::uint64_t d, std::uint64_t f,
             unsigned l, double eps) {
              bl::BeattyParams p(real_of(alpha), real_of(beta));
              return json_to_dict(bl::to_json(bl::remark1_bound(p, bl::APClass(d, f), l, eps)));
          },
          py::arg("alpha"), py::arg("beta") = "0", py::arg("d") = 2, py::arg("f") = 1,
          py::arg("l") = 1, py::arg("eps") = 0.0);
    m.def("least_prime_search",
          [](const std::string& g, const std::string& alpha, const std::string& beta,
             std::uint64_t cap) {
              bl::BeattyParams p(real_of(alpha), real_of(beta));
              return to_py_int(bl::least_prime_search(bl::IntPolynomial::parse(g), p, cap));
          },
          py::arg("g"), py::arg("alpha"), py::arg("beta") = "0", py::arg("cap") = 100000);

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
