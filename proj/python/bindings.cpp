#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsanov/divergences.hpp"
#include "qsanov/errors.hpp"
#include "qsanov/exponents.hpp"
#include "qsanov/partitions.hpp"
#include "qsanov/sanov.hpp"
#include "qsanov/schur.hpp"

namespace py = pybind11;
using namespace qsanov;

namespace {

DensityMatrix state(const ComplexMatrix& m) { return DensityMatrix(m); }

py::list pairs_to_list(const std::vector<OutcomePair>& pairs) {
  py::list out;
  for (const auto& p : pairs) out.append(py::make_tuple(p.young.parts(), p.type.counts()));
  return out;
}

JointOutcomeDistribution distribution(const ComplexMatrix& sigma, int n) {
  return outcome_distribution(state(sigma), n);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schur sampling, empirical types and sandwiched Renyi exponents";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SupportError>(m, "SupportError", PyExc_ArithmeticError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  m.def("relative_entropy", [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    return relative_entropy(state(rho), state(sigma));
  });
  m.def("log_fidelity", [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    return log_fidelity(state(rho), state(sigma));
  });
  m.def("phi_sandwich", [](double t, const ComplexMatrix& a, const ComplexMatrix& b) {
    return phi_sandwich(t, state(a), state(b));
  }, py::arg("t"), py::arg("a"), py::arg("b"));
  m.def("phi_petz", [](double s, const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    return phi_petz(s, state(rho), state(sigma));
  }, py::arg("s"), py::arg("rho"), py::arg("sigma"));
  m.def("d_hat", [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    return d_hat(state(rho), state(sigma));
  }, py::arg("rho"), py::arg("sigma"));
  m.def("solve_s_of_r", [](double r, const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    return solve_s_of_r(r, state(rho), state(sigma));
  }, py::arg("r"), py::arg("rho"), py::arg("sigma"));
  m.def("b_e_hat", [](double r, const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    const BeHat b = b_e_hat(r, state(rho), state(sigma));
    return py::make_tuple(b.value, b.s_star);
  }, py::arg("r"), py::arg("rho"), py::arg("sigma"), "Returns (value, s_star).");

  m.def("enumerate_young", [](int n, int d) {
    std::vector<std::vector<int>> out;
    for (const auto& y : enumerate_young(n, d)) out.push_back(y.parts());
    return out;
  });
  m.def("enumerate_types", [](int n, int d) {
    std::vector<std::vector<int>> out;
    for (const auto& t : enumerate_types(n, d)) out.push_back(t.counts());
    return out;
  });
  m.def("multiplicity_dim", [](std::vector<int> parts) {
    return multiplicity_dim(YoungIndex(std::move(parts))).convert_to<long long>();
  });
  m.def("unitary_dim", [](std::vector<int> parts, int d) {
    return unitary_dim(YoungIndex(std::move(parts)), d).convert_to<long long>();
  });

  m.def("outcome_distribution", [](const ComplexMatrix& sigma, int n) {
    py::list out;
    for (const auto& e : distribution(sigma, n).entries)
      out.append(py::make_tuple(e.pair.young.parts(), e.pair.type.counts(), e.prob));
    return out;
  }, py::arg("sigma"), py::arg("n"), "List of (young, type, prob) in canonical order.");
  m.def("sample_outcomes", [](const ComplexMatrix& sigma, int n, std::size_t count, std::uint64_t seed) {
    return pairs_to_list(sample_outcomes(distribution(sigma, n), count, seed));
  }, py::arg("sigma"), py::arg("n"), py::arg("count"), py::arg("seed"));

  m.def("verify", [](int d, std::vector<int> n_list) {
    VerifyOptions options;
    options.d = d;
    options.n_list = std::move(n_list);
    const VerifyResult r = run_verification(options);
    py::dict summary;
    summary["total"] = r.summary.total;
    summary["passed"] = r.summary.passed;
    summary["vacuous"] = r.summary.vacuous;
    return summary;
  }, py::arg("d") = 2, py::arg("n_list") = std::vector<int>{2, 3, 4});
}
