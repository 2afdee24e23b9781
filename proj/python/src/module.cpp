#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptmat/analytic.hpp"
#include "ptmat/construction.hpp"
#include "ptmat/dynamics.hpp"
#include "ptmat/errors.hpp"
#include "ptmat/serialization.hpp"
#include "ptmat/spectral.hpp"
#include "ptmat/symmetry_algebra.hpp"

namespace py = pybind11;
using namespace ptmat;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw InvalidArgument("expected a square 2-D array");
  const auto d = static_cast<std::size_t>(a.shape(0));
  return ComplexMatrix(d, std::vector<Complex>(a.data(), a.data() + d * d));
}

ComplexVector to_vector(const CArray& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a 1-D array");
  return ComplexVector(a.data(), a.data() + a.shape(0));
}

CArray from_matrix(const ComplexMatrix& m) {
  const auto d = static_cast<py::ssize_t>(m.dim());
  CArray out({d, d});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

CArray from_vector(std::span<const Complex> v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict spectrum_dict(const SpectralData& data) {
  std::vector<Complex> values;
  const std::size_t d = data.pairs.size();
  CArray vectors({static_cast<py::ssize_t>(d), static_cast<py::ssize_t>(d)});
  auto view = vectors.mutable_unchecked<2>();
  for (std::size_t k = 0; k < d; ++k) {
    values.push_back(data.pairs[k].value);
    for (std::size_t i = 0; i < d; ++i)
      view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(k)) = data.pairs[k].vector[i];
  }
  py::dict out;
  out["eigenvalues"] = from_vector(values);
  out["eigenvectors"] = vectors;  // column k belongs to eigenvalue k
  out["phase"] = to_string(data.phase);
  out["real_count"] = data.real_count;
  out["conjugate_pairs"] = data.conjugate_pairs;
  out["pt_norm_signs"] = data.phase == Phase::Unbroken ? py::cast(data.pt_norm_signs) : py::none();
  out["min_self_overlap"] = data.min_self_overlap;
  return out;
}

py::dict trace_dict(const EvolutionTrace& trace) {
  py::dict out;
  out["times"] = py::array_t<double>(static_cast<py::ssize_t>(trace.times.size()), trace.times.data());
  out["inner_products"] = from_vector(trace.inner_products);
  out["max_drift"] = trace.max_drift;
  return out;
}

PTSystem system_of(const CArray& h, const CArray& p, double tol) { return PTSystem(to_matrix(h), to_matrix(p), {}, tol); }

}  // namespace

PYBIND11_MODULE(_ptmat, m) {
  m.doc() = "Finite-dimensional PT-symmetric Hamiltonians";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<ExceptionalPointError>(m, "ExceptionalPointError", numerical.ptr());
  py::register_exception<BrokenPhaseError>(m, "BrokenPhaseError", numerical.ptr());
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", numerical.ptr());
  py::register_exception<InconclusiveError>(m, "InconclusiveError", numerical.ptr());

  py::class_<PTSystem>(m, "PTSystem")
      .def(py::init([](const CArray& h, const CArray& p, double tol) { return system_of(h, p, tol); }),
           py::arg("h"), py::arg("p"), py::arg("tol") = kDefaultTol)
      .def_property_readonly("h", [](const PTSystem& s) { return from_matrix(s.h()); })
      .def_property_readonly("p", [](const PTSystem& s) { return from_matrix(s.p()); })
      .def_property_readonly("dim", &PTSystem::dim)
      .def_property_readonly("signature",
                             [](const PTSystem& s) { return std::pair(s.signature().plus, s.signature().minus); })
      .def_property_readonly("seed", [](const PTSystem& s) { return s.provenance().seed; })
      .def("to_json", [](const PTSystem& s) { return io::dump(io::to_json(s)); })
      .def_static(
          "from_json",
          [](const std::string& text, double tol) {
            try {
              return io::pt_system_from_json(io::Json::parse(text), tol);
            } catch (const io::Json::exception& e) {
              throw InvalidArgument(e.what());
            }
          },
          py::arg("text"), py::arg("tol") = kDefaultTol);

  m.def(
      "random_pt_system",
      [](std::size_t plus, std::size_t minus, std::uint64_t seed, double coupling) {
        return random_pt_system({plus, minus}, seed, coupling);
      },
      py::arg("m_plus"), py::arg("m_minus"), py::arg("seed"), py::arg("coupling") = 1.0,
      "Seeded random system with parity signature (m_plus, m_minus).");
  m.def(
      "make_parity",
      [](std::size_t plus, std::size_t minus, std::vector<double> angles) {
        return from_matrix(make_parity({{plus, minus}, std::move(angles)}));
      },
      py::arg("m_plus"), py::arg("m_minus"), py::arg("angles"));
  m.def("count_parity_params", &count_parity_params, py::arg("d"), py::arg("m_plus"), py::arg("m_minus"));
  m.def(
      "parameter_table",
      [](std::size_t d) {
        const ParameterCounts c = parameter_table(d);
        py::dict out;
        out["parity_max"] = c.parity_max;
        out["h0"] = c.h0;
        out["pt"] = c.pt;
        out["hermitian"] = c.hermitian;
        out["real_symmetric"] = c.real_symmetric;
        return out;
      },
      py::arg("d"));
  m.def(
      "classify_matrix",
      [](const CArray& h, std::optional<CArray> p, double tol) {
        std::optional<ComplexMatrix> parity;
        if (p) parity = to_matrix(*p);
        return classify_matrix(to_matrix(h), parity, tol).names();
      },
      py::arg("h"), py::arg("p") = py::none(), py::arg("tol") = kDefaultTol);

  m.def(
      "classify_phase", [](const PTSystem& s, double tol) { return spectrum_dict(classify_phase(s, tol)); },
      py::arg("system"), py::arg("tol") = kDefaultTol);
  m.def(
      "build_c_operator", [](const PTSystem& s, double tol) { return from_matrix(build_c_operator(s, tol).matrix); },
      py::arg("system"), py::arg("tol") = kDefaultTol);
  m.def(
      "cpt_inner",
      [](const PTSystem& s, const CArray& a, const CArray& b, double tol) {
        return cpt_inner(to_vector(a), to_vector(b), build_c_operator(s, tol), s.p());
      },
      py::arg("system"), py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);
  m.def(
      "evolve",
      [](const PTSystem& s, const CArray& state, double t, double tol) {
        return from_vector(evolve(s, to_vector(state), t, tol));
      },
      py::arg("system"), py::arg("state"), py::arg("t"), py::arg("tol") = kDefaultTol);
  m.def(
      "unitarity_trace",
      [](const PTSystem& s, const CArray& a, const CArray& b, double t_max, std::size_t steps,
         const std::string& kind, double tol) {
        if (kind != "cpt" && kind != "pt") throw InvalidArgument("kind must be 'cpt' or 'pt'");
        const COperator c = build_c_operator(s, tol);
        return trace_dict(unitarity_trace(s, c, to_vector(a), to_vector(b), t_max, steps,
                                          kind == "pt" ? InnerProductKind::PT : InnerProductKind::CPT, tol));
      },
      py::arg("system"), py::arg("a"), py::arg("b"), py::arg("t_max") = 10.0, py::arg("steps") = 101,
      py::arg("kind") = "cpt", py::arg("tol") = kDefaultTol);
  m.def(
      "nonunitarity_demo",
      [](const CArray& h, const CArray& p, double t_max, std::size_t steps, std::uint64_t seed, double tol) {
        return trace_dict(nonunitarity_demo(to_matrix(h), to_matrix(p), t_max, steps, seed, tol));
      },
      py::arg("h"), py::arg("p"), py::arg("t_max") = 10.0, py::arg("steps") = 101, py::arg("seed") = 0,
      py::arg("tol") = kDefaultTol);

  auto an = m.def_submodule("analytic", "Closed-form 2x2 and 3x3 results");
  auto params = [](double r, double s, double t, double phi) { return analytic::TwoByTwoParams{r, s, t, phi}; };
  an.def(
      "h2", [=](double r, double s, double t, double phi) { return from_matrix(analytic::h2(params(r, s, t, phi))); },
      py::arg("r"), py::arg("s"), py::arg("t"), py::arg("phi"));
  an.def("p2", [](double phi) { return from_matrix(analytic::p2(phi)); }, py::arg("phi"));
  an.def(
      "p3", [](double phi, double theta) { return from_matrix(analytic::p3({phi, theta})); }, py::arg("phi"),
      py::arg("theta"));
  an.def(
      "eig2", [=](double r, double s, double t, double phi) { return analytic::eig2(params(r, s, t, phi)); },
      py::arg("r"), py::arg("s"), py::arg("t"), py::arg("phi"));
  an.def(
      "c2", [=](double r, double s, double t, double phi) { return from_matrix(analytic::c2(params(r, s, t, phi))); },
      py::arg("r"), py::arg("s"), py::arg("t"), py::arg("phi"));
}
