#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ringchain/asymptotics.hpp"
#include "ringchain/cli.hpp"
#include "ringchain/errors.hpp"
#include "ringchain/oracle.hpp"
#include "ringchain/secular.hpp"
#include "ringchain/spectral_measure.hpp"

namespace py = pybind11;
using namespace ringchain;

namespace {

SpectralParameter param_from_energy(double e) { return SpectralParameter::from_energy(e); }

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"ringchain"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_ringchain, m) {
  m.doc() = "Spectral analysis of periodic ring chains";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<OverflowGuard>(m, "OverflowGuard", PyExc_OverflowError);

  py::enum_<Branch>(m, "Branch")
      .value("negative", Branch::negative)
      .value("zero", Branch::zero)
      .value("positive", Branch::positive);

  py::class_<ChainSpec>(m, "ChainSpec")
      .def(py::init<double>(), py::arg("link_length"))
      .def_static("tight", &ChainSpec::tight)
      .def_static("loose", &ChainSpec::loose, py::arg("link_length"))
      .def_property_readonly("link_length", &ChainSpec::link_length)
      .def_property_readonly("is_tight", &ChainSpec::is_tight)
      .def("__repr__", [](const ChainSpec& s) {
        return "ChainSpec(" + std::to_string(s.link_length()) + ")";
      });

  py::class_<Band>(m, "Band")
      .def_readonly("e_lo", &Band::e_lo)
      .def_readonly("e_hi", &Band::e_hi)
      .def_readonly("edge_theta_lo", &Band::edge_theta_lo)
      .def_readonly("edge_theta_hi", &Band::edge_theta_hi)
      .def_readonly("touchings", &Band::touchings)
      .def_property_readonly("width", &Band::width)
      .def("contains", &Band::contains, py::arg("energy"), py::arg("slack") = 0.0);

  py::class_<FlatBand>(m, "FlatBand")
      .def_readonly("energy", &FlatBand::energy)
      .def_readonly("embedded", &FlatBand::embedded)
      .def_property_readonly("source", [](const FlatBand& f) { return std::string(to_string(f.source)); });

  py::class_<MeasureReport>(m, "MeasureReport")
      .def_readonly("window", &MeasureReport::window)
      .def_readonly("measure", &MeasureReport::measure)
      .def_readonly("fraction", &MeasureReport::fraction)
      .def_readonly("band_count", &MeasureReport::band_count)
      .def_readonly("gap_count", &MeasureReport::gap_count);

  py::class_<CertificateDetail>(m, "CertificateDetail")
      .def_readonly("strong", &CertificateDetail::strong)
      .def_readonly("asymptotic", &CertificateDetail::asymptotic)
      .def_readonly("product", &CertificateDetail::product)
      .def_readonly("phi", &CertificateDetail::phi)
      .def_property_readonly("certificate",
                             [](const CertificateDetail& c) { return std::string(to_string(c.certificate)); });

  py::class_<Witness>(m, "Witness")
      .def_readonly("name", &Witness::name)
      .def_readonly("computed", &Witness::computed)
      .def_readonly("expected", &Witness::expected)
      .def_readonly("tolerance", &Witness::tolerance)
      .def_readonly("passed", &Witness::passed);

  py::class_<AsymptoticRow>(m, "AsymptoticRow")
      .def_readonly("quantity", &AsymptoticRow::quantity)
      .def_readonly("predicted", &AsymptoticRow::predicted)
      .def_readonly("solved", &AsymptoticRow::solved)
      .def_readonly("ratio", &AsymptoticRow::ratio);

  py::class_<OracleReport>(m, "OracleReport")
      .def_readonly("windows", &OracleReport::windows)
      .def_readonly("determinant_roots", &OracleReport::determinant_roots)
      .def_readonly("closed_form_roots", &OracleReport::closed_form_roots)
      .def_readonly("matched", &OracleReport::matched)
      .def_readonly("max_root_distance", &OracleReport::max_root_distance)
      .def_readonly("max_imag_leakage", &OracleReport::max_imag_leakage)
      .def_property_readonly("passed", &OracleReport::passed);

  m.def("flat_bands", &flat_bands, py::arg("spec"), py::arg("e_max"));
  m.def("positive_bands", &positive_bands, py::arg("spec"), py::arg("k_max"),
        py::arg("resolution") = kDefaultResolution);
  m.def("negative_bands", &negative_bands, py::arg("spec"), py::arg("resolution") = kDefaultResolution);
  m.def("reduced_dispersion", [](const ChainSpec& s, Branch b, double x) {
    return ReducedDispersion(s, b).value(x);
  }, py::arg("spec"), py::arg("branch"), py::arg("momentum"));
  m.def("spectrum_measure", &spectrum_measure, py::arg("spec"), py::arg("window"),
        py::arg("resolution") = kDefaultResolution);
  m.def("certify", &certify, py::arg("spec"), py::arg("k"));

  m.def("closed_form_value", [](const ChainSpec& s, double energy, double theta) {
    return closed_form_value(s, param_from_energy(energy), normalize_theta(theta));
  }, py::arg("spec"), py::arg("energy"), py::arg("theta"));
  m.def("secular_matrix", [](const ChainSpec& s, double energy, double theta) {
    return assemble(s, param_from_energy(energy), normalize_theta(theta)).matrix;
  }, py::arg("spec"), py::arg("energy"), py::arg("theta"));
  m.def("normalized_determinant", [](const ChainSpec& s, double energy, double theta) {
    return normalized_determinant(assemble(s, param_from_energy(energy), normalize_theta(theta)));
  }, py::arg("spec"), py::arg("energy"), py::arg("theta"));
  m.def("vertex_scattering", &vertex_scattering, py::arg("n"), py::arg("k"));
  m.def("coupling_matrix", [](int n) { return VertexCoupling(n).matrix(); }, py::arg("n"));

  m.def("lemma_witnesses", &evaluate_lemma_witnesses);
  m.def("asymptotic_comparison", &asymptotic_comparison, py::arg("ell"),
        py::arg("resolution") = kDefaultResolution);
  m.def("check_oracle_equivalence", &check_oracle_equivalence, py::arg("spec"), py::arg("branch"),
        py::arg("n_points") = 200, py::arg("seed") = 20240601, py::arg("tolerance") = 1e-7);

  m.def("run_cli", &run_cli, py::arg("args"),
        "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
