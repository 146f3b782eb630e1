#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cstar/functional_calculus.hpp"
#include "cstar/hull_model.hpp"
#include "cstar/matrix.hpp"
#include "cstar/projection_geometry.hpp"
#include "cstar/weights.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace cstar;

namespace {

// Matrices cross the boundary as complex128 numpy arrays.
using Array = Eigen::MatrixXcd;

MatElement mat(const Array& a) { return MatElement(a); }
Array arr(const MatElement& a) { return a.matrix(); }

MatrixSequence seq(const std::vector<Array>& entries, double tail_fraction) {
  std::vector<MatElement> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(mat(e));
  return MatrixSequence(std::move(out), tail_fraction);
}

py::dict retraction(const RetractionResult& r) {
  py::dict d;
  d["output"] = arr(r.output);
  d["distance"] = r.distance;
  d["defect"] = r.input_defect;
  return d;
}

py::dict witness(const EquivWitness& w) {
  py::dict d;
  d["u"] = arr(w.u);
  d["left_defect"] = w.left_defect;
  d["right_defect"] = w.right_defect;
  return d;
}

py::dict certificate(const ApsCertificate& c) {
  py::dict d;
  d["certified"] = c.certified;
  d["threshold"] = c.threshold;
  d["tail_begin"] = c.tail_begin;
  d["defects"] = c.defects;
  d["diagnostics"] = c.diagnostics;
  if (c.fitted_decay) {
    d["fitted_decay"] = py::make_tuple(c.fitted_decay->scale, c.fitted_decay->exponent);
  } else {
    d["fitted_decay"] = py::none();
  }
  py::list tail;
  for (const auto& t : c.nearest_projections) {
    py::dict item;
    item["index"] = t.index;
    item["rank"] = t.rank;
    item["retraction"] = t.retraction ? py::object(retraction(*t.retraction)) : py::object(py::none());
    tail.append(item);
  }
  d["nearest_projections"] = tail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_cstar, m) {
  m.doc() = "Numerical toolkit for finite-dimensional C*-algebras";

  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      PyErr_SetObject(precondition.ptr(), py::make_tuple(std::string(to_string(e.code())), e.detail()).ptr());
    }
  });

  // core algebra
  m.def("op_norm", [](const Array& a) { return op_norm(mat(a)); });
  m.def("default_tolerance", [](const Array& a) { return default_tolerance(mat(a)); });
  m.def("cone_flags", [](const Array& a, std::optional<double> tol) {
    const ConeFlags f = cone_flags(mat(a), tol);
    py::dict d;
    d["is_self_adjoint"] = f.is_self_adjoint;
    d["is_positive"] = f.is_positive;
    d["is_projection"] = f.is_projection;
    d["is_partial_isometry"] = f.is_partial_isometry;
    d["tolerance"] = f.tolerance;
    return d;
  }, py::arg("a"), py::arg("tol") = py::none());
  m.def("herm_decompose", [](const Array& a) {
    const HermParts h = herm_decompose(mat(a));
    return py::make_tuple(arr(h.real), arr(h.imag));
  });
  m.def("jordan_decompose", [](const Array& a) {
    const JordanParts j = jordan_decompose(mat(a));
    return py::make_tuple(arr(j.pos_real), arr(j.neg_real), arr(j.pos_imag), arr(j.neg_imag));
  });
  m.def("polar_decompose", [](const Array& a) {
    const PolarParts p = polar_decompose(mat(a));
    return py::make_tuple(arr(p.isometry), arr(p.abs));
  });
  m.def("loewner_leq", [](const Array& a, const Array& b, double tol) { return loewner_leq(mat(a), mat(b), tol); },
        py::arg("a"), py::arg("b"), py::arg("tol") = 0.0);
  m.def("infinitesimal_gap", [](const Array& a, const Array& b) { return infinitesimal_gap(mat(a), mat(b)); });

  // functional calculus
  py::class_<FnDescriptor>(m, "FnDescriptor")
      .def_static("identity", &FnDescriptor::identity)
      .def_static("abs", &FnDescriptor::abs)
      .def_static("pos_part", &FnDescriptor::pos_part)
      .def_static("neg_part", &FnDescriptor::neg_part)
      .def_static("sqrt", &FnDescriptor::sqrt)
      .def_static("power", &FnDescriptor::power, py::arg("r"))
      .def_static("indicator", &FnDescriptor::indicator, py::arg("lo"),
                  py::arg("hi") = std::numeric_limits<double>::infinity())
      .def_static("piecewise_linear", &FnDescriptor::piecewise_linear, py::arg("points"))
      .def("__call__", [](const FnDescriptor& f, double t) { return f(t); });

  m.def("spectrum", [](const Array& a) {
    const Spectrum s = spectrum(mat(a));
    return py::make_tuple(s.eigenvalues, s.is_real);
  });
  m.def("spectral_decompose", [](const Array& a, double cluster_tol) {
    py::list out;
    for (const auto& c : spectral_decompose(mat(a), cluster_tol).clusters) {
      out.append(py::make_tuple(c.lambda, arr(c.projection), c.multiplicity));
    }
    return out;
  }, py::arg("a"), py::arg("cluster_tol") = 1e-10);
  m.def("apply_function", [](const Array& a, const FnDescriptor& f) { return arr(apply_function(mat(a), f)); });
  m.def("spectral_projector", [](const Array& a, double lo, double hi) {
    return arr(spectral_projector(mat(a), lo, hi));
  }, py::arg("a"), py::arg("lo"), py::arg("hi") = std::numeric_limits<double>::infinity());
  m.def("pstar_approximate", [](const Array& a, int n) {
    const PStarApprox p = pstar_approximate(mat(a), n);
    py::list terms;
    for (const auto& t : p.terms) terms.append(py::make_tuple(t.gamma, arr(t.q)));
    py::dict d;
    d["n"] = p.n;
    d["terms"] = terms;
    d["achieved_error"] = p.achieved_error;
    return d;
  });

  // projection geometry
  m.def("projection_defect", [](const Array& a) { return projection_defect(mat(a)); });
  m.def("retract_projection", [](const Array& a) { return retraction(retract_projection(mat(a))); });
  m.def("retract_partial_isometry", [](const Array& v) { return retraction(retract_partial_isometry(mat(v))); });
  m.def("mvn_witness", [](const Array& p, const Array& q) { return witness(mvn_witness(mat(p), mat(q))); });
  m.def("subordination_witness",
        [](const Array& p, const Array& q) { return witness(subordination_witness(mat(p), mat(q))); });
  m.def("dominating_lift", [](const Array& q, const Array& p0) { return arr(dominating_lift(mat(q), mat(p0))); });
  m.def("orthogonality_repair", [](const Array& p, const Array& q) {
    const OrthogonalPair r = orthogonality_repair(mat(p), mat(q));
    return py::make_tuple(arr(r.p), arr(r.q));
  });
  m.def("range_projection_of_product",
        [](const Array& p, const Array& q) { return arr(range_projection_of_product(mat(p), mat(q))); });
  m.def("proximity_equiv_check", [](const Array& p, const Array& q) -> py::object {
    const auto r = proximity_equiv_check(mat(p), mat(q));
    if (const auto* w = std::get_if<EquivWitness>(&r)) return witness(*w);
    py::dict d;
    d["not_close"] = std::get<NotClose>(r).distance;
    return d;
  });

  // weights
  py::class_<Weight>(m, "Weight")
      .def_static("density", [](const Array& h) { return Weight::density(mat(h)); })
      .def_static("infinite", &Weight::infinite)
      .def_property_readonly("is_infinite", &Weight::is_infinite);
  m.def("weight_eval", [](const Weight& w, const Array& a) { return weight_eval(w, mat(a)); });
  m.def("weight_extend_eval", [](const Weight& w, const Array& a) { return weight_extend_eval(w, mat(a)); });
  m.def("classify_weight", [](const Weight& w) {
    const WeightFlags f = classify_weight(w);
    py::dict d;
    d["faithful"] = f.faithful;
    d["state"] = f.state;
    d["trace"] = f.trace;
    return d;
  });
  m.def("leq_n", [](const Array& a, const Array& b, int n) {
    const LeqNResult r = leq_n(mat(a), mat(b), n);
    py::object w = py::none();
    if (r.witness) w = py::make_tuple(arr(r.witness->first), arr(r.witness->second));
    return py::make_tuple(r.holds, w);
  });

  // sequences
  m.def("certify_aps", [](const std::vector<Array>& s, double threshold, double tail_fraction) {
    return certificate(certify_aps(seq(s, tail_fraction), threshold));
  }, py::arg("entries"), py::arg("threshold"), py::arg("tail_fraction") = 0.5);
  m.def("certify_apis", [](const std::vector<Array>& s, double threshold, double tail_fraction) {
    const ApisCertificate c = certify_apis(seq(s, tail_fraction), threshold);
    py::dict d;
    d["certified"] = c.certified;
    d["range_side"] = certificate(c.range_side);
    d["source_side"] = certificate(c.source_side);
    return d;
  }, py::arg("entries"), py::arg("threshold"), py::arg("tail_fraction") = 0.5);
  m.def("sim_a_witness", [](const std::vector<Array>& a, const std::vector<Array>& b, double threshold,
                            double tail_fraction) {
    const SimAWitness w = sim_a_witness(seq(a, tail_fraction), seq(b, tail_fraction), threshold);
    py::list terms;
    for (const auto& t : w.terms) terms.append(py::make_tuple(t.index, arr(t.u), t.residual));
    py::dict d;
    d["success"] = w.success;
    d["max_residual"] = w.max_residual;
    d["terms"] = terms;
    return d;
  }, py::arg("seq_a"), py::arg("seq_b"), py::arg("threshold"), py::arg("tail_fraction") = 0.5);
  m.def("threshold_index", [](const std::vector<Array>& s, double epsilon, double tail_fraction) {
    const ThresholdIndexResult r = threshold_index(seq(s, tail_fraction), epsilon);
    std::vector<Array> projections;
    for (const auto& p : r.projections) projections.push_back(arr(p));
    return py::make_tuple(r.n, projections);
  }, py::arg("entries"), py::arg("epsilon"), py::arg("tail_fraction") = 0.5);
  m.def("infiniteness_probe", [](const std::vector<Array>& s, double threshold, double tail_fraction) {
    const InfinitenessReport r = infiniteness_probe(seq(s, tail_fraction), threshold);
    py::dict d;
    d["verdict"] = std::string(to_string(r.verdict));
    d["hypothesis_holds"] = r.hypothesis_holds;
    d["equivalent_to_identity"] = r.equivalent_to_identity;
    d["tail_ranks"] = r.tail_ranks;
    d["full_rank"] = r.full_rank;
    d["summary"] = r.summary;
    return d;
  }, py::arg("entries"), py::arg("threshold"), py::arg("tail_fraction") = 0.5);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
