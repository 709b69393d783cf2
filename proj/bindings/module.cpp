#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flab/configs.hpp"
#include "flab/constants.hpp"
#include "flab/dyadic.hpp"
#include "flab/fractal.hpp"
#include "flab/geom.hpp"
#include "flab/multiplicity.hpp"
#include "flab/oracle.hpp"
#include "flab/tangency_lab.hpp"

namespace py = pybind11;
using namespace flab;

PYBIND11_MODULE(pyflab, m) {
  m.doc() = "Discretized circle-family incidence library";

  py::class_<RealPoint>(m, "RealPoint")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &RealPoint::x)
      .def_readwrite("y", &RealPoint::y);

  py::class_<ParamPoint>(m, "ParamPoint")
      .def(py::init<double, double, double>(), py::arg("x1"), py::arg("x2"),
           py::arg("r"))
      .def_readwrite("x1", &ParamPoint::x1)
      .def_readwrite("x2", &ParamPoint::x2)
      .def_readwrite("r", &ParamPoint::r);

  py::class_<Scale>(m, "Scale")
      .def(py::init<int>(), py::arg("k"))
      .def_readwrite("k", &Scale::k)
      .def("value", &Scale::value);

  py::class_<Rect>(m, "Rect")
      .def_readwrite("p", &Rect::p)
      .def_readwrite("v", &Rect::v)
      .def_readwrite("delta", &Rect::delta)
      .def_readwrite("sigma", &Rect::sigma)
      .def_readwrite("dilation", &Rect::dilation);

  py::class_<Arc>(m, "Arc")
      .def_readwrite("circle", &Arc::circle)
      .def_readwrite("level", &Arc::level)
      .def_readwrite("index", &Arc::index);

  py::class_<SamplingSpec>(m, "SamplingSpec")
      .def(py::init<>())
      .def_readwrite("n_angular", &SamplingSpec::n_angular)
      .def_readwrite("n_radial", &SamplingSpec::n_radial);

  m.def("make_rect", &make_rect, py::arg("p"), py::arg("v"), py::arg("delta"),
        py::arg("sigma"), py::arg("dilation") = 1.0);
  m.def("param_distance", &param_distance);
  m.def("tangency", &tangency);
  m.def("in_domain", &in_domain);
  m.def("annulus_contains", &annulus_contains);
  m.def("rect_contains", &rect_contains, py::arg("R"), py::arg("w"),
        py::arg("slack") = 1.0);
  m.def("rect_dilate", &rect_dilate);
  m.def("rect_subset", &rect_subset, py::arg("R1"), py::arg("R2"),
        py::arg("sampling") = SamplingSpec{});
  m.def("rects_intersect", &rects_intersect, py::arg("R1"), py::arg("R2"),
        py::arg("sampling") = SamplingSpec{});
  m.def("comparable", &comparable, py::arg("R1"), py::arg("R2"), py::arg("C"),
        py::arg("sampling") = SamplingSpec{});
  m.def("intersection_scale", &intersection_scale);
  m.def("intersection_cover", &intersection_cover);

  m.def("cube_of", &cube_of);
  m.def("covering_count", &covering_count);
  m.def("covering_count_circle", &covering_count_circle);
  m.def("arc_of", &arc_of);
  m.def("arc_midpoint", &arc_midpoint);

  py::class_<SpreadReport>(m, "SpreadReport")
      .def_readonly("is_set", &SpreadReport::is_set)
      .def_readonly("min_C", &SpreadReport::min_C);
  m.def("check_delta_s_set", &check_delta_s_set);
  m.def("uniformize", &uniformize);
  m.def("gen_cantor_params", &gen_cantor_params);
  m.def("invert_line", &invert_line);

  py::class_<PairEntry>(m, "PairEntry")
      .def_readwrite("p", &PairEntry::p)
      .def_readwrite("v", &PairEntry::v)
      .def_readwrite("anchor", &PairEntry::anchor);
  m.def("total_multiplicity", &total_multiplicity);
  m.def("oracle_total_multiplicity", &oracle_total_multiplicity);
  m.def("oracle_covering_count", &oracle_covering_count);

  py::class_<Ex1Family>(m, "Ex1Family")
      .def_readonly("W", &Ex1Family::W)
      .def_readonly("B", &Ex1Family::B)
      .def_readonly("rects", &Ex1Family::rects)
      .def_readonly("window", &Ex1Family::window);
  m.def("gen_example_ex1", &gen_example_ex1);

  py::class_<RectFamily>(m, "RectFamily")
      .def_readonly("rects", &RectFamily::rects)
      .def_readonly("incomparability", &RectFamily::incomparability);
  m.def("max_incomparable_subset", &max_incomparable_subset, py::arg("rects"),
        py::arg("C"), py::arg("sampling") = SamplingSpec{});
  m.def("wolff_rhs", &wolff_rhs);
  m.def("thm4_rhs", &thm4_rhs);

  auto c = m.def_submodule("constants");
  c.attr("k_cover") = constants::k_cover;
  c.attr("k_w") = constants::k_w;
  c.attr("incomparability") = constants::incomparability;
  c.attr("ex1_incomparability") = constants::ex1_incomparability;
  c.attr("c_ex1") = constants::c_ex1;
}
