// Python bindings. Images cross the boundary as float64 (H, W, 3) arrays in [0, 1],
// instance masks as uint32 (H, W), binary masks as bool (H, W).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <cstring>
#include <optional>
#include <sstream>

#include "seamcut/pipeline.hpp"
#include "seamcut/solver.hpp"
#include "seamcut/stylize.hpp"

namespace py = pybind11;
using namespace seamcut;

namespace {

using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using U32Array = py::array_t<std::uint32_t, py::array::c_style | py::array::forcecast>;
using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;

RgbImage to_image(const F64Array& a) {
  if (a.ndim() != 3 || a.shape(2) != 3) throw Error(ErrorKind::InvalidImage, "expected an (H, W, 3) array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  return RgbImage(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

F64Array from_image(const RgbImage& img) {
  F64Array out({static_cast<py::ssize_t>(img.height()), static_cast<py::ssize_t>(img.width()), py::ssize_t{3}});
  std::copy(img.data().begin(), img.data().end(), out.mutable_data());
  return out;
}

InstanceMask to_mask(const U32Array& a) {
  if (a.ndim() != 2) throw Error(ErrorKind::InvalidImage, "expected an (H, W) mask");
  return InstanceMask(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)),
                      std::vector<std::uint32_t>(a.data(), a.data() + a.size()));
}

U32Array from_mask(const InstanceMask& m) {
  U32Array out({static_cast<py::ssize_t>(m.height()), static_cast<py::ssize_t>(m.width())});
  std::copy(m.ids().begin(), m.ids().end(), out.mutable_data());
  return out;
}

BinaryMask to_binary(const BoolArray& a) {
  if (a.ndim() != 2) throw Error(ErrorKind::InvalidImage, "expected an (H, W) boolean mask");
  std::vector<std::uint8_t> bits(a.data(), a.data() + a.size());
  return BinaryMask(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), std::move(bits));
}

BoolArray from_binary(const BinaryMask& m) {
  BoolArray out({static_cast<py::ssize_t>(m.height()), static_cast<py::ssize_t>(m.width())});
  std::copy(m.bits().begin(), m.bits().end(), out.mutable_data());
  return out;
}

py::array_t<std::uint8_t> labels_array(const Labeling& l) {
  py::array_t<std::uint8_t> out(static_cast<py::ssize_t>(l.size()));
  std::transform(l.begin(), l.end(), out.mutable_data(), [](Label v) { return static_cast<std::uint8_t>(v); });
  return out;
}

Labeling to_labeling(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
  Labeling l(static_cast<std::size_t>(a.size()));
  for (std::size_t k = 0; k < l.size(); ++k) l[k] = a.data()[k] ? Label::Foreground : Label::Background;
  return l;
}

Connectivity to_connectivity(int c) {
  if (c == 4) return Connectivity::Four;
  if (c == 8) return Connectivity::Eight;
  throw Error(ErrorKind::InvalidParams, "connectivity must be 4 or 8");
}

SolveMethod to_method(const std::string& name) {
  for (SolveMethod m : {SolveMethod::MinCut, SolveMethod::Icm, SolveMethod::Oracle, SolveMethod::Naive})
    if (to_string(m) == name) return m;
  throw Error(ErrorKind::InvalidParams, "unknown solver '" + name + "'");
}

Selection to_selection(std::optional<std::pair<int, int>> click, std::optional<std::uint32_t> instance_id) {
  if (click.has_value() == instance_id.has_value())
    throw Error(ErrorKind::InvalidParams, "pass exactly one of click or instance_id");
  if (click) return Point{click->first, click->second};
  return InstanceId{*instance_id};
}

}  // namespace

PYBIND11_MODULE(_seamcut, m) {
  m.doc() = "Seam-aware blending of a stylized object instance into its photograph";

  static PyObject* error_type = PyErr_NewException("seamcut.SeamcutError", PyExc_RuntimeError, nullptr);
  m.add_object("SeamcutError", py::handle(error_type));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  m.def("load_image", [](const std::filesystem::path& p) { return from_image(load_image(p)); }, py::arg("path"));
  m.def(
      "save_image",
      [](const F64Array& img, const std::filesystem::path& p) { save_image(to_image(img), p, format_for_path(p)); },
      py::arg("image"), py::arg("path"));
  m.def("load_mask", [](const std::filesystem::path& p) { return from_mask(load_mask(p)); }, py::arg("path"));
  m.def(
      "save_mask",
      [](const U32Array& mask, const std::filesystem::path& p) { save_mask(to_mask(mask), p, format_for_path(p)); },
      py::arg("mask"), py::arg("path"));

  m.def(
      "stylize",
      [](const F64Array& img, int levels, double edge_strength, double edge_threshold) {
        return from_image(stylize(to_image(img), StylizeParams{levels, edge_strength, edge_threshold}));
      },
      py::arg("image"), py::arg("levels") = 4, py::arg("edge_strength") = 0.6, py::arg("edge_threshold") = 1.0);

  m.def(
      "select_instance",
      [](const U32Array& mask, std::optional<std::pair<int, int>> click, std::optional<std::uint32_t> instance_id) {
        return from_binary(resolve_selection(to_mask(mask), to_selection(click, instance_id)));
      },
      py::arg("mask"), py::kw_only(), py::arg("click") = py::none(), py::arg("instance_id") = py::none());

  m.def(
      "distance_transform",
      [](const BoolArray& seeds) {
        const DistanceField d = distance_transform(to_binary(seeds));
        F64Array out({static_cast<py::ssize_t>(d.height()), static_cast<py::ssize_t>(d.width())});
        std::copy(d.values().begin(), d.values().end(), out.mutable_data());
        return out;
      },
      py::arg("seeds"));

  py::enum_<PixelState>(m, "PixelState")
      .value("FIXED_BACKGROUND", PixelState::FixedBackground)
      .value("AMBIGUOUS", PixelState::Ambiguous)
      .value("FIXED_FOREGROUND", PixelState::FixedForeground);

  py::class_<TriMap>(m, "TriMap")
      .def_property_readonly("width", &TriMap::width)
      .def_property_readonly("height", &TriMap::height)
      .def_property_readonly("degenerate", &TriMap::degenerate)
      .def_property_readonly("ambiguous_pixels",
                             [](const TriMap& t) {
                               std::vector<std::pair<int, int>> out;
                               for (const Point& p : t.ambiguous_pixels()) out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def("at", &TriMap::at, py::arg("x"), py::arg("y"))
      .def("to_gray8", [](const TriMap& t) {
        py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(t.height()), static_cast<py::ssize_t>(t.width())});
        const auto g = t.to_gray8();
        std::copy(g.begin(), g.end(), out.mutable_data());
        return out;
      });

  m.def(
      "compute_band", [](const BoolArray& object, double radius) { return compute_band(to_binary(object), radius); },
      py::arg("object"), py::arg("radius"));

  py::class_<EnergyModel>(m, "EnergyModel")
      .def_property_readonly("size", &EnergyModel::size)
      .def_property_readonly("edge_count", [](const EnergyModel& e) { return e.edges().size(); })
      .def_property_readonly("lambda_", &EnergyModel::lambda)
      .def_property_readonly("unary",
                             [](const EnergyModel& e) {
                               F64Array out({static_cast<py::ssize_t>(e.size()), py::ssize_t{2}});
                               double* d = out.mutable_data();
                               for (const Unary& u : e.unary()) {
                                 *d++ = u.fg;
                                 *d++ = u.bg;
                               }
                               return out;
                             })
      .def("energy", [](const EnergyModel& e, const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>&
                                                 labels) { return total_energy(e, to_labeling(labels)); })
      .def("dump", [](const EnergyModel& e) {
        std::ostringstream out;
        write_energy_dump(e, out);
        return out.str();
      });

  m.def(
      "build_energy",
      [](const F64Array& original, const F64Array& stylized, const TriMap& trimap, double lambda, int connectivity) {
        return build_energy(to_image(original), to_image(stylized), trimap, lambda, to_connectivity(connectivity));
      },
      py::arg("original"), py::arg("stylized"), py::arg("trimap"), py::arg("lambda_") = 1.0,
      py::arg("connectivity") = 4);

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("labels", [](const SolveResult& r) { return labels_array(r.labeling); })
      .def_readonly("energy", &SolveResult::energy)
      .def_property_readonly("method", [](const SolveResult& r) { return std::string(to_string(r.method)); })
      .def_property_readonly("nodes", [](const SolveResult& r) { return r.stats.nodes; })
      .def_property_readonly("edges", [](const SolveResult& r) { return r.stats.edges; })
      .def_property_readonly("iterations", [](const SolveResult& r) { return r.stats.iterations; })
      .def("__repr__", [](const SolveResult& r) {
        return "SolveResult(method=" + std::string(to_string(r.method)) + ", energy=" + std::to_string(r.energy) + ")";
      });

  m.def("solve_mincut", &solve_mincut, py::arg("model"));
  m.def("solve_oracle", &solve_oracle, py::arg("model"));
  m.def(
      "solve_icm",
      [](const EnergyModel& model, const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& init,
         std::size_t max_sweeps) { return solve_icm(model, to_labeling(init), max_sweeps); },
      py::arg("model"), py::arg("init"), py::arg("max_sweeps") = 100);
  m.def(
      "solve_naive",
      [](const EnergyModel& model, const TriMap& trimap, const BoolArray& object) {
        return solve_naive(model, trimap, to_binary(object));
      },
      py::arg("model"), py::arg("trimap"), py::arg("object"));

  m.def(
      "composite",
      [](const F64Array& original, const F64Array& stylized, const TriMap& trimap,
         const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& labels) {
        return from_image(composite(to_image(original), to_image(stylized), trimap, to_labeling(labels)));
      },
      py::arg("original"), py::arg("stylized"), py::arg("trimap"), py::arg("labels"));

  m.def(
      "blend",
      [](const F64Array& original, const F64Array& stylized, const U32Array& mask,
         std::optional<std::pair<int, int>> click, std::optional<std::uint32_t> instance_id, double radius,
         double lambda, int connectivity, const std::string& solver, std::size_t icm_max_sweeps) {
        BlendConfig config;
        config.selection = to_selection(click, instance_id);
        config.radius = radius;
        config.lambda = lambda;
        config.connectivity = to_connectivity(connectivity);
        config.solver = to_method(solver);
        config.icm_max_sweeps = icm_max_sweeps;
        auto [out, result] = blend(to_image(original), to_image(stylized), to_mask(mask), config);
        return py::make_tuple(from_image(out), result);
      },
      py::arg("original"), py::arg("stylized"), py::arg("mask"), py::kw_only(), py::arg("click") = py::none(),
      py::arg("instance_id") = py::none(), py::arg("radius") = 5.0, py::arg("lambda_") = 1.0,
      py::arg("connectivity") = 4, py::arg("solver") = "mincut", py::arg("icm_max_sweeps") = 100);
}
