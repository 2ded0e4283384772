#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sok/cli.hpp"
#include "sok/error.hpp"
#include "sok/probe/probe.hpp"
#include "sok/rinfty/rinfty.hpp"

#include <sstream>

namespace py = pybind11;
using namespace sok;

namespace {

nlohmann::json parse(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw sok::Error(ErrorCode::ParseError, e.what());
  }
}

ExtensionSpec spec_of(const std::string& text) { return extension_spec_from_json(parse(text)); }

std::string dump(const nlohmann::json& j) { return j.dump(); }

RatVector rationals(const std::vector<std::string>& xs) {
  RatVector v;
  for (const auto& x : xs) v.push_back(parse_rational(x));
  return v;
}

}  // namespace

PYBIND11_MODULE(_sok, m) {
  m.doc() = "Exact BNS-type invariants of finite extensions (JSON in, JSON out).";

  static py::exception<sok::Error> error(m, "SokError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sok::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(std::string(e.what()));
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("abelianize", [](const std::string& presentation) {
    return dump(to_json(abelianization(presentation_from_json(parse(presentation)))));
  });
  m.def("extension_presentation", [](const std::string& spec) {
    return dump(to_json(Extension(spec_of(spec)).presentation()));
  });
  m.def("fix", [](const std::string& spec) { return dump(to_json(fix_subspace(spec_of(spec)))); });
  m.def("lookup", [](const std::string& id, int n) { return dump(to_json(lookup_known(id, n))); });
  m.def("sigma", [](const std::string& spec, int n) {
    auto s = spec_of(spec);
    return dump(to_json(sigma_finite_extension(s, h_record(s, n))));
  });
  m.def("bounds", [](const std::string& spec, int n) {
    auto s = spec_of(spec);
    return dump(to_json(omega_bounds_finite_extension(s, h_record(s, n))));
  });
  m.def("omega", [](const std::string& spec, int n) {
    auto s = spec_of(spec);
    return dump(to_json(omega_from_sigma_record(sigma_finite_extension(s, h_record(s, n)))));
  });
  m.def("rinfty", [](const std::string& spec, int n) -> std::optional<std::string> {
    auto s = spec_of(spec);
    auto cert = rinfty_finite_ext(s, h_record(s, n), n);
    if (!cert) return std::nullopt;
    return dump(to_json(*cert));
  });
  m.def("reidemeister", [](const std::vector<std::vector<long long>>& rows) -> std::optional<std::string> {
    IntegerMatrix a(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw sok::Error(ErrorCode::DimensionMismatch, "matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) a(i, j) = rows[i][j];
    }
    auto r = reidemeister_abelian(a);
    if (!r) return std::nullopt;
    return r->str();
  });
  m.def(
      "probe",
      [](const std::string& model_id, const std::vector<std::string>& chi, std::size_t radius,
         const std::vector<std::string>& grid, const std::string& kind) {
        auto model = model_for_catalog_id(model_id);
        auto c = rationals(chi);
        if (kind == "sigma") return dump(to_json(sigma_probe(*model, c, radius, rationals(grid))));
        if (kind == "omega") return dump(to_json(omega_probe(*model, c, radius, rationals(grid))));
        throw sok::Error(ErrorCode::InvalidSpec, "probe kind must be sigma or omega");
      },
      py::arg("model"), py::arg("chi"), py::arg("radius") = 6,
      py::arg("grid") = std::vector<std::string>{"0", "1", "2", "3"}, py::arg("kind") = "sigma");
  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
