#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "hle/chaincx.hpp"
#include "hle/commands.hpp"
#include "hle/dsl.hpp"
#include "hle/errors.hpp"
#include "hle/verify.hpp"

namespace py = pybind11;

namespace {

py::object json_loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

py::dict report_dict(const hle::Report& r) { return json_loads(r.json.dump()); }

hle::Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return hle::parse_rational(h.cast<std::string>());
  return hle::Rational(h.cast<long>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Homotopy limits, ends and Kan extensions over finite models";

  static py::exception<hle::Error> engine_error(m, "EngineError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const hle::Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(engine_error)(e.kind() + ": " + e.what());
      err.attr("kind") = e.kind();
      PyErr_SetObject(engine_error.ptr(), err.ptr());
    }
  });

  m.def(
      "run",
      [](const std::string& source, const std::string& command, std::uint64_t seed, std::optional<int> depth,
         std::optional<unsigned> threads) {
        hle::Report r;
        {
          py::gil_scoped_release release;
          const hle::Workspace ws = hle::parse_workspace(source);
          hle::CommandOptions opt;
          opt.seed = seed;
          opt.depth = depth;
          opt.threads = threads.value_or(hle::default_thread_count());
          r = hle::run_command(ws, command, opt);
        }
        return report_dict(r);
      },
      py::arg("source"), py::arg("command"), py::arg("seed") = 0, py::arg("depth") = py::none(),
      py::arg("threads") = py::none(),
      "Parse a workspace and run one command; returns the JSON report as a dict.");

  m.def(
      "bindings",
      [](const std::string& source) {
        const hle::Workspace ws = hle::parse_workspace(source);
        py::dict out;
        for (const auto& name : ws.names()) out[py::str(name)] = hle::value_kind(ws.at(name).value);
        return out;
      },
      py::arg("source"), "Names and kinds of the bindings of a workspace.");

  m.def("canonical", [](const std::string& source) { return hle::print_module(hle::parse_module(source)); },
        py::arg("source"), "The canonical printed form of a workspace source.");

  m.def(
      "betti",
      [](int lo, const std::vector<std::size_t>& dims, const std::vector<std::vector<std::vector<py::object>>>& diffs) {
        std::vector<hle::RationalMatrix> mats;
        for (std::size_t i = 0; i < diffs.size(); ++i) {
          const std::size_t rows = dims.at(i), cols = dims.at(i + 1);
          hle::RationalMatrix a(rows, cols);
          if (diffs[i].size() != rows) throw hle::ShapeMismatch("differential " + std::to_string(i) + " has wrong row count");
          for (std::size_t r = 0; r < rows; ++r) {
            if (diffs[i][r].size() != cols) throw hle::ShapeMismatch("differential " + std::to_string(i) + " has wrong column count");
            for (std::size_t c = 0; c < cols; ++c) a(r, c) = to_rational(diffs[i][r][c]);
          }
          mats.push_back(std::move(a));
        }
        return hle::betti_numbers(hle::ChainComplex(lo, dims, std::move(mats)));
      },
      py::arg("lo"), py::arg("dims"), py::arg("diffs"),
      "Betti numbers of a complex: dims[i] is degree lo+i, diffs[i] is d_{lo+i+1} (entries int or 'p/q').");

  m.def("suite_names", &hle::suite_names, "Verification suites in criterion order.");

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, int depth, std::optional<unsigned> threads) {
        std::vector<hle::SuiteResult> results;
        {
          py::gil_scoped_release release;
          hle::VerifyOptions opt;
          opt.seed = seed;
          opt.depth = depth;
          opt.threads = threads.value_or(hle::default_thread_count());
          results = hle::run_verify(suite, opt);
        }
        py::list out;
        for (const auto& s : results) {
          py::dict d;
          d["name"] = s.name;
          d["criterion"] = s.criterion;
          d["passed"] = s.passed();
          d["cases"] = s.cases.size();
          d["verdict"] = s.pass() ? "pass" : "fail";
          py::list failures;
          for (const auto& c : s.cases)
            if (!c.pass) failures.append(py::make_tuple(c.label, c.detail));
          d["failures"] = failures;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = 0, py::arg("depth") = 3, py::arg("threads") = py::none(),
      "Run a verification suite (or 'all').");
}
