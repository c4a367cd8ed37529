#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "filtmult/commands.hpp"

namespace py = pybind11;
using namespace filtmult;

namespace {

RunConfig make_config(const std::string& command, const std::optional<std::vector<std::int64_t>>& schedule,
                      std::int64_t m_max, std::int64_t n_max, std::int64_t r_max, std::int64_t q_cap, int digits) {
  RunConfig c;
  c.command = command;
  c.schedule = schedule;
  c.m_max = m_max;
  c.n_max = n_max;
  c.r_max = r_max;
  c.q_cap = q_cap;
  c.digits = digits;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiplicities and Minkowski inequalities for monomial filtrations";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&] { return py::exception<Error>(m, "FiltmultError", PyExc_ValueError); });
  // args = (message, CLI exit code)
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.get_stored().ptr(), py::make_tuple(e.what(), exit_code(e.kind())).ptr());
    }
  });

  m.def("commands", &command_names, "Names accepted by run()");

  m.def(
      "run",
      [](const std::string& command, const std::string& input_json,
         const std::optional<std::vector<std::int64_t>>& schedule, std::int64_t m_max, std::int64_t n_max,
         std::int64_t r_max, std::int64_t q_cap, int digits) {
        RunConfig c = make_config(command, schedule, m_max, n_max, r_max, q_cap, digits);
        Json input = input_json.empty() ? Json::object() : parse_json(input_json);
        Json report;
        {
          py::gil_scoped_release release;
          report = run_command(c, input);
        }
        return report.dump();
      },
      py::arg("command"), py::arg("input_json") = "", py::arg("schedule") = py::none(), py::arg("m_max") = 20,
      py::arg("n_max") = 50, py::arg("r_max") = 4, py::arg("q_cap") = 1000, py::arg("digits") = 12,
      "Runs a command on a JSON document and returns the report as a JSON string.");

  m.def(
      "render",
      [](const std::string& command, const std::string& report_json, const std::string& format, int digits) {
        return render(command, parse_json(report_json), parse_format(format), digits);
      },
      py::arg("command"), py::arg("report_json"), py::arg("format") = "table", py::arg("digits") = 12);

  m.def(
      "exact_multiplicity",
      [](const std::string& filtration_json) {
        return to_display_string(exact_multiplicity(filtration_from_json(parse_json(filtration_json))));
      },
      py::arg("filtration_json"), "d! times the covolume of the body, as an exact string.");

  m.def(
      "colength",
      [](const std::string& filtration_json, std::int64_t n) {
        return filtration_from_json(parse_json(filtration_json)).colength(n);
      },
      py::arg("filtration_json"), py::arg("n"));
}
