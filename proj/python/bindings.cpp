#include <pybind11/chrono.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "scpcs/core.hpp"
#include "scpcs/ingest.hpp"
#include "scpcs/oracle.hpp"
#include "scpcs/solver_exact.hpp"
#include "scpcs/solver_heur.hpp"
#include "scpcs/transform.hpp"

namespace py = pybind11;
using namespace scpcs;

namespace {

Solution to_solution(const std::vector<SubsetId>& ids) { return Solution(ids); }

}  // namespace

PYBIND11_MODULE(_scpcs, m) {
  m.doc() = "Set covering with conflicts on sets";

  auto data_error = py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", data_error.ptr());
  py::register_exception<LimitError>(m, "LimitError", PyExc_RuntimeError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

  py::class_<Conflict>(m, "Conflict")
      .def(py::init<SubsetId, SubsetId, Cost>(), py::arg("i"), py::arg("j"), py::arg("penalty"))
      .def_readwrite("i", &Conflict::i)
      .def_readwrite("j", &Conflict::j)
      .def_readwrite("penalty", &Conflict::penalty)
      .def("__repr__", [](const Conflict& c) {
        return "Conflict(" + std::to_string(c.i) + ", " + std::to_string(c.j) + ", " +
               std::to_string(c.penalty) + ")";
      });

  py::class_<RawScpInstance>(m, "RawScpInstance")
      .def_readonly("name", &RawScpInstance::name)
      .def_readonly("num_rows", &RawScpInstance::num_rows)
      .def_readonly("num_cols", &RawScpInstance::num_cols)
      .def_readonly("col_cost", &RawScpInstance::col_cost)
      .def_readonly("row_cover_lists", &RawScpInstance::row_cover_lists);

  py::class_<Instance>(m, "Instance")
      .def(py::init<std::string, std::size_t, std::vector<Cost>, std::vector<std::vector<ElementId>>,
                    std::vector<Conflict>, std::map<std::string, std::string>>(),
           py::arg("name"), py::arg("num_elements"), py::arg("costs"), py::arg("members"),
           py::arg("conflicts") = std::vector<Conflict>{},
           py::arg("metadata") = std::map<std::string, std::string>{})
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("num_elements", &Instance::num_elements)
      .def_property_readonly("num_subsets", &Instance::num_subsets)
      .def_property_readonly("costs", [](const Instance& i) {
        return std::vector<Cost>(i.costs().begin(), i.costs().end());
      })
      .def_property_readonly("members", &Instance::all_members)
      .def_property_readonly("conflicts", [](const Instance& i) {
        return std::vector<Conflict>(i.conflicts().begin(), i.conflicts().end());
      })
      .def_property_readonly("metadata", &Instance::metadata)
      .def("penalty", &Instance::penalty)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

  py::class_<ObjectiveBreakdown>(m, "ObjectiveBreakdown")
      .def_readonly("cover_cost", &ObjectiveBreakdown::cover_cost)
      .def_readonly("penalty_cost", &ObjectiveBreakdown::penalty_cost)
      .def_readonly("total", &ObjectiveBreakdown::total);

  m.def("validate_instance", [](const Instance& inst) {
    std::vector<std::string> out;
    for (const auto& v : validate_instance(inst)) out.push_back(v.message);
    return out;
  });
  m.def("is_cover", [](const Instance& inst, const std::vector<SubsetId>& ids) {
    return is_cover(inst, to_solution(ids));
  });
  m.def("evaluate", [](const Instance& inst, const std::vector<SubsetId>& ids) {
    return evaluate(inst, to_solution(ids));
  });

  m.def("parse_orlib", &parse_orlib, py::arg("text"), py::arg("name") = std::string{});
  m.def("load_orlib", &load_orlib);
  m.def("read_canonical", &read_canonical);
  m.def("write_canonical", &write_canonical);
  m.def("load_canonical", &load_canonical);

  m.def(
      "pipeline",
      [](const RawScpInstance& raw, std::int64_t kappa, const std::string& rounding,
         const std::string& basis) {
        TransformParams p;
        p.kappa = kappa;
        p.rounding = parse_gamma_rounding(rounding);
        p.basis = basis == "original" ? GammaBasis::kOriginal : GammaBasis::kMerged;
        return pipeline(raw, p);
      },
      py::arg("raw"), py::arg("kappa") = 1, py::arg("rounding") = "round-half-up",
      py::arg("basis") = "merged");

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("lower_bound", &SolveReport::lower_bound)
      .def_readonly("upper_bound", &SolveReport::upper_bound)
      .def_property_readonly("incumbent",
                             [](const SolveReport& r) -> std::optional<std::vector<SubsetId>> {
                               if (!r.incumbent) return std::nullopt;
                               return r.incumbent->ids();
                             })
      .def_property_readonly("status", [](const SolveReport& r) { return std::string(to_string(r.status)); })
      .def_readonly("nodes_explored", &SolveReport::nodes_explored)
      .def_property_readonly("time_to_best", [](const SolveReport& r) { return r.time_to_best.count(); })
      .def_property_readonly("time_total", [](const SolveReport& r) { return r.time_total.count(); })
      .def_readonly("uncoverable_element", &SolveReport::uncoverable_element);

  m.def(
      "solve",
      [](const Instance& inst, double time_limit, std::optional<std::uint64_t> node_limit,
         std::optional<Cost> initial_upper_bound) {
        SolveConfig cfg;
        cfg.time_limit = Seconds{time_limit};
        cfg.node_limit = node_limit;
        cfg.initial_upper_bound = initial_upper_bound;
        py::gil_scoped_release release;
        return solve(inst, cfg);
      },
      py::arg("instance"), py::arg("time_limit") = 3600.0, py::arg("node_limit") = py::none(),
      py::arg("initial_upper_bound") = py::none());
  m.def("verify_certificate", [](const Instance& inst, const SolveReport& r) {
    const auto check = verify_certificate(inst, r);
    return py::make_tuple(check.ok, check.discrepancy);
  });
  m.def("export_lp", &export_lp);

  m.def("greedy_construct", [](const Instance& inst) { return greedy_construct(inst).ids(); });
  m.def("local_search", [](const Instance& inst, const std::vector<SubsetId>& ids) {
    return local_search(inst, to_solution(ids)).ids();
  });
  m.def(
      "grasp",
      [](const Instance& inst, std::uint64_t iterations, double alpha, std::uint64_t seed, double time_limit) {
        GraspConfig cfg;
        cfg.iterations = iterations;
        cfg.rcl_alpha = alpha;
        cfg.seed = seed;
        cfg.time_limit = Seconds{time_limit};
        GraspResult r;
        {
          py::gil_scoped_release release;
          r = grasp(inst, cfg);
        }
        py::dict out;
        out["solution"] = r.best.ids();
        out["total"] = r.total;
        out["iteration_found"] = r.iteration_found;
        out["iterations_run"] = r.iterations_run;
        out["time_to_best"] = r.time_to_best.count();
        return out;
      },
      py::arg("instance"), py::arg("iterations") = 100, py::arg("alpha") = 0.1, py::arg("seed") = 1,
      py::arg("time_limit") = 3600.0);

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("optimum", &OracleResult::optimum)
      .def_property_readonly("witness", [](const OracleResult& r) { return r.witness.ids(); })
      .def_readonly("num_optima", &OracleResult::num_optima);
  m.def("brute_force_optimum", &brute_force_optimum, py::arg("instance"), py::arg("max_n") = 20,
        py::arg("threads") = 0);
}
