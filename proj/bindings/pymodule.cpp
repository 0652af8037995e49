// Python bindings for the klazar core. Counts come back as Python ints,
// partitions as SetPartition objects, everything else as plain lists/dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "klazar/cache.hpp"
#include "klazar/correspond.hpp"
#include "klazar/enumerate.hpp"
#include "klazar/error.hpp"
#include "klazar/matrix.hpp"
#include "klazar/montecarlo.hpp"
#include "klazar/partition.hpp"
#include "klazar/stats.hpp"

namespace py = pybind11;
using namespace klazar;

namespace {

py::int_ to_py_int(const BigInt& value) {
  PyObject* obj = PyLong_FromString(to_decimal(value).c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

PermTuple tuple_from_lists(const std::vector<std::vector<int>>& perms) {
  std::vector<Permutation> out;
  out.reserve(perms.size());
  for (const auto& images : perms) out.emplace_back(images);
  return PermTuple(std::move(out));
}

std::vector<std::vector<int>> tuple_to_lists(const PermTuple& t) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < t.arity(); ++i) out.push_back(t[i].images());
  return out;
}

DMatrix matrix_from_dict(const py::dict& spec) {
  return make_dmatrix(spec["dims"].cast<std::vector<int>>(),
                      spec["ones"].cast<std::vector<std::vector<int>>>());
}

py::dict matrix_to_dict(const DMatrix& m) {
  py::dict out;
  out["dims"] = m.dims;
  out["ones"] = m.ones;
  return out;
}

PointCloud cloud_from_dict(const py::dict& spec) {
  return make_point_cloud(
      spec["k"].cast<int>(),
      spec["points"].cast<std::vector<std::vector<double>>>(),
      spec.contains("seed") ? spec["seed"].cast<std::uint64_t>() : 0);
}

py::dict cloud_to_dict(const PointCloud& cloud) {
  py::dict out;
  out["k"] = cloud.k;
  out["points"] = cloud.points;
  out["seed"] = cloud.seed;
  return out;
}

py::dict count_report_to_dict(const CountReport& report) {
  py::dict out;
  out["pattern"] = report.pattern;
  out["n"] = report.n;
  if (report.m) out["m"] = *report.m;
  out["count"] = to_py_int(report.count);
  out["method"] = report.method;
  out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "set partition pattern avoidance (Klazar containment) toolbox";

  py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
  py::register_exception<guard_error>(m, "GuardError", PyExc_RuntimeError);

  py::class_<SetPartition>(m, "SetPartition")
      .def(py::init([](const std::vector<std::vector<int>>& blocks) {
             return SetPartition::from_labeled_blocks(blocks);
           }),
           py::arg("blocks"))
      .def_static(
          "parse",
          [](const std::string& text, bool strict) {
            return parse_partition(text, strict);
          },
          py::arg("text"), py::arg("strict") = false)
      .def_property_readonly("n", &SetPartition::n)
      .def_property_readonly("blocks", &SetPartition::labeled_blocks)
      .def("canonical", &SetPartition::canonical)
      .def("__str__", [](const SetPartition& p) { return format_partition(p); })
      .def("__repr__",
           [](const SetPartition& p) {
             return "SetPartition('" + format_partition(p) + "')";
           })
      .def("__eq__", [](const SetPartition& a,
                        const SetPartition& b) { return a == b; })
      .def("__hash__", [](const SetPartition& p) {
        return py::hash(py::str(format_partition(p)));
      });

  m.def(
      "standardize",
      [](const std::vector<std::vector<int>>& blocks) {
        return standardize(blocks);
      },
      py::arg("blocks"));
  m.def(
      "restrict",
      [](const SetPartition& host, const std::vector<int>& subset) {
        return restrict_to(host, subset);
      },
      py::arg("host"), py::arg("subset"));
  m.def(
      "contains",
      [](const SetPartition& host,
         const SetPartition& pattern) -> py::object {
        const auto w = contains(host, pattern);
        if (!w) return py::none();
        return py::cast(w->positions);
      },
      py::arg("host"), py::arg("pattern"),
      "Witness positions (lexicographically least) or None.");
  m.def("rank", [](const SetPartition& p) { return rank(p); });
  m.def("is_layered", [](const SetPartition& p) { return is_layered(p); });

  m.def("thickness", [](const SetPartition& p) {
    const auto th = thickness(p);
    py::dict out;
    out["value"] = th.value;
    out["certificate"] = th.certificate;
    return out;
  });
  m.def("permutability", [](const SetPartition& p) {
    const auto pm = permutability(p);
    py::dict out;
    out["value"] = pm.value;
    out["cut_points"] = pm.split.cut_points;
    out["split"] = split_intervals(pm.split, p);
    return out;
  });
  m.def("thickness_oracle",
        [](const SetPartition& p) { return thickness_oracle(p); });
  m.def(
      "permutability_oracle",
      [](const SetPartition& p, int k_max, bool override_guards) -> py::object {
        const auto v = permutability_oracle(p, k_max, override_guards);
        if (!v) return py::none();
        return py::int_(*v);
      },
      py::arg("p"), py::arg("k_max"), py::arg("override_guards") = false);

  m.def(
      "build_correspondent",
      [](const std::vector<std::vector<int>>& perms) {
        return build_correspondent(tuple_from_lists(perms));
      },
      py::arg("perms"));
  m.def(
      "as_tuple",
      [](const SetPartition& p) -> py::object {
        const auto t = as_tuple(p);
        if (!t) return py::none();
        return py::cast(tuple_to_lists(*t));
      },
      py::arg("p"));
  m.def(
      "parallel_contains",
      [](const std::vector<std::vector<int>>& host,
         const std::vector<std::vector<int>>& pattern) -> py::object {
        const auto w =
            parallel_contains(tuple_from_lists(host), tuple_from_lists(pattern));
        if (!w) return py::none();
        return py::cast(*w);
      },
      py::arg("host"), py::arg("pattern"));
  m.def(
      "split_decompose",
      [](const SetPartition& p) {
        const auto d = split_decompose(p);
        py::dict out;
        out["left"] = d.left;
        out["right"] = d.right;
        out["matched_left"] = d.matched_left;
        out["matched_right"] = d.matched_right;
        out["matching"] = d.matching.images();
        return out;
      },
      py::arg("p"));

  m.def(
      "count_avoiders",
      [](const SetPartition& pattern, int n, std::optional<int> m,
         const std::string& method, int workers, bool override_guards) {
        CountOptions opts;
        opts.method = method;
        opts.workers = workers;
        opts.override_guards = override_guards;
        return count_report_to_dict(
            m ? count_avoiders_by_blocks(pattern, n, *m, opts)
              : count_avoiders(pattern, n, opts));
      },
      py::arg("pattern"), py::arg("n"), py::arg("m") = py::none(),
      py::arg("method") = "pruned", py::arg("workers") = 1,
      py::arg("override_guards") = false);
  m.def(
      "count_parallel_avoiders",
      [](const std::vector<std::vector<int>>& pattern, int n,
         bool override_budget) {
        TupleCountOptions opts;
        opts.override_budget = override_budget;
        return count_report_to_dict(
            count_parallel_avoiders(tuple_from_lists(pattern), n, opts));
      },
      py::arg("pattern"), py::arg("n"), py::arg("override_budget") = false);
  m.def("strip_singletons",
        [](const SetPartition& p) { return strip_singletons(p); });
  m.def(
      "lowerbound_construction",
      [](const SetPartition& pattern, int n, bool override_guards) {
        ConstructionOptions opts;
        opts.override_guards = override_guards;
        return lowerbound_construction(pattern, n, opts);
      },
      py::arg("pattern"), py::arg("n"), py::arg("override_guards") = false);
  m.def(
      "exponent_table",
      [](const SetPartition& pattern, int n_max, int workers) {
        CountOptions opts;
        opts.workers = workers;
        const auto table = exponent_table(pattern, n_max, opts);
        py::list rows;
        for (const auto& row : table.rows) {
          py::dict r;
          r["n"] = row.n;
          r["count"] = to_py_int(row.count);
          r["ratio"] = row.ratio;
          r["lower_bound_ratio"] = row.lower_bound_ratio;
          rows.append(std::move(r));
        }
        py::dict out;
        out["pm"] = table.pm;
        out["fitted_c1"] = table.fitted_c1;
        out["rows"] = rows;
        return out;
      },
      py::arg("pattern"), py::arg("n_max"), py::arg("workers") = 1);

  m.def(
      "build_perm_matrix",
      [](const std::vector<std::vector<int>>& perms) {
        return matrix_to_dict(build_perm_matrix(tuple_from_lists(perms)));
      },
      py::arg("perms"));
  m.def(
      "matrix_contains",
      [](const py::dict& host, const py::dict& pattern) {
        return matrix_contains(matrix_from_dict(host),
                               matrix_from_dict(pattern));
      },
      py::arg("host"), py::arg("pattern"));
  m.def(
      "max_ones_avoiding",
      [](const py::dict& pattern, int r, bool override_guards) {
        return max_ones_avoiding(matrix_from_dict(pattern), r,
                                 MatrixGuardOptions{override_guards});
      },
      py::arg("pattern"), py::arg("r"), py::arg("override_guards") = false);
  m.def(
      "count_avoiding_matrices",
      [](const py::dict& pattern, int r, bool override_guards) {
        return to_py_int(count_avoiding_matrices(
            matrix_from_dict(pattern), r, MatrixGuardOptions{override_guards}));
      },
      py::arg("pattern"), py::arg("r"), py::arg("override_guards") = false);
  m.def(
      "grid_matrix",
      [](const py::dict& cloud, int r) {
        return matrix_to_dict(grid_matrix(cloud_from_dict(cloud), r));
      },
      py::arg("cloud"), py::arg("r"));

  m.def(
      "sample_points",
      [](int n, int k, std::uint64_t seed) {
        return cloud_to_dict(sample_points(n, k, seed));
      },
      py::arg("n"), py::arg("k"), py::arg("seed"));
  m.def(
      "tuple_from_points",
      [](const py::dict& cloud) {
        return tuple_to_lists(tuple_from_points(cloud_from_dict(cloud)));
      },
      py::arg("cloud"));
  m.def(
      "antichain_check",
      [](const py::dict& cloud) { return antichain_check(cloud_from_dict(cloud)); },
      py::arg("cloud"));
  m.def(
      "estimate_qk",
      [](int n, int k, std::int64_t trials, std::uint64_t seed) {
        const auto est = estimate_qk(n, k, trials, seed);
        py::dict out;
        out["trials"] = est.trials;
        out["successes"] = est.successes;
        out["estimate"] = est.estimate;
        out["stderr"] = est.stderr_;
        return out;
      },
      py::arg("n"), py::arg("k"), py::arg("trials"), py::arg("seed"));
  m.def(
      "grid_implication_check",
      [](const py::dict& cloud, const std::vector<std::vector<int>>& pattern,
         int r) {
        switch (grid_implication_check(cloud_from_dict(cloud),
                                       tuple_from_lists(pattern), r)) {
          case GridCheckVerdict::violation: return "violation";
          case GridCheckVerdict::converse_gap: return "converse_gap";
          case GridCheckVerdict::consistent: break;
        }
        return "consistent";
      },
      py::arg("cloud"), py::arg("pattern"), py::arg("r"));
  m.def(
      "run_mc",
      [](int n, int k, std::int64_t trials, std::uint64_t seed,
         std::optional<int> r,
         std::optional<std::vector<std::vector<int>>> pattern) {
        McOptions opts;
        opts.r = r;
        if (pattern) opts.pattern = tuple_from_lists(*pattern);
        const auto rep = run_mc(n, k, trials, seed, opts);
        py::dict out;
        out["n"] = rep.n;
        out["k"] = rep.k;
        out["trials"] = rep.trials;
        out["seed"] = rep.seed;
        out["successes"] = rep.successes;
        out["estimate"] = rep.estimate;
        out["stderr"] = rep.stderr_;
        out["violations"] = rep.violations;
        out["converse_gaps"] = rep.converse_gaps;
        if (rep.grid_checked) out["r"] = rep.r;
        return out;
      },
      py::arg("n"), py::arg("k"), py::arg("trials"), py::arg("seed"),
      py::arg("r") = py::none(), py::arg("pattern") = py::none());

  m.attr("engine_version") = std::string(engine_version);
}
