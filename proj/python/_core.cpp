#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "smotelab/dataset.hpp"
#include "smotelab/distributions.hpp"
#include "smotelab/error.hpp"
#include "smotelab/metrics.hpp"
#include "smotelab/run_config.hpp"
#include "smotelab/sampling.hpp"

namespace py = pybind11;
using namespace smotelab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// 1-D arrays are n points of dimension 1; 2-D arrays are (n, dim).
Sample to_sample(const Array& a) {
  if (a.ndim() == 1) return Sample::from_values({a.data(), a.data() + a.shape(0)});
  if (a.ndim() == 2) {
    return Sample({a.data(), a.data() + a.size()}, static_cast<std::size_t>(a.shape(1)));
  }
  throw Error(ErrorCode::InvalidSample, "expected a 1-D or 2-D array");
}

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw Error(ErrorCode::InvalidSample, "expected a 1-D array");
  return {a.data(), a.data() + a.shape(0)};
}

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array to_array(const Sample& s, bool flatten) {
  if (flatten) return to_array(s.coords());
  Array out({static_cast<py::ssize_t>(s.size()), static_cast<py::ssize_t>(s.dim())});
  std::copy(s.coords().begin(), s.coords().end(), out.mutable_data());
  return out;
}

nlohmann::json parse_config(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
}

RunConfig checked_config(const std::string& text) {
  auto v = validate_config(parse_config(text));
  if (!v.ok()) throw_config_issues(v.issues);
  return *v.config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SMOTE-k / SMOTE-K sampling, distances and convergence experiments";

  py::register_exception<Error>(m, "SmoteLabError", PyExc_ValueError);

  py::class_<DistributionSpec>(m, "DistributionSpec")
      .def_static("uniform", &DistributionSpec::uniform, py::arg("a") = 0.0, py::arg("b") = 1.0)
      .def_static("gaussian", &DistributionSpec::gaussian, py::arg("mean") = 0.0,
                  py::arg("stddev") = 1.0)
      .def_static("exponential", &DistributionSpec::exponential, py::arg("rate") = 1.0)
      .def_property_readonly("kind", [](const DistributionSpec& s) { return std::string(to_string(s.kind())); })
      .def_property_readonly("params", &DistributionSpec::params)
      .def("pdf", &DistributionSpec::pdf)
      .def("cdf", &DistributionSpec::cdf)
      .def("quantile", &DistributionSpec::quantile)
      .def("__repr__", &DistributionSpec::describe)
      .def(py::self == py::self);

  m.def(
      "sample_iid",
      [](const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
        return to_array(sample_iid(spec, n, seed));
      },
      py::arg("spec"), py::arg("n"), py::arg("seed") = 0);

  m.def(
      "neighbor_ordering",
      [](const Array& sample, std::size_t base_index) {
        const auto o = neighbor_ordering(to_sample(sample), base_index);
        return py::make_tuple(o.ordered_indices, to_array(o.distances));
      },
      py::arg("sample"), py::arg("base_index"),
      "Co-sample indices by ascending distance (ties by index) and their distances.");

  m.def(
      "generate_batch",
      [](const Array& sample, std::size_t k, std::size_t count, std::uint64_t seed,
         const std::string& variant, unsigned threads) {
        const Sample base = to_sample(sample);
        Sample out;
        {
          py::gil_scoped_release release;
          out = generate_batch(base, {k, parse_variant(variant), seed}, count, threads);
        }
        return to_array(out, sample.ndim() == 1);
      },
      py::arg("sample"), py::arg("k"), py::arg("count"), py::arg("seed") = 0,
      py::arg("variant") = "fixed", py::arg("threads") = 1,
      "SMOTE draws: variant 'fixed' uses the rank-k neighbor, 'pool' a uniform pick of the k nearest.");

  m.def("ks_one_sample", [](const Array& a, const DistributionSpec& spec) {
    return ks_one_sample(to_vector(a), spec).value;
  });
  m.def("ks_two_sample", [](const Array& a, const Array& b) {
    return ks_two_sample(to_vector(a), to_vector(b)).value;
  });
  m.def("wasserstein1", [](const Array& a, const Array& b) {
    return wasserstein1(to_vector(a), to_vector(b)).value;
  });
  m.def(
      "kl_histogram",
      [](const Array& z, const DistributionSpec& spec, std::size_t n_bins) {
        return kl_histogram(to_vector(z), spec, n_bins).value;
      },
      py::arg("z"), py::arg("spec"), py::arg("n_bins") = kDefaultKlBins);
  m.def("silverman_bandwidth", [](const Array& a) { return silverman_bandwidth(to_vector(a)); });
  m.def(
      "kde_density",
      [](const Array& sample, const Array& grid, std::optional<double> bandwidth) {
        const auto s = to_vector(sample);
        const auto g = to_vector(grid);
        return to_array(bandwidth ? kde_density(s, g, *bandwidth) : kde_density(s, g));
      },
      py::arg("sample"), py::arg("grid"), py::arg("bandwidth") = py::none());

  m.def(
      "load_column",
      [](const std::string& path, std::variant<std::size_t, std::string> column,
         std::optional<double> missing_sentinel, char delimiter, char decimal) {
        DatasetRef ref;
        ref.path = path;
        if (const auto* idx = std::get_if<std::size_t>(&column)) {
          ref.column = *idx;
        } else {
          ref.column = std::get<std::string>(column);
        }
        ref.missing_sentinel = missing_sentinel;
        ref.delimiter = delimiter;
        ref.decimal = decimal;
        const auto col = load_column(ref);
        return py::make_tuple(to_array(col.values), col.dropped);
      },
      py::arg("path"), py::arg("column"), py::arg("missing_sentinel") = py::none(),
      py::arg("delimiter") = ',', py::arg("decimal") = '.',
      "Returns (values, dropped_count).");
  m.def("normalize_minmax", [](const Array& a) {
    const auto n = normalize_minmax(to_vector(a));
    return py::make_tuple(to_array(n.values), n.min, n.max);
  });

  m.def(
      "validate_config",
      [](const std::string& text) {
        const auto v = validate_config(parse_config(text));
        std::vector<std::pair<std::string, std::string>> issues;
        for (const auto& i : v.issues) issues.emplace_back(i.field, i.message);
        return py::make_tuple(v.ok() ? to_json(*v.config).dump() : std::string(), issues);
      },
      py::arg("config_json"),
      "Returns (normalized_json, issues); normalized_json is empty when issues exist.");
  m.def(
      "run_sweep",
      [](const std::string& text) {
        const RunConfig cfg = checked_config(text);
        const auto* sweep = std::get_if<SweepConfig>(&cfg.params);
        if (!sweep) throw Error(ErrorCode::ConfigError, "command is not a sweep");
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = run_sweep(*sweep);
        }
        py::list rows;
        for (const auto& row : r.rows) {
          rows.append(py::dict(py::arg("n") = row.n, py::arg("k") = row.k, py::arg("mean") = row.mean,
                               py::arg("std_error") = row.std_error, py::arg("trials") = row.trials));
        }
        return rows;
      },
      py::arg("config_json"), "Runs a ks-, w1- or kl-sweep config and returns its rows.");
  m.def(
      "execute",
      [](const std::string& text, const std::filesystem::path& out_dir) {
        const RunConfig cfg = checked_config(text);
        std::ostringstream summary;
        {
          py::gil_scoped_release release;
          execute(cfg, out_dir, summary);
        }
        return summary.str();
      },
      py::arg("config_json"), py::arg("out_dir"),
      "Runs any command config, writing its CSV, SVG and provenance.json; returns the summary.");
}
