#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ficsthresh/harness.hpp"
#include "ficsthresh/image.hpp"
#include "ficsthresh/objective.hpp"
#include "ficsthresh/optimizer.hpp"
#include "ficsthresh/rng.hpp"
#include "ficsthresh/segmetrics.hpp"
#include "ficsthresh/stats.hpp"

namespace py = pybind11;
using namespace fics;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multilevel Otsu thresholding optimized by cuckoo search variants";

    py::class_<GrayImage>(m, "GrayImage")
        .def(py::init<>())
        .def(py::init([](int width, int height, const std::vector<int>& pixels) {
                 GrayImage img;
                 img.width = width;
                 img.height = height;
                 img.pixels.reserve(pixels.size());
                 for (const int v : pixels) {
                     if (v < 0 || v > 255) throw std::invalid_argument("pixel value out of [0, 255]");
                     img.pixels.push_back(static_cast<std::uint8_t>(v));
                 }
                 validate(img);
                 return img;
             }),
             py::arg("width"), py::arg("height"), py::arg("pixels"))
        .def_readonly("width", &GrayImage::width)
        .def_readonly("height", &GrayImage::height)
        .def_property_readonly("pixels",
                               [](const GrayImage& img) {
                                   return std::vector<int>(img.pixels.begin(), img.pixels.end());
                               })
        .def("__repr__", [](const GrayImage& img) {
            return "GrayImage(" + std::to_string(img.width) + "x" + std::to_string(img.height) + ")";
        });

    py::class_<Histogram>(m, "Histogram")
        .def_property_readonly("counts",
                               [](const Histogram& h) {
                                   return std::vector<std::int64_t>(h.counts.begin(), h.counts.end());
                               })
        .def_readonly("total", &Histogram::total);

    m.def("load_pgm", &load_pgm, py::arg("path"));
    m.def("save_pgm", &save_pgm, py::arg("image"), py::arg("path"));
    m.def("compute_histogram", &compute_histogram, py::arg("image"));
    m.def("histogram_from_counts", [](const std::vector<std::int64_t>& counts) {
        if (counts.size() != 256) throw std::invalid_argument("need exactly 256 counts");
        Histogram h;
        for (std::size_t i = 0; i < 256; ++i) {
            if (counts[i] < 0) throw std::invalid_argument("counts must be non-negative");
            h.counts[i] = counts[i];
            h.total += counts[i];
        }
        if (h.total <= 0) throw std::invalid_argument("histogram total must be positive");
        return h;
    });

    py::class_<ObjectiveContext>(m, "ObjectiveContext")
        .def_readonly("cum_count", &ObjectiveContext::cum_count)
        .def_readonly("cum_moment", &ObjectiveContext::cum_moment)
        .def_readonly("total_mean", &ObjectiveContext::total_mean);

    m.def("build_context", &build_context, py::arg("histogram"));
    m.def("decode_position", [](const std::vector<double>& pos) { return decode_position(pos); },
          py::arg("position"));
    m.def("otsu_value",
          [](const ObjectiveContext& ctx, const ThresholdVector& t) { return otsu_value(ctx, t); },
          py::arg("context"), py::arg("thresholds"));
    m.def("exhaustive_search", &exhaustive_search, py::arg("context"), py::arg("m"));

    py::enum_<Algorithm>(m, "Algorithm")
        .value("CS", Algorithm::CS)
        .value("FICS", Algorithm::FICS)
        .value("FIPSO", Algorithm::FIPSO);
    m.def("algorithm_from_string", &algorithm_from_string, py::arg("name"));

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", py::overload_cast<>(&RngStream::uniform))
        .def("normal", &RngStream::normal);

    m.def("mantegna_sigma_u", &mantegna_sigma_u, py::arg("lambda_"));
    m.def("levy_step", &levy_step, py::arg("rng"), py::arg("lambda_"), py::arg("dim"));
    m.def("ring_neighbors", &ring_neighbors, py::arg("index"), py::arg("population_size"),
          py::arg("half_width"));

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("algorithm", &OptimizerConfig::algorithm)
        .def_readwrite("population_size", &OptimizerConfig::population_size)
        .def_readwrite("dim", &OptimizerConfig::dim)
        .def_readwrite("pa", &OptimizerConfig::pa)
        .def_readwrite("lambda_", &OptimizerConfig::lambda)
        .def_readwrite("alpha", &OptimizerConfig::alpha)
        .def_readwrite("neighbors", &OptimizerConfig::neighbors)
        .def_readwrite("max_evaluations", &OptimizerConfig::max_evaluations)
        .def_readwrite("inertia_start", &OptimizerConfig::inertia_start)
        .def_readwrite("inertia_end", &OptimizerConfig::inertia_end)
        .def_readwrite("acceleration", &OptimizerConfig::acceleration)
        .def_readwrite("seed", &OptimizerConfig::seed);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("best_fitness", &RunRecord::best_fitness)
        .def_readonly("best_thresholds", &RunRecord::best_thresholds)
        .def_readonly("evaluations_used", &RunRecord::evaluations_used)
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("trajectory", &RunRecord::trajectory);

    m.def("default_config", &default_config, py::arg("algorithm"), py::arg("m"));
    m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("image_index"), py::arg("m"),
          py::arg("algorithm_index"), py::arg("run_index"));
    m.def("run", &run, py::arg("config"), py::arg("context"),
          py::call_guard<py::gil_scoped_release>());

    m.def("segment_image", &segment_image, py::arg("image"), py::arg("thresholds"), py::arg("context"));

    py::class_<PsnrResult>(m, "PsnrResult")
        .def_readonly("mse", &PsnrResult::mse)
        .def_readonly("psnr", &PsnrResult::psnr)
        .def_readonly("infinite", &PsnrResult::infinite);
    m.def("psnr", &psnr, py::arg("x"), py::arg("y"));
    m.def("ssim", &ssim, py::arg("x"), py::arg("y"));

    py::class_<SampleSummary>(m, "SampleSummary")
        .def_readonly("mean", &SampleSummary::mean)
        .def_readonly("std", &SampleSummary::std)
        .def_readonly("n", &SampleSummary::n);
    m.def("summarize", [](const std::vector<double>& xs) { return summarize(xs); },
          py::arg("samples"));

    py::class_<PairwiseVerdict>(m, "PairwiseVerdict")
        .def_property_readonly("h",
                               [](const PairwiseVerdict& v) { return std::string(verdict_symbol(v.h)); })
        .def_readonly("p_value", &PairwiseVerdict::p_value);
    m.def("wilcoxon_rank_sum",
          [](const std::vector<double>& a, const std::vector<double>& b, double alpha, bool maximize) {
              return wilcoxon_rank_sum(a, b, alpha, maximize);
          },
          py::arg("a"), py::arg("b"), py::arg("alpha") = 0.05, py::arg("maximize") = true);

    py::class_<FriedmanResult>(m, "FriedmanResult")
        .def_readonly("mean_ranks", &FriedmanResult::mean_ranks)
        .def_readonly("chi_square", &FriedmanResult::chi_square);
    m.def("friedman_mean_ranks", &friedman_mean_ranks, py::arg("table"), py::arg("maximize") = true);
}
