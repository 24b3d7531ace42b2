#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperfell/parser.hpp"
#include "hyperfell/report.hpp"
#include "hyperfell/util.hpp"

namespace py = pybind11;
namespace hf = hyperfell;

namespace {

hf::Point to_point(const std::vector<double>& v) { return hf::Point::of(v); }

std::vector<double> from_point(const hf::Point& p) {
    return {p.coords().begin(), p.coords().end()};
}

hf::PointCloud cloud_of(const std::vector<std::vector<double>>& pts) {
    hf::PointCloud c;
    for (const auto& p : pts) c.pts.push_back(to_point(p));
    return c;
}

hf::Window window_for(const hf::Scene& s, int resolution) { return s.default_win(resolution); }

std::string probe_json(const hf::Scene& scene, const std::string& kind,
                       const std::vector<double>& x0v, const std::vector<double>& x1v, int m_max,
                       int resolution, std::uint64_t seed) {
    hf::Point x0 = to_point(x0v);
    hf::PathSpec path = hf::PathSpec::line(x0, to_point(x1v), 0.5, m_max);
    hf::Window w = window_for(scene, resolution);
    if (kind == "hausdorff") {
        double e = w.box.max_extent() / 2.0;
        std::vector<double> radii{e, 1.5 * e, 2.0 * e};
        auto wins = hf::growing_windows(scene, radii, resolution);
        return hf::to_json(hf::hausdorff_probe(scene, path, wins)).dump();
    }
    bool fell = kind == "fell";
    hf::TestFamily fam = hf::default_family(scene, x0, w, seed, fell);
    hf::ProbeVerdict v = fell ? hf::fell_probe(scene, path, fam, w)
                              : hf::vietoris_probe(scene, path, fam, w);
    return hf::to_json(v).dump();
}

}  // namespace

PYBIND11_MODULE(_hyperfell, m) {
    m.doc() = "Hyperspace topology probes for partially ordered Euclidean scenes";

    py::class_<hf::Scene>(m, "Scene")
        .def_readonly("name", &hf::Scene::name)
        .def_readonly("dim", &hf::Scene::dim)
        .def_property_readonly("closed_in_rn", [](const hf::Scene& s) { return s.closed_in_rn; })
        .def("contains",
             [](const hf::Scene& s, const std::vector<double>& p) { return s.contains(to_point(p)); })
        .def("leq",
             [](const hf::Scene& s, const std::vector<double>& a, const std::vector<double>& b) {
                 return s.leq(to_point(a), to_point(b));
             })
        .def("__repr__", [](const hf::Scene& s) { return "<Scene " + s.name + ">"; });

    m.def("builtin_scene", &hf::builtin_scene, py::arg("id"));
    m.def("builtin_scene_ids", &hf::builtin_scene_ids);
    m.def(
        "open_box_scene",
        [](int dim, const std::vector<double>& lo, const std::vector<double>& hi) {
            return hf::open_box_scene(dim, hf::Box{to_point(lo), to_point(hi)});
        },
        py::arg("dim"), py::arg("lo"), py::arg("hi"));

    m.def("parse_scene", [](const std::string& text) -> py::object {
        hf::ParseResult r = hf::parse_scene(text);
        if (auto* err = std::get_if<hf::ParseError>(&r)) throw py::value_error(err->str());
        return py::cast(std::move(std::get<hf::Scene>(r)));
    });
    m.def("print_scene", &hf::print_scene);

    m.def(
        "meet",
        [](const hf::Scene& s, const std::vector<double>& x, const std::vector<double>& y,
           int resolution) -> py::object {
            hf::MeetResult r = hf::meet_brute(to_point(x), to_point(y), s, window_for(s, resolution));
            if (r.status != hf::MeetStatus::Found) return py::none();
            return py::cast(from_point(r.point));
        },
        py::arg("scene"), py::arg("x"), py::arg("y"), py::arg("resolution") = 48);
    m.def("meet_ex42", [](const std::vector<double>& x, const std::vector<double>& y) {
        return from_point(hf::meet_ex42(to_point(x), to_point(y)));
    });
    m.def("join_ex35", [](const std::vector<double>& x, const std::vector<double>& y) {
        return from_point(hf::join_ex35(to_point(x), to_point(y)));
    });

    m.def("hausdorff_distance",
          [](const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
              return hf::hausdorff_distance(cloud_of(a), cloud_of(b));
          });

    m.def(
        "sample_ideal",
        [](const hf::Scene& s, const std::vector<double>& x, int resolution) {
            hf::PointCloud c = hf::sample(hf::ideal_set(s, to_point(x)), window_for(s, resolution));
            std::vector<std::vector<double>> out;
            out.reserve(c.size());
            for (const auto& p : c.pts) out.push_back(from_point(p));
            return out;
        },
        py::arg("scene"), py::arg("x"), py::arg("resolution") = 32);

    m.def("probe", &probe_json, py::arg("scene"), py::arg("kind"), py::arg("x0"), py::arg("x1"),
          py::arg("m_max") = 12, py::arg("resolution") = 32, py::arg("seed") = hf::kDefaultSeed,
          "Run a fell/vietoris/hausdorff probe along the line path x1 -> x0; returns JSON");

    m.def(
        "classify",
        [](const hf::Scene& s, const std::vector<double>& x, int resolution) {
            hf::Window w = window_for(s, resolution);
            double e = w.box.max_extent();
            double radii[3] = {0.2 * e, 0.1 * e, 0.05 * e};
            return hf::to_json(hf::classify_point(s, to_point(x), radii, w)).dump();
        },
        py::arg("scene"), py::arg("x"), py::arg("resolution") = 48);

    m.def(
        "run_repro",
        [](const std::string& id, bool fast) {
            hf::ReproConfig cfg;
            if (fast) {
                cfg.resolution_2d = 32;
                cfg.resolution_3d = 24;
                cfg.m_max = 10;
                cfg.points_per_scene = 2;
                cfg.thm34_points = 3;
            }
            return hf::to_json(hf::run_repro(id, cfg)).dump();
        },
        py::arg("id"), py::arg("fast") = true);

    m.attr("__version__") = "0.1.0";
}
