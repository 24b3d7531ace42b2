#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperfell/parser.hpp"
#include "hyperfell/report.hpp"
#include "hyperfell/util.hpp"

namespace hf = hyperfell;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;
constexpr int kExitInput = 4;

struct CommonOpts {
    std::string builtin;
    std::string scene_path;
    std::string format = "json";
    bool no_timestamp = false;
    int resolution = hf::kDefaultResolution;
    std::uint64_t seed = hf::kDefaultSeed;
    std::string plot_csv;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_scene = true) {
    if (with_scene) {
        cmd->add_option("--builtin", o.builtin, "built-in scene id (ex25|ex35|ex36|ex41|ex42)");
        cmd->add_option("--scene", o.scene_path, "scene DSL file");
    }
    cmd->add_option("--format", o.format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field");
    cmd->add_option("--resolution", o.resolution, "grid nodes per axis")->check(CLI::Range(2, 4096));
    cmd->add_option("--seed", o.seed, "seed for deterministic sampling");
    cmd->add_option("--plot-csv", o.plot_csv, "directory for point-cloud CSV output");
}

hf::Scene load_scene(const CommonOpts& o) {
    if (!o.builtin.empty()) return hf::builtin_scene(o.builtin);
    if (o.scene_path.empty()) throw CLI::ValidationError("need --builtin or --scene");
    std::ifstream in(o.scene_path);
    if (!in) throw std::runtime_error("cannot read scene file: " + o.scene_path);
    std::stringstream ss;
    ss << in.rdbuf();
    hf::ParseResult r = hf::parse_scene(ss.str());
    if (auto* err = std::get_if<hf::ParseError>(&r)) throw std::runtime_error(err->str());
    return std::move(std::get<hf::Scene>(r));
}

hf::Point parse_point_text(const std::string& text, int dim) {
    std::string t = text;
    std::erase(t, '(');
    std::erase(t, ')');
    std::erase(t, ' ');
    std::vector<double> vals;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        vals.push_back(std::stod(part));
    }
    if (dim > 0 && static_cast<int>(vals.size()) != dim)
        throw std::runtime_error("point '" + text + "' has wrong dimension");
    return hf::Point::of(vals);
}

// set expressions: scene | ideal(p) | filter(p) | interval((b),(a)) |
// ball((c),r) | box((lo),(hi)) | curve:<name>(p)
hf::ImplicitClosedSet parse_set_expr(const hf::Scene& scene, const std::string& expr) {
    auto args_of = [&](std::size_t open_pos) { return expr.substr(open_pos + 1, expr.size() - open_pos - 2); };
    if (expr == "scene") return hf::whole_scene_set(scene);
    auto paren = expr.find('(');
    if (paren == std::string::npos || expr.back() != ')')
        throw std::runtime_error("bad set expression: " + expr);
    std::string head = expr.substr(0, paren);
    std::string args = args_of(paren);
    auto split_points = [&]() {
        std::vector<hf::Point> pts;
        int depth = 0;
        std::string cur;
        for (char c : args) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                pts.push_back(parse_point_text(cur, scene.dim));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) pts.push_back(parse_point_text(cur, scene.dim));
        return pts;
    };
    if (head == "ideal") return hf::ideal_set(scene, parse_point_text(args, scene.dim));
    if (head == "filter") return hf::filter_set(scene, parse_point_text(args, scene.dim));
    if (head == "interval") {
        auto pts = split_points();
        if (pts.size() != 2) throw std::runtime_error("interval(b,a) needs two points");
        return hf::interval_set(scene, pts[0], pts[1]);
    }
    if (head == "ball") {
        auto comma = args.rfind(',');
        hf::Point c = parse_point_text(args.substr(0, comma), scene.dim);
        double r = std::stod(args.substr(comma + 1));
        return hf::ball_set(scene, c, r, false);
    }
    if (head == "box") {
        auto pts = split_points();
        if (pts.size() != 2) throw std::runtime_error("box(lo,hi) needs two points");
        return hf::box_set(scene, hf::Box{pts[0], pts[1]});
    }
    if (head.rfind("curve:", 0) == 0) {
        std::string name = head.substr(6);
        hf::Point p = parse_point_text(args, scene.dim);
        if (name == "vietoris") return hf::ex42_vietoris_curve(scene, p);
        if (name == "l") return hf::ex41_segment(scene, p[0], p[1]);
        if (name == "edge") {
            hf::EdgePolyline e = hf::ex42_right_top_edge(p);
            return hf::curve_set(scene, e.curve(scene.default_window.lo[1]), "edge" + p.str());
        }
        if (const hf::Curve* c = scene.find_curve(name)) return hf::curve_set(scene, *c, name);
        throw std::runtime_error("unknown curve name: " + name);
    }
    throw std::runtime_error("bad set expression: " + expr);
}

std::vector<double> parse_radii(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
    return out;
}

void emit(const CommonOpts& o, const hf::json& envelope) {
    if (o.format == "text") std::cout << hf::render_text(envelope);
    else std::cout << envelope.dump(2) << "\n";
}

int status_exit(const std::string& s) {
    if (s == "INCONCLUSIVE") return kExitInconclusive;
    if (s == "DIVERGES" || s == "FALSIFIED" || s == "NOT_CONTINUOUS") return kExitFalsified;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperspace probes for partially ordered Euclidean scenes"};
    app.require_subcommand(1);

    // ---- scene ----
    auto* scene_cmd = app.add_subcommand("scene", "scene DSL utilities");
    scene_cmd->require_subcommand(1);
    CommonOpts scene_opts;
    std::string scene_positional;
    auto* scene_check = scene_cmd->add_subcommand("check", "parse and sanity-check a scene");
    add_common(scene_check, scene_opts);
    scene_check->add_option("file", scene_positional, "scene file (same as --scene)");
    auto* scene_print = scene_cmd->add_subcommand("print", "print the canonical DSL text");
    add_common(scene_print, scene_opts);
    scene_print->add_option("file", scene_positional, "scene file (same as --scene)");

    // ---- hausdorff ----
    auto* hcmd = app.add_subcommand("hausdorff", "windowed Hausdorff distance of two sets");
    CommonOpts hopts;
    std::string set_a, set_b, windows_text = "10,20,40";
    double h_div = hf::kDivergenceCap, c_div = hf::kDivergenceSlope;
    add_common(hcmd, hopts);
    hcmd->add_option("--set-a", set_a, "first set expression")->required();
    hcmd->add_option("--set-b", set_b, "second set expression")->required();
    hcmd->add_option("--windows", windows_text, "growing window radii, comma separated");
    hcmd->add_option("--h-div", h_div, "divergence cap");
    hcmd->add_option("--c-div", c_div, "divergence slope threshold");

    // ---- meet ----
    auto* mcmd = app.add_subcommand("meet", "greatest lower bound via the grid oracle");
    CommonOpts mopts;
    std::string mx, my;
    bool use_closed_form = false;
    add_common(mcmd, mopts);
    mcmd->add_option("--x", mx, "first point")->required();
    mcmd->add_option("--y", my, "second point")->required();
    mcmd->add_flag("--closed-form", use_closed_form, "cross-check against the scene's closed form");

    // ---- classify ----
    auto* ccmd = app.add_subcommand("classify", "point classification");
    CommonOpts copts;
    std::string cpoint;
    add_common(ccmd, copts);
    ccmd->add_option("--point", cpoint, "point to classify")->required();

    // ---- probe ----
    auto* pcmd = app.add_subcommand("probe", "convergence probes for the canonical map");
    CommonOpts popts;
    std::string probe_kind, probe_point, probe_to, probe_windows = "1,2,4";
    std::vector<std::string> hit_exprs, miss_exprs;
    int probe_m = 20;
    double alpha0 = 0.5;
    bool default_fam = false;
    pcmd->add_option("kind", probe_kind, "fell|vietoris|hausdorff")
        ->required()
        ->check(CLI::IsMember({"fell", "vietoris", "hausdorff"}));
    add_common(pcmd, popts);
    pcmd->add_option("--point", probe_point, "limit point x0")->required();
    pcmd->add_option("--to", probe_to, "path start point x1 (line path)");
    pcmd->add_option("--m", probe_m, "tail length M");
    pcmd->add_option("--alpha0", alpha0, "initial path parameter");
    pcmd->add_option("--hit", hit_exprs, "hit set expression (repeatable)");
    pcmd->add_option("--miss", miss_exprs, "miss set expression (repeatable)");
    pcmd->add_option("--windows", probe_windows, "growing radii for the hausdorff probe");
    pcmd->add_flag("--default-family", default_fam, "add the seeded default test family");

    // ---- props ----
    auto* prcmd = app.add_subcommand("props", "order-topological predicate checkers");
    CommonOpts propts;
    std::string predicate;
    int prop_points = 10;
    bool dense_strict = false;
    prcmd->add_option("predicate", predicate,
                      "decreasing-continuous|proper-inclusion|dense-boundaries")
        ->required()
        ->check(CLI::IsMember({"decreasing-continuous", "proper-inclusion", "dense-boundaries"}));
    add_common(prcmd, propts);
    prcmd->add_option("--points", prop_points, "seeded sample count");
    prcmd->add_flag("--dense-boundaries-strict", dense_strict,
                    "require the order box to stay inside the chosen neighborhood");

    // ---- repro ----
    auto* rcmd = app.add_subcommand("repro", "reproduce the built-in example suites");
    CommonOpts ropts;
    std::string repro_id;
    bool fast = false;
    rcmd->add_option("example", repro_id, "ex25|ex35|ex36|ex41|ex42|thm34|all")->required();
    add_common(rcmd, ropts, false);
    rcmd->add_flag("--fast", fast, "smaller seeds/resolutions for quick runs");
    bool ex42_u_branch = false;
    rcmd->add_flag("--ex42-u-branch", ex42_u_branch,
                   "also run the back-top-edge mirror of the divergence check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scene_check->parsed() || scene_print->parsed()) {
            if (!scene_positional.empty() && scene_opts.scene_path.empty())
                scene_opts.scene_path = scene_positional;
            hf::Scene scene = load_scene(scene_opts);
            if (scene_print->parsed()) {
                std::cout << hf::print_scene(scene) << "\n";
                return kExitOk;
            }
            hf::Window w = scene.default_win(scene_opts.resolution);
            hf::PointCloud cloud = hf::sample(hf::whole_scene_set(scene), w);
            hf::json result;
            result["name"] = scene.name;
            result["dim"] = scene.dim;
            result["member_samples"] = cloud.size();
            result["window"] = hf::to_json(w);
            result["canonical_text"] = hf::print_scene(scene);
            bool landmarks_ok = true;
            for (const auto& lm : scene.landmarks)
                if (!lm.exterior && !scene.contains(lm.point)) landmarks_ok = false;
            result["landmarks_consistent"] = landmarks_ok;
            emit(scene_opts, hf::make_envelope("scene-check", scene.name, result, {},
                                               !scene_opts.no_timestamp));
            return landmarks_ok ? kExitOk : kExitFalsified;
        }

        if (hcmd->parsed()) {
            hf::Scene scene = load_scene(hopts);
            auto sa = parse_set_expr(scene, set_a);
            auto sb = parse_set_expr(scene, set_b);
            auto radii = parse_radii(windows_text);
            auto wins = hf::growing_windows(scene, radii, hopts.resolution);
            hf::DivergenceConfig dc;
            dc.h_div = h_div;
            dc.c_div = c_div;
            hf::DivergenceReport rep = hf::hausdorff_windowed(sa, sb, wins, dc);
            if (!hopts.plot_csv.empty()) {
                std::filesystem::create_directories(hopts.plot_csv);
                hf::write_cloud_csv(hf::sample(sa, wins.back()), hopts.plot_csv + "/set_a.csv");
                hf::write_cloud_csv(hf::sample(sb, wins.back()), hopts.plot_csv + "/set_b.csv");
            }
            hf::json result = hf::to_json(rep);
            result["set_a"] = sa.tag();
            result["set_b"] = sb.tag();
            emit(hopts, hf::make_envelope("hausdorff", scene.name, result, {}, !hopts.no_timestamp));
            return rep.verdict == hf::DivergenceVerdict::Inconclusive ? kExitInconclusive : kExitOk;
        }

        if (mcmd->parsed()) {
            hf::Scene scene = load_scene(mopts);
            hf::Point x = parse_point_text(mx, scene.dim);
            hf::Point y = parse_point_text(my, scene.dim);
            hf::Window grid = scene.default_win(mopts.resolution);
            hf::MeetResult res = hf::meet_brute(x, y, scene, grid);
            hf::json result = hf::to_json(res);
            if (use_closed_form && scene.name == "ex42") {
                hf::Point closed = hf::meet_ex42(x, y);
                result["closed_form"] = hf::to_json(closed);
                if (res.status == hf::MeetStatus::Found)
                    result["closed_form_gap"] = res.point.dist_inf(closed);
            }
            emit(mopts, hf::make_envelope("meet", scene.name, result, {}, !mopts.no_timestamp));
            return res.status == hf::MeetStatus::WindowInconclusive ? kExitInconclusive : kExitOk;
        }

        if (ccmd->parsed()) {
            hf::Scene scene = load_scene(copts);
            hf::Point x = parse_point_text(cpoint, scene.dim);
            hf::Window w = scene.default_win(copts.resolution);
            double extent = w.box.max_extent();
            double radii[3] = {0.2 * extent, 0.1 * extent, 0.05 * extent};
            hf::Classification cls = hf::classify_point(scene, x, radii, w);
            emit(copts, hf::make_envelope("classification", scene.name, hf::to_json(cls), {},
                                          !copts.no_timestamp));
            return cls.status == hf::ClassifyStatus::Inconclusive ? kExitInconclusive : kExitOk;
        }

        if (pcmd->parsed()) {
            hf::Scene scene = load_scene(popts);
            hf::Point x0 = parse_point_text(probe_point, scene.dim);
            hf::Window w = scene.default_win(popts.resolution);
            hf::PathSpec path;
            if (!probe_to.empty()) {
                path = hf::PathSpec::line(x0, parse_point_text(probe_to, scene.dim), alpha0, probe_m);
            } else {
                hf::Point x1 = x0 * 0.5;  // default: scale toward the origin
                path = hf::PathSpec::line(x0, x1, alpha0, probe_m);
            }

            if (probe_kind == "hausdorff") {
                auto wins = hf::growing_windows(scene, parse_radii(probe_windows), popts.resolution);
                hf::HausdorffProbeVerdict v = hf::hausdorff_probe(scene, path, wins);
                emit(popts, hf::make_envelope("probe", scene.name, hf::to_json(v), {},
                                              !popts.no_timestamp));
                return status_exit(hf::probe_status_name(v.status));
            }
            hf::TestFamily fam;
            bool fell_mode = probe_kind == "fell";
            if (default_fam || (hit_exprs.empty() && miss_exprs.empty()))
                fam = hf::default_family(scene, x0, w, popts.seed, fell_mode);
            for (const auto& e : hit_exprs) fam.hits.push_back({parse_set_expr(scene, e), e});
            for (const auto& e : miss_exprs) {
                hf::MissSet ms{parse_set_expr(scene, e), e, std::nullopt};
                if (fell_mode) {
                    hf::Window wins[2] = {w, hf::Window{hf::Box{w.box.lo * 2.0, w.box.hi * 2.0},
                                                        popts.resolution}};
                    ms.certificate = hf::compactness_probe(ms.set, scene, wins);
                }
                fam.misses.push_back(std::move(ms));
            }
            hf::ProbeVerdict v = fell_mode ? hf::fell_probe(scene, path, fam, w)
                                           : hf::vietoris_probe(scene, path, fam, w);
            emit(popts,
                 hf::make_envelope("probe", scene.name, hf::to_json(v), {}, !popts.no_timestamp));
            return status_exit(hf::probe_status_name(v.status));
        }

        if (prcmd->parsed()) {
            hf::Scene scene = load_scene(propts);
            hf::Window w = scene.default_win(propts.resolution);
            auto pts = hf::seeded_scene_points(scene, prop_points, propts.seed, w);
            hf::PredicateReport rep;
            if (predicate == "decreasing-continuous") {
                std::vector<hf::HitSet> opens;
                double extent = w.box.max_extent();
                for (int i = 0; i < 3 && i < static_cast<int>(pts.size()); ++i)
                    opens.push_back({hf::ball_set(scene, pts[i], 0.15 * extent, true),
                                     "ball" + std::to_string(i)});
                rep = hf::check_decreasing_continuous(scene, pts, opens, w);
            } else if (predicate == "proper-inclusion") {
                hf::Rng rng(hf::seed_mix(propts.seed, "cli pairs"));
                std::vector<std::pair<hf::Point, hf::Point>> pairs;
                for (const auto& x : pts) {
                    hf::Point y = x;
                    for (int i = 0; i < scene.dim; ++i) y[i] -= rng.uniform(0.02, 0.1) * w.box.extent(i);
                    if (scene.contains(y) && scene.order.leq(y, x)) pairs.emplace_back(x, y);
                }
                rep = hf::check_proper_inclusion(scene, pairs, w);
            } else {
                rep = hf::check_dense_boundaries(scene, pts, w, dense_strict);
            }
            emit(propts, hf::make_envelope("predicate", scene.name, hf::to_json(rep), {},
                                           !propts.no_timestamp));
            return status_exit(hf::predicate_status_name(rep.status));
        }

        if (rcmd->parsed()) {
            hf::ReproConfig cfg;
            cfg.seed = ropts.seed;
            cfg.plot_dir = ropts.plot_csv;
            cfg.ex42_u_branch = ex42_u_branch;
            if (fast) {
                cfg.resolution_2d = 32;
                cfg.resolution_3d = 24;
                cfg.m_max = 10;
                cfg.points_per_scene = 3;
                cfg.thm34_points = 3;
            }
            std::vector<std::string> ids =
                repro_id == "all" ? hf::repro_example_ids() : std::vector<std::string>{repro_id};
            hf::json all = hf::json::array();
            bool ok = true;
            std::vector<hf::ReproReport> reports(ids.size());
            for (std::size_t i = 0; i < ids.size(); ++i) reports[i] = hf::run_repro(ids[i], cfg);
            for (const auto& rep : reports) {
                all.push_back(hf::to_json(rep));
                if (!rep.all_matched()) ok = false;
            }
            hf::json result;
            result["examples"] = all;
            result["all_matched"] = ok;
            emit(ropts, hf::make_envelope("repro", repro_id, result, {}, !ropts.no_timestamp));
            return ok ? kExitOk : kExitFalsified;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
