#include "tanglab/incidence.hpp"
#include "tanglab/json_io.hpp"
#include "tanglab/patterns.hpp"
#include "tanglab/svg.hpp"
#include "tanglab/synthesis.hpp"
#include "tanglab/verifier.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <set>

namespace {

using namespace tanglab;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

PointLineSystem make_system(int k, long shear_m) {
    PointLineSystem raw = generate_grid_system(k);
    long M = shear_m > 0 ? shear_m : default_shear(raw);
    return shear_normalize(raw, M);
}

struct PipelineArtifacts {
    PointLineSystem sys;
    CurveFamily family;
    TangencyReport report;
    bool ok = false;
};

PipelineArtifacts run_pipeline(int k, bool grounded) {
    PipelineArtifacts art;
    art.sys = make_system(k, 0);
    SynthesisResult synth = synthesize_family(art.sys);
    art.family = grounded ? to_doubly_grounded(synth.family) : std::move(synth.family);
    art.report = tangency_report(art.family);

    std::set<std::pair<int, int>> certified;
    for (const auto& tp : art.report.tangent_pairs)
        certified.insert({std::min(tp.curve_a, tp.curve_b), std::max(tp.curve_a, tp.curve_b)});
    bool all_declared = true;
    for (const auto& c : art.family.curves)
        for (const auto& dt : c.declared_tangencies)
            if (!certified.count({std::min(c.id, dt.other_id), std::max(c.id, dt.other_id)}))
                all_declared = false;
    art.ok = art.report.same_color_violations.empty() &&
             art.report.overlap_violations.empty() && all_declared;
    if (grounded && art.ok) art.ok = verify_grounded(art.family).ok;
    return art;
}

int cmd_pipeline(int k, bool grounded, const std::string& outdir) {
    std::filesystem::create_directories(outdir);
    PipelineArtifacts art = run_pipeline(k, grounded);
    write_file(outdir + "/point_line_system.json", to_json(art.sys));
    write_file(outdir + "/curve_family.json", to_json(art.family));
    write_file(outdir + "/tangency_report.json", to_json(art.report));
    write_file(outdir + "/figure.svg", render_svg(art.family, &art.report));
    std::cout << "k=" << k << " curves=" << art.family.curves.size()
              << " tangencies=" << art.report.total_tangencies
              << (art.ok ? " OK" : " FAILED") << "\n";
    return art.ok ? kExitOk : kExitVerification;
}

int cmd_scaling_table(int k_max, bool force, const std::string& outfile) {
    if (k_max < 2) {
        std::cerr << "scaling-table needs --k-max >= 2\n";
        return kExitUsage;
    }
    if (k_max > 5 && !force) {
        std::cerr << "k-max > 5 is slow; pass --force to run anyway\n";
        return kExitUsage;
    }
    std::ostringstream csv;
    csv << "k,n_points,n_lines,n_curves,incidences,tangencies_certified,ratio\n";
    std::vector<std::pair<double, double>> pts;  // (log n_curves, log tangencies)
    for (int k = 1; k <= k_max; ++k) {
        PipelineArtifacts art = run_pipeline(k, false);
        if (!art.ok) {
            std::cerr << "pipeline failed at k=" << k << "\n";
            return kExitVerification;
        }
        long n_points = static_cast<long>(art.sys.points.size());
        long n_lines = static_cast<long>(art.sys.lines.size());
        long n_curves = n_points + n_lines;
        long inc = count_incidences_bruteforce(art.sys);
        long tang = art.report.total_tangencies;
        double ratio = static_cast<double>(tang) / std::pow(static_cast<double>(n_curves), 4.0 / 3.0);
        csv << k << "," << n_points << "," << n_lines << "," << n_curves << "," << inc << ","
            << tang << "," << ratio << "\n";
        if (k >= 2) pts.emplace_back(std::log(static_cast<double>(n_curves)),
                                     std::log(static_cast<double>(tang)));
        std::cout << "k=" << k << ": tangencies=" << tang << "\n";
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
    double n = static_cast<double>(pts.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    write_file(outfile, csv.str());
    std::cout << "least-squares slope log(tangencies) vs log(curves): " << slope << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tangency-lab: exact synthesis and certification of red/blue "
                 "curve families with many tangencies"};
    app.require_subcommand(1);

    // gen-incidences
    int k = 1;
    long shear_m = 0;
    std::string out_file, in_file, outdir = ".";
    bool grounded = false;
    auto* gen = app.add_subcommand("gen-incidences", "generate a sheared grid incidence system");
    gen->add_option("--k", k, "grid parameter")->required()->check(CLI::PositiveNumber);
    gen->add_option("--shear-m", shear_m, "shear parameter (default: smallest valid)");
    gen->add_option("--out", out_file, "output json")->required();

    auto* synth = app.add_subcommand("synth-curves", "synthesize the curve family");
    synth->add_option("--in", in_file, "point_line_system.json")->required();
    synth->add_flag("--grounded", grounded, "deform into a doubly-grounded strip");
    synth->add_option("--out", out_file, "output curve_family.json")->required();

    auto* count = app.add_subcommand("count-tangencies", "certify and count tangencies");
    count->add_option("--in", in_file, "curve_family.json")->required();
    count->add_option("--out", out_file, "output tangency_report.json")->required();

    auto* ver = app.add_subcommand("verify", "exit nonzero on any family violation");
    ver->add_option("--in", in_file, "curve_family.json")->required();

    auto* pipe = app.add_subcommand("pipeline", "generate, synthesize, verify, render");
    pipe->add_option("--k", k, "grid parameter")->required()->check(CLI::PositiveNumber);
    pipe->add_flag("--grounded", grounded, "doubly-grounded variant");
    pipe->add_option("--outdir", outdir, "artifact directory");

    int k_max = 5;
    bool force = false;
    auto* scaling = app.add_subcommand("scaling-table", "tangency growth over k = 1..k_max");
    scaling->add_option("--k-max", k_max, "largest grid parameter");
    scaling->add_flag("--force", force, "allow k-max > 5");
    scaling->add_option("--out", out_file, "output csv")->required();

    std::string family_file, report_file;
    auto* svg = app.add_subcommand("emit-svg", "render a family and its report");
    svg->add_option("--family", family_file, "curve_family.json")->required();
    svg->add_option("--report", report_file, "tangency_report.json (optional)");
    svg->add_option("--out", out_file, "output svg")->required();

    auto* p5 = app.add_subcommand("check-p5", "search the forbidden edge-ordered path");
    p5->add_option("--in", in_file, "edge-ordered graph json")->required();

    auto* c6 = app.add_subcommand("check-positive-c6", "search the positive C6 pattern");
    c6->add_option("--in", in_file, "0-1 matrix json")->required();

    auto* claim = app.add_subcommand("claim-p2", "self-crossing checks on the star redrawing");
    claim->add_option("--in", in_file, "curve_family.json")->required();

    std::string pattern = "p5";
    int search_n = 4;
    auto* ext = app.add_subcommand("extremal-search", "max pattern-free size at tiny n");
    ext->add_option("--pattern", pattern, "p5 | posc6")->required();
    ext->add_option("--n", search_n, "ground-set size")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            write_file(out_file, to_json(make_system(k, shear_m)));
            return kExitOk;
        }
        if (synth->parsed()) {
            PointLineSystem sys = point_line_system_from_json(read_file(in_file));
            SynthesisResult res = synthesize_family(sys);
            CurveFamily family = grounded ? to_doubly_grounded(res.family) : res.family;
            write_file(out_file, to_json(family));
            return kExitOk;
        }
        if (count->parsed()) {
            CurveFamily family = curve_family_from_json(read_file(in_file));
            TangencyReport report = tangency_report(family);
            write_file(out_file, to_json(report));
            std::cout << "tangencies: " << report.total_tangencies << "\n";
            return kExitOk;
        }
        if (ver->parsed()) {
            CurveFamily family = curve_family_from_json(read_file(in_file));
            TangencyReport report = tangency_report(family);
            bool ok = report.same_color_violations.empty() && report.overlap_violations.empty();
            if (family.grounded) ok = ok && verify_grounded(family).ok;
            std::cout << (ok ? "ok" : "violations found") << "\n";
            return ok ? kExitOk : kExitVerification;
        }
        if (pipe->parsed()) return cmd_pipeline(k, grounded, outdir);
        if (scaling->parsed()) return cmd_scaling_table(k_max, force, out_file);
        if (svg->parsed()) {
            CurveFamily family = curve_family_from_json(read_file(family_file));
            TangencyReport report;
            bool have_report = !report_file.empty();
            if (have_report) report = tangency_report(family);
            write_file(out_file, render_svg(family, have_report ? &report : nullptr));
            return kExitOk;
        }
        if (p5->parsed()) {
            EdgeOrderedGraph g = edge_ordered_graph_from_json(read_file(in_file));
            auto w = contains_forbidden_p5(g);
            if (w) {
                std::cout << "forbidden path:";
                for (int v : w->path) std::cout << " " << v;
                std::cout << "\n";
                return kExitVerification;
            }
            std::cout << "none\n";
            return kExitOk;
        }
        if (c6->parsed()) {
            ZeroOneMatrix m = zero_one_matrix_from_json(read_file(in_file));
            auto w = contains_positive_c6(m);
            if (w) {
                std::cout << "positive C6 at rows " << w->rows[0] << "," << w->rows[1] << ","
                          << w->rows[2] << " cols " << w->cols[0] << "," << w->cols[1] << ","
                          << w->cols[2] << "\n";
                return kExitVerification;
            }
            std::cout << "none\n";
            return kExitOk;
        }
        if (claim->parsed()) {
            CurveFamily family = curve_family_from_json(read_file(in_file));
            TangencyReport report = tangency_report(family);
            if (!report.same_color_violations.empty() || !report.overlap_violations.empty()) {
                std::cerr << "family has verification violations\n";
                return kExitVerification;
            }
            BaseChoice base = family.grounded ? BaseChoice::Grounded : BaseChoice::CurveStart;
            DrawnBipartiteGraph g = star_redraw(family, report, base);
            ClaimP2Report rep = check_claim_p2(g);
            std::cout << "2-edge paths checked: " << rep.paths2_checked
                      << ", 4-cycles: " << rep.cycles4_checked
                      << ", 5-part windows: " << rep.walk_windows_checked << "\n";
            for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
            std::cout << (rep.ok ? "ok" : "self-crossing found") << "\n";
            return rep.ok ? kExitOk : kExitVerification;
        }
        if (ext->parsed()) {
            if (pattern == "p5") {
                ExtremalP5Result res = extremal_bruteforce_p5(search_n);
                std::cout << "max edges: " << res.max_edges << "\n";
                std::cout << to_json(res.witness) << "\n";
            } else if (pattern == "posc6") {
                ExtremalC6Result res = extremal_bruteforce_positive_c6(search_n);
                std::cout << "max ones: " << res.max_ones << "\n";
                std::cout << to_json(res.witness) << "\n";
            } else {
                std::cerr << "unknown pattern " << pattern << "\n";
                return kExitUsage;
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
