#include <array>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crvol/cross_ratio.hpp"
#include "crvol/dilog.hpp"
#include "crvol/heisenberg.hpp"
#include "crvol/json_io.hpp"
#include "crvol/pentad.hpp"
#include "crvol/sampling.hpp"
#include "crvol/triangulation.hpp"
#include "json.hpp"

namespace {

using namespace crv;
using nlohmann::json;

// Exit codes: 0 ok, 1 a requested check failed, 2 malformed input or usage,
// 3 degenerate configuration refused. The payload's "status" field always
// matches; diagnostics go to standard error.
int finish(json payload, const char* status, int code) {
    payload["status"] = status;
    std::cout << payload.dump() << "\n";
    return code;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw structural_error("cannot open '" + path + "'");
    return json::parse(in);
}

const char* branch_name(BranchClass b) {
    switch (b) {
        case BranchClass::HyperbolicBranch: return "HyperbolicBranch";
        case BranchClass::DiagonalBranch: return "DiagonalBranch";
        case BranchClass::BothDegenerate: return "BothDegenerate";
        case BranchClass::Neither: return "Neither";
    }
    return "Neither";
}

json full_invariant_table(const CrossRatioStructure& s) {
    json out = json::object();
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            if (i == j) continue;
            out["z" + std::to_string(i) + std::to_string(j)] =
                complex_to_json(s.invariant(i, j));
        }
    return out;
}

struct DilogArgs {
    double re = 0.0;
    double im = 0.0;
    bool has_point = false;
    double theta = 0.0;
    bool has_theta = false;
};

int run_dilog(const DilogArgs& a) {
    DilogResult r{};
    if (a.has_theta) {
        r = lobachevsky(a.theta);
    } else if (a.has_point) {
        r = bloch_wigner(Complex(a.re, a.im));
    } else {
        throw structural_error("give a point (re im) or --lobachevsky theta");
    }
    return finish({{"value", r.value}, {"estimated_error", r.estimated_error}},
                  "ok", 0);
}

struct SimplexArgs {
    std::vector<double> z12, z21, z34, z43;
    bool want_volume = false;
    bool want_classify = false;
    bool want_angles = false;
    int random_count = 0;
    std::uint64_t seed = 0;
};

int run_simplex(const SimplexArgs& a) {
    if (a.random_count > 0) {
        std::mt19937_64 eng(a.seed);
        json samples = json::array();
        for (int k = 0; k < a.random_count; ++k) {
            const auto p = random_generic_quadruple(eng);
            const CrossRatioStructure s =
                cross_ratio_structure_of(p[0], p[1], p[2], p[3]).structure();
            json e = structure_to_json(s);
            e["volume"] = volume(s);
            samples.push_back(std::move(e));
        }
        return finish({{"samples", std::move(samples)}}, "ok", 0);
    }

    const CrossRatioStructure s = [&a] {
        const bool head = a.z12.size() == 2 && a.z21.size() == 2;
        const bool tail = a.z34.size() == 2 && a.z43.size() == 2;
        if (head && tail)
            return from_free_params(
                Complex(a.z12[0], a.z12[1]), Complex(a.z21[0], a.z21[1]),
                Complex(a.z34[0], a.z34[1]), Complex(a.z43[0], a.z43[1]));
        // Two parameters pin the hyperbolic-branch structure.
        if (head && a.z34.empty() && a.z43.empty())
            return hyperbolic_lift(Complex(a.z12[0], a.z12[1]),
                                   Complex(a.z21[0], a.z21[1]));
        throw structural_error(
            "give --z12 --z21 [--z34 --z43] (re im each) or --random N");
    }();

    json payload{{"invariants", full_invariant_table(s)}};
    if (a.want_volume) payload["volume"] = volume(s);
    if (a.want_classify) payload["branch"] = branch_name(classify_branch(s));
    if (a.want_angles) {
        const AngleDecomposition d = angle_decomposition(s);
        json theta = json::array(), radius = json::array();
        for (int i = 1; i <= 4; ++i) {
            json trow = json::array(), rrow = json::array();
            for (int j = 1; j <= 4; ++j) {
                trow.push_back(i == j ? 0.0 : d.theta[std::size_t(i)][std::size_t(j)]);
                rrow.push_back(i == j ? 0.0 : d.r[std::size_t(i)][std::size_t(j)]);
            }
            theta.push_back(std::move(trow));
            radius.push_back(std::move(rrow));
        }
        payload["theta"] = std::move(theta);
        payload["r"] = std::move(radius);
        payload["angle_residuals"] = {
            {"vertex_sum", d.vertex_sum_residual},
            {"pair_angle", d.pair_angle_residual},
            {"pair_modulus", d.pair_modulus_residual},
            {"sine", d.sine_residual}};
    }
    return finish(std::move(payload), "ok", 0);
}

struct ConfigArgs {
    std::string file;
    bool want_invariants = false;
    bool want_cartan = false;
    bool want_volume = false;
    bool check_cr = false;
    bool check_coboundary = false;
    bool five_term = false;
    double tol = 1e-9;
};

int run_config(const ConfigArgs& a) {
    const auto points = parse_points_document(load_json_file(a.file));
    const std::size_t n = points.size();
    if (n != 4 && n != 5)
        throw structural_error("a points document needs 4 or 5 points, got " +
                               std::to_string(n));
    if (!(a.want_invariants || a.want_cartan || a.want_volume || a.check_cr ||
          a.check_coboundary || a.five_term))
        throw structural_error(
            "choose at least one of --invariants --cartan --volume "
            "--check-cr --check-coboundary --five-term");
    const auto need4 = [&](const char* flag) {
        if (n != 4)
            throw structural_error(std::string(flag) +
                                   " needs exactly four points");
    };
    const auto need5 = [&](const char* flag) {
        if (n != 5)
            throw structural_error(std::string(flag) +
                                   " needs exactly five points");
    };

    json payload = json::object();
    json checks = json::array();
    bool all_pass = true;
    const auto record = [&](const char* name, double residual) {
        const bool ok = residual <= a.tol;
        all_pass = all_pass && ok;
        checks.push_back(
            {{"name", name}, {"residual", residual}, {"pass", ok}});
    };

    if (a.want_cartan) {
        json arr = json::array();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k)
                    arr.push_back(
                        {{"triple", {points[i].id, points[j].id, points[k].id}},
                         {"angle", cartan_invariant(points[i].point,
                                                    points[j].point,
                                                    points[k].point)}});
        payload["cartan"] = std::move(arr);
    }

    if (a.want_invariants || a.want_volume || a.check_cr || a.check_coboundary) {
        need4(a.want_invariants ? "--invariants"
              : a.want_volume   ? "--volume"
              : a.check_cr      ? "--check-cr"
                                : "--check-coboundary");
        const CRConfiguration config =
            cross_ratio_structure_of(points[0].point, points[1].point,
                                     points[2].point, points[3].point);
        if (a.want_invariants)
            payload["invariants"] = full_invariant_table(config.structure());
        if (a.want_volume) payload["volume"] = volume(config.structure());
        if (a.check_cr)
            record("cross-ratio-equations", config.cr_equation_residual());
        if (a.check_coboundary)
            record("coboundary",
                   std::abs(coboundary_defect(points[0].point, points[1].point,
                                              points[2].point,
                                              points[3].point)));
    }

    if (a.five_term) {
        need5("--five-term");
        const auto [coords, columns] =
            from_five_points(points[0].point, points[1].point,
                             points[2].point, points[3].point,
                             points[4].point);
        json volumes = json::array();
        double alternating = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            const double v = volume(columns.columns[k]);
            volumes.push_back(v);
            alternating += ColumnQuintuple::signs[k] * v;
        }
        payload["volumes"] = std::move(volumes);
        payload["alternating_sum"] = alternating;
        record("five-term", five_term_volume_defect(coords));
    }

    if (!checks.empty()) payload["checks"] = std::move(checks);
    if (!all_pass) return finish(std::move(payload), "failed", 1);
    return finish(std::move(payload), "ok", 0);
}

CrossRatioAssignment resolve_assignment(const TriangulationDocument& doc) {
    if (doc.assignment) return *doc.assignment;
    if (!doc.positions.empty())
        return geometric_assignment(doc.triangulation, doc.positions);
    throw structural_error(
        "the document carries neither \"invariants\" nor \"positions\"");
}

int run_tri_validate(const std::string& file, double tol) {
    const TriangulationDocument doc =
        parse_triangulation_document(load_json_file(file));
    const CrossRatioAssignment assign = resolve_assignment(doc);
    const ComplianceReport edges =
        validate_edge_compatibility(doc.triangulation, assign, tol);
    const ComplianceReport faces =
        validate_face_compatibility(doc.triangulation, assign, tol);
    json payload{{"edges", report_to_json(edges)},
                 {"faces", report_to_json(faces)},
                 {"volume", total_volume(doc.triangulation, assign)}};
    if (!(edges.pass && faces.pass))
        return finish(std::move(payload), "failed", 1);
    return finish(std::move(payload), "ok", 0);
}

int run_tri_volume(const std::string& file) {
    const TriangulationDocument doc =
        parse_triangulation_document(load_json_file(file));
    const CrossRatioAssignment assign = resolve_assignment(doc);
    return finish({{"volume", total_volume(doc.triangulation, assign)}}, "ok",
                  0);
}

int run_tri_pachner23(const std::string& file,
                      const std::vector<std::string>& face) {
    const TriangulationDocument doc =
        parse_triangulation_document(load_json_file(file));
    const CrossRatioAssignment assign = resolve_assignment(doc);
    const double before = total_volume(doc.triangulation, assign);
    const PachnerResult moved =
        pachner_23(doc.triangulation, assign,
                   {face.at(0), face.at(1), face.at(2)});
    const double after = total_volume(moved.triangulation, moved.assignment);
    json payload{
        {"volume_before", before},
        {"volume_after", after},
        {"triangulation",
         triangulation_document(moved.triangulation, &moved.assignment,
                                doc.positions.empty() ? nullptr
                                                      : &doc.positions)}};
    return finish(std::move(payload), "ok", 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"volumes and compatibility checks for tetrahedra carrying "
                 "cross-ratio structures"};
    app.require_subcommand(1);

    DilogArgs dargs;
    CLI::App* dilog_cmd = app.add_subcommand(
        "dilog", "evaluate the single-valued dilogarithm at re + i*im");
    CLI::Option* dre = dilog_cmd->add_option("re", dargs.re, "real part");
    CLI::Option* dim = dilog_cmd->add_option("im", dargs.im, "imaginary part");
    dim->needs(dre);
    CLI::Option* dtheta = dilog_cmd->add_option(
        "--lobachevsky", dargs.theta, "evaluate the angle form at theta");

    SimplexArgs sargs;
    CLI::App* simplex_cmd = app.add_subcommand(
        "simplex", "analyse one tetrahedron from its four free parameters");
    simplex_cmd->add_option("--z12", sargs.z12, "re im")->expected(2);
    simplex_cmd->add_option("--z21", sargs.z21, "re im")->expected(2);
    simplex_cmd->add_option("--z34", sargs.z34, "re im")->expected(2);
    simplex_cmd->add_option("--z43", sargs.z43, "re im")->expected(2);
    simplex_cmd->add_flag("--volume", sargs.want_volume, "report the volume");
    simplex_cmd->add_flag("--classify", sargs.want_classify,
                          "name the variety branch");
    simplex_cmd->add_flag("--angles", sargs.want_angles,
                          "polar decomposition and residuals");
    simplex_cmd->add_option("--random", sargs.random_count,
                            "sample N structures from points on the sphere");
    simplex_cmd->add_option("--seed", sargs.seed, "sampling seed");

    ConfigArgs cargs;
    CLI::App* config_cmd = app.add_subcommand(
        "config", "analyse a 4- or 5-point configuration file");
    config_cmd->add_option("file", cargs.file, "points JSON file")->required();
    config_cmd->add_flag("--invariants", cargs.want_invariants,
                         "all twelve cross-ratios (4 points)");
    config_cmd->add_flag("--cartan", cargs.want_cartan,
                         "angular invariant of every triple");
    config_cmd->add_flag("--volume", cargs.want_volume, "volume (4 points)");
    config_cmd->add_flag("--check-cr", cargs.check_cr,
                         "verify the cross-ratio variety equations (4 points)");
    config_cmd->add_flag("--check-coboundary", cargs.check_coboundary,
                         "verify the volume coboundary identity (4 points)");
    config_cmd->add_flag("--five-term", cargs.five_term,
                         "verify the five-term volume identity (5 points)");
    config_cmd->add_option("--tol", cargs.tol, "check tolerance");

    CLI::App* tri_cmd =
        app.add_subcommand("tri", "triangulation-level operations");
    tri_cmd->require_subcommand(1);
    std::string tri_file;
    double tri_tol = 1e-9;
    std::vector<std::string> tri_face;
    CLI::App* validate_cmd = tri_cmd->add_subcommand(
        "validate", "edge and face compatibility reports");
    validate_cmd->add_option("file", tri_file, "triangulation JSON file")
        ->required();
    validate_cmd->add_option("--tol", tri_tol, "residual tolerance");
    CLI::App* volume_cmd =
        tri_cmd->add_subcommand("volume", "signed volume sum");
    volume_cmd->add_option("file", tri_file, "triangulation JSON file")
        ->required();
    CLI::App* pachner_cmd = tri_cmd->add_subcommand(
        "pachner23", "replace two tetrahedra over a face by three");
    pachner_cmd->add_option("file", tri_file, "triangulation JSON file")
        ->required();
    pachner_cmd
        ->add_option("--face", tri_face, "the three vertex labels a,b,c")
        ->required()
        ->delimiter(',')
        ->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return finish({{"message", e.what()}}, "error", 2);
    }
    dargs.has_point = dre->count() > 0 && dim->count() > 0;
    if (dre->count() > 0 && dim->count() == 0)
        dargs.has_point = false;
    dargs.has_theta = dtheta->count() > 0;

    try {
        if (*dilog_cmd) return run_dilog(dargs);
        if (*simplex_cmd) return run_simplex(sargs);
        if (*config_cmd) return run_config(cargs);
        if (*tri_cmd) {
            if (*validate_cmd) return run_tri_validate(tri_file, tri_tol);
            if (*volume_cmd) return run_tri_volume(tri_file);
            if (*pachner_cmd) return run_tri_pachner23(tri_file, tri_face);
        }
        throw structural_error("no command selected");
    } catch (const degeneracy_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return finish({{"message", e.what()}}, "refused", 3);
    } catch (const structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return finish({{"message", e.what()}}, "error", 2);
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return finish({{"message", e.what()}}, "error", 2);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return finish({{"message", e.what()}}, "error", 2);
    }
}
