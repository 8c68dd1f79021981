// cubiclab command line: batch scans over the m = 8b^3 + 3 family, integer
// factorization, point search, class groups, identity checks, unramified
// quadratic extension certificates, and the quadratic-field experiment.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubiclab/classgrp.hpp"
#include "cubiclab/cubic.hpp"
#include "cubiclab/hcf.hpp"
#include "cubiclab/intarith.hpp"
#include "cubiclab/mordell.hpp"
#include "cubiclab/quad.hpp"
#include "cubiclab/scan.hpp"

using namespace cubiclab;

namespace {

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << text;
}

Int resolve_m(long m_flag, long b_flag) {
    if ((m_flag > 0) == (b_flag > 0))
        throw CLI::ValidationError("exactly one of --m and --b is required");
    if (m_flag > 0) return Int(m_flag);
    return 8 * ipow(Int(b_flag), 3) + 3;
}

int env_threads() {
    const char* v = std::getenv("CUBICLAB_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n >= 1 ? n : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubiclab: Mordell curves y^2 = x^3 - m and the 2-part of pure cubic class groups"};
    app.require_subcommand(1);

    std::string format = "tsv";
    std::string out_path;
    app.add_option("--format", format, "output format: tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    // scan
    auto* scan_cmd = app.add_subcommand(
        "scan",
        "per-b reports over a range of the family m = 8b^3+3\n"
        "TSV columns: b, m, m_factored, cubefree, squarefree, squared_primes_2mod3,\n"
        "odd_class_candidate (exactly one squared prime = 2 mod 3), root_number,\n"
        "family_point_ok, unit_identity_ok, norm_identity_ok, cube_identity_ok,\n"
        "doubling_identity_ok, class_h, class_structure, class_stabilized, hcf_found,\n"
        "hcf_alpha, rank (external annotation), errors ('-' = not enabled/applicable)");
    long b_min = 1, b_max = 20;
    std::string checks = "rootnum,family,identities";
    long t_max = 4;
    long r_max = 10000;
    long relation_bound = 12;
    std::string rank_path;
    scan_cmd->add_option("--b-min", b_min, "first b (default 1)");
    scan_cmd->add_option("--b-max", b_max, "last b (default 20)");
    scan_cmd->add_option("--checks", checks,
                         "comma list: rootnum,family,identities,classgroup,hcf (default "
                         "rootnum,family,identities)");
    scan_cmd->add_option("--search-t-max", t_max, "point search: max denominator t (default 4)");
    scan_cmd->add_option("--search-r-max", r_max, "point search: max numerator r (default 10000)");
    scan_cmd->add_option("--relation-bound", relation_bound,
                         "class group relation coordinate bound (default 12)");
    scan_cmd->add_option("--rank-annotations", rank_path,
                         "TSV file of externally provided rank annotations (b, rank, note)");

    // factor
    auto* factor_cmd = app.add_subcommand("factor", "factor n (or m = 8b^3+3 via --b)");
    std::string factor_n;
    long factor_b = 0;
    factor_cmd->add_option("n", factor_n, "positive integer to factor");
    factor_cmd->add_option("--b", factor_b, "factor m = 8b^3+3 instead");

    // points
    auto* points_cmd = app.add_subcommand("points", "search rational points on y^2 = x^3 - m");
    long pm = 0, pb = 0, pt_max = 4, pr_max = 10000;
    points_cmd->add_option("--m", pm, "curve parameter m");
    points_cmd->add_option("--b", pb, "use m = 8b^3+3");
    points_cmd->add_option("--search-t-max", pt_max, "max denominator t (default 4)");
    points_cmd->add_option("--search-r-max", pr_max, "max numerator r (default 10000)");

    // hcf
    auto* hcf_cmd = app.add_subcommand("hcf", "construct a certified unramified quadratic extension");
    long hm = 0, hb = 0, ht_max = 4, hr_max = 10000, unit_a = 0;
    hcf_cmd->add_option("--m", hm, "field parameter m");
    hcf_cmd->add_option("--b", hb, "use m = 8b^3+3");
    hcf_cmd->add_option("--unit-a", unit_a, "certify the unit for m = a^3+3 (4 | a) instead of searching");
    hcf_cmd->add_option("--search-t-max", ht_max, "max denominator t (default 4)");
    hcf_cmd->add_option("--search-r-max", hr_max, "max numerator r (default 10000)");

    // classgroup
    auto* cg_cmd = app.add_subcommand("classgroup", "class group of Q(cbrt(m)) from smooth relations");
    long cm = 0, cb = 0, crel = 12;
    cg_cmd->add_option("--m", cm, "field parameter m");
    cg_cmd->add_option("--b", cb, "use m = 8b^3+3");
    cg_cmd->add_option("--relation-bound", crel, "relation coordinate bound (default 12)");

    // identities
    auto* id_cmd = app.add_subcommand("identities", "verify the family identities over a b range");
    long ib_min = 1, ib_max = 50;
    id_cmd->add_option("--b-min", ib_min, "first b (default 1)");
    id_cmd->add_option("--b-max", ib_max, "last b (default 50)");

    // quadmap
    auto* qm_cmd = app.add_subcommand("quadmap",
                                      "experiment: classes in Q(sqrt(-m)) of the ideals attached to "
                                      "points and point sums");
    long qm_m = 0, qm_b = 0, qt_max = 4, qr_max = 10000;
    qm_cmd->add_option("--m", qm_m, "curve parameter m");
    qm_cmd->add_option("--b", qm_b, "use m = 8b^3+3");
    qm_cmd->add_option("--search-t-max", qt_max, "max denominator t (default 4)");
    qm_cmd->add_option("--search-r-max", qr_max, "max numerator r (default 10000)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    try {
        if (*scan_cmd) {
            scan::ScanConfig cfg;
            cfg.b_min = b_min;
            cfg.b_max = b_max;
            cfg.check_rootnum = checks.find("rootnum") != std::string::npos;
            cfg.check_family = checks.find("family") != std::string::npos;
            cfg.check_identities = checks.find("identities") != std::string::npos;
            cfg.check_classgroup = checks.find("classgroup") != std::string::npos;
            cfg.check_hcf = checks.find("hcf") != std::string::npos;
            cfg.search_t_max = t_max;
            cfg.search_r_max = Int(r_max);
            cfg.relation_bound = Int(relation_bound);
            cfg.threads = env_threads();
            cfg.rank_annotation_path = rank_path;
            auto report = scan::run_scan(cfg);
            write_out(scan::emit(report, format == "tsv" ? scan::Format::tsv : scan::Format::json),
                      out_path);
            return 0;
        }
        if (*factor_cmd) {
            Int n = factor_b > 0 ? 8 * ipow(Int(factor_b), 3) + 3 : Int(factor_n);
            auto f = intarith::factor(n);
            std::ostringstream os;
            if (format == "json") {
                nlohmann::ordered_json j{{"n", n.get_str()}, {"factorization", f.str()}};
                nlohmann::ordered_json fs = nlohmann::ordered_json::array();
                for (const auto& pe : f.factors)
                    fs.push_back({{"p", pe.p.get_str()}, {"e", pe.e}});
                j["factors"] = fs;
                os << j.dump(2) << "\n";
            } else {
                os << n.get_str() << " = " << f.str() << "\n";
            }
            write_out(os.str(), out_path);
            return 0;
        }
        if (*points_cmd) {
            Int m = resolve_m(pm, pb);
            auto pts = mordell::search_points(m, pt_max, Int(pr_max));
            std::ostringstream os;
            os << "# points on y^2 = x^3 - " << m.get_str() << " with t <= " << pt_max
               << ", r <= " << pr_max << "\n";
            os << "point\tr\ts\tt\tweil_representative\n";
            for (const auto& p : pts)
                os << p.str() << "\t" << p.r().get_str() << "\t" << p.s().get_str() << "\t"
                   << p.t().get_str() << "\t" << mordell::weil_representative(p).str() << "\n";
            write_out(os.str(), out_path);
            return 0;
        }
        if (*hcf_cmd) {
            nlohmann::ordered_json j;
            if (unit_a > 0) {
                j = hcf::certificate_to_json(hcf::unit_construction(Int(unit_a)));
            } else {
                Int m = resolve_m(hm, hb);
                auto c = hcf::construct_from_curve(m, ht_max, Int(hr_max));
                if (!c.certificate) {
                    nlohmann::ordered_json msg{{"m", m.get_str()}, {"note", c.note}};
                    write_out(msg.dump(2) + "\n", out_path);
                    return 0;
                }
                j = hcf::certificate_to_json(*c.certificate);
                j["chosen_point"] = c.chosen->str();
                j["combined_from_odd_pair"] = c.combined;
            }
            write_out(j.dump(2) + "\n", out_path);
            return 0;
        }
        if (*cg_cmd) {
            Int m = resolve_m(cm, cb);
            auto cg = classgrp::class_group(m, Int(crel));
            std::ostringstream os;
            os << "# class group of Q(cbrt(" << m.get_str() << ")), minkowski bound "
               << cg.bound.get_str() << ", relation bound " << crel << "\n";
            os << "h\t" << cg.h.get_str() << "\n";
            os << "structure\t" << cg.structure_str() << "\n";
            os << "stabilized\t" << (cg.stabilized ? 1 : 0) << "\n";
            os << "relations\t" << cg.relations_total << "\n";
            os << "ideal\tnorm\tclass_vector\n";
            for (size_t i = 0; i < cg.factor_base.size(); ++i) {
                os << cg.factor_base[i].label() << "\t" << cg.factor_base[i].norm().get_str() << "\t";
                if (cg.fb_vectors.empty()) {
                    os << "-";
                } else {
                    for (size_t k = 0; k < cg.fb_vectors[i].size(); ++k)
                        os << (k ? "," : "") << cg.fb_vectors[i][k].get_str();
                    if (cg.fb_vectors[i].empty()) os << "0";
                }
                os << "\n";
            }
            write_out(os.str(), out_path);
            return 0;
        }
        if (*id_cmd) {
            std::ostringstream os;
            os << "b\tm\tunit_identity\tnorm_identity\tcube_identity\tdoubling_identity\n";
            for (long b = ib_min; b <= ib_max; ++b) {
                Int bb(b);
                Int m = 8 * ipow(bb, 3) + 3;
                if (!intarith::cubefree_squarefree_profile(m).is_cubefree) {
                    os << b << "\t" << m.get_str() << "\tskip\tskip\tskip\tskip\n";
                    continue;
                }
                auto id = cubic::epsilon_alpha_beta_identity(bb);
                auto cu = quad::cube_identity(bb);
                auto db = mordell::doubling_square_identity(mordell::family_point(bb));
                os << b << "\t" << m.get_str() << "\t" << id.product_matches << "\t"
                   << id.norm_matches << "\t" << cu.ok() << "\t" << db.ok << "\n";
            }
            write_out(os.str(), out_path);
            return 0;
        }
        if (*qm_cmd) {
            Int m = resolve_m(qm_m, qm_b);
            auto g = quad::class_group(m);
            auto pts = mordell::search_points(m, qt_max, Int(qr_max));
            std::ostringstream os;
            os << "# ideal classes in Q(sqrt(-" << m.get_str() << ")) attached to points; h = "
               << g.h.get_str() << "\n";
            os << "# cube reading: (s + t^3 sqrt(-m)) = b^3; square reading (N = r^2) shown for "
                  "comparison\n";
            os << "point\teven_t\tclass\tnorm\tprincipal\torder\tcube_principal\tnorm_cube_ok\t"
                  "norm_square_reading_ok\n";
            auto emit_row = [&](const mordell::CurvePoint& p) {
                auto pc = quad::point_to_quad_class(p, g);
                os << p.str() << "\t" << (p.is_infinity() ? 0 : (p.t() % 2 == 0 ? 1 : 0)) << "\t"
                   << pc.ideal_class.str() << "\t" << pc.ideal_norm.get_str() << "\t" << pc.principal
                   << "\t" << pc.class_order.get_str() << "\t" << pc.cube_principal << "\t"
                   << pc.norm_cube_ok << "\t" << pc.norm_square_reading_ok << "\n";
            };
            for (const auto& p : pts) emit_row(p);
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t j = i + 1; j < pts.size(); ++j) {
                    auto sum = mordell::add(pts[i], pts[j]);
                    if (!sum.is_infinity()) emit_row(sum);
                }
            write_out(os.str(), out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
