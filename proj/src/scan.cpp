#include "cubiclab/scan.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cubiclab/classgrp.hpp"
#include "cubiclab/cubic.hpp"
#include "cubiclab/hcf.hpp"
#include "cubiclab/intarith.hpp"
#include "cubiclab/mordell.hpp"
#include "cubiclab/quad.hpp"

namespace cubiclab::scan {

namespace {

ScanRow scan_one(long b, const ScanConfig& cfg, const std::map<long, std::string>& ranks) {
    ScanRow row;
    row.b = b;
    Int bb(b);
    row.m = 8 * ipow(bb, 3) + 3;
    try {
        auto fact = intarith::factor(row.m);
        row.m_factored = fact.str();
        auto prof = intarith::cubefree_squarefree_profile(row.m);
        row.cubefree = prof.is_cubefree;
        row.squarefree = prof.is_squarefree;
        row.squared_primes_2mod3 = prof.squared_primes_2mod3;
        row.odd_class_candidate = prof.squared_primes_2mod3.size() == 1;
    } catch (const std::exception& e) {
        row.errors.push_back(std::string("factor: ") + e.what());
        return row;
    }
    if (cfg.check_rootnum && row.cubefree) {
        try {
            row.root_number = mordell::root_number(row.m).w;
        } catch (const std::exception& e) {
            row.errors.push_back(std::string("rootnum: ") + e.what());
        }
    }
    if (cfg.check_family && row.cubefree) {
        try {
            mordell::CurvePoint p = mordell::family_point(bb);
            row.family_point_ok = !mordell::is_torsion(p);
            row.doubling_identity_ok = mordell::doubling_square_identity(p).ok;
        } catch (const std::exception& e) {
            row.family_point_ok = false;
            row.errors.push_back(std::string("family: ") + e.what());
        }
    }
    if (cfg.check_identities && row.cubefree) {
        try {
            auto id = cubic::epsilon_alpha_beta_identity(bb);
            row.unit_identity_ok = id.product_matches;
            row.norm_identity_ok = id.norm_matches;
        } catch (const std::exception& e) {
            row.unit_identity_ok = false;
            row.errors.push_back(std::string("unit identity: ") + e.what());
        }
        try {
            row.cube_identity_ok = quad::cube_identity(bb).ok();
        } catch (const std::exception& e) {
            row.cube_identity_ok = false;
            row.errors.push_back(std::string("cube identity: ") + e.what());
        }
    }
    if (cfg.check_classgroup) {
        if (row.squarefree && mod_pos(row.m, Int(9)) != 1 && mod_pos(row.m, Int(9)) != 8) {
            try {
                auto cg = classgrp::class_group(row.m, cfg.relation_bound);
                row.class_h = cg.h;
                row.class_structure = cg.structure_str();
                row.class_stabilized = cg.stabilized;
            } catch (const std::exception& e) {
                row.errors.push_back(std::string("classgroup: ") + e.what());
            }
        } else {
            row.errors.push_back("classgroup: skipped (monogenic case required)");
        }
    }
    if (cfg.check_hcf && row.squarefree) {
        try {
            auto c = hcf::construct_from_curve(row.m, cfg.search_t_max, cfg.search_r_max);
            row.hcf_found = c.certificate.has_value() && c.certificate->valid();
            if (c.certificate) row.hcf_alpha = c.certificate->alpha.str();
        } catch (const std::exception& e) {
            row.errors.push_back(std::string("hcf: ") + e.what());
        }
    }
    auto it = ranks.find(b);
    if (it != ranks.end()) row.rank_annotation = it->second;
    return row;
}

std::string opt_bool(const std::optional<bool>& v) {
    if (!v) return "-";
    return *v ? "1" : "0";
}

std::string join_ints(const std::vector<Int>& v) {
    if (v.empty()) return "-";
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].get_str();
    }
    return os.str();
}

std::string join_strings(const std::vector<std::string>& v, char sep) {
    if (v.empty()) return "-";
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << sep;
        os << v[i];
    }
    return os.str();
}

nlohmann::ordered_json config_to_json(const ScanConfig& c) {
    return nlohmann::ordered_json{{"b_min", c.b_min},
                                  {"b_max", c.b_max},
                                  {"check_rootnum", c.check_rootnum},
                                  {"check_family", c.check_family},
                                  {"check_identities", c.check_identities},
                                  {"check_classgroup", c.check_classgroup},
                                  {"check_hcf", c.check_hcf},
                                  {"search_t_max", c.search_t_max},
                                  {"search_r_max", c.search_r_max.get_str()},
                                  {"relation_bound", c.relation_bound.get_str()},
                                  {"rank_annotation_path", c.rank_annotation_path}};
}

ScanConfig config_from_json(const nlohmann::ordered_json& j) {
    ScanConfig c;
    c.b_min = j.at("b_min").get<long>();
    c.b_max = j.at("b_max").get<long>();
    c.check_rootnum = j.at("check_rootnum").get<bool>();
    c.check_family = j.at("check_family").get<bool>();
    c.check_identities = j.at("check_identities").get<bool>();
    c.check_classgroup = j.at("check_classgroup").get<bool>();
    c.check_hcf = j.at("check_hcf").get<bool>();
    c.search_t_max = j.at("search_t_max").get<long>();
    c.search_r_max = Int(j.at("search_r_max").get<std::string>());
    c.relation_bound = Int(j.at("relation_bound").get<std::string>());
    c.rank_annotation_path = j.at("rank_annotation_path").get<std::string>();
    return c;
}

}  // namespace

std::map<long, std::string> load_rank_annotations(const std::string& path) {
    std::map<long, std::string> out;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open rank annotation file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long b;
        std::string rank;
        if (ls >> b >> rank) out[b] = rank;
    }
    return out;
}

ScanReport run_scan(const ScanConfig& config) {
    // b_max = b_min - 1 is the empty range (header-only reports).
    if (config.b_min < 1 || config.b_max < config.b_min - 1)
        throw std::invalid_argument("run_scan: invalid b range");
    std::map<long, std::string> ranks;
    if (!config.rank_annotation_path.empty()) ranks = load_rank_annotations(config.rank_annotation_path);

    ScanReport report;
    report.tool_version = kToolVersion;
    report.config = config;
    size_t count = static_cast<size_t>(config.b_max - config.b_min + 1);
    report.rows.resize(count);

    int threads = std::max(1, config.threads);
    if (threads == 1) {
        for (size_t i = 0; i < count; ++i)
            report.rows[i] = scan_one(config.b_min + static_cast<long>(i), config, ranks);
    } else {
        // Per-b tasks are independent; rows land in their slots so the output
        // does not depend on scheduling.
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count) break;
                report.rows[i] = scan_one(config.b_min + static_cast<long>(i), config, ranks);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return report;
}

std::string emit(const ScanReport& report, Format format) {
    if (format == Format::tsv) {
        std::ostringstream os;
        os << "# " << report.tool_version << " scan\n";
        os << "b\tm\tm_factored\tcubefree\tsquarefree\tsquared_primes_2mod3\todd_class_candidate\t"
              "root_number\tfamily_point_ok\tunit_identity_ok\tnorm_identity_ok\tcube_identity_ok\t"
              "doubling_identity_ok\tclass_h\tclass_structure\tclass_stabilized\thcf_found\thcf_alpha\t"
              "rank\terrors\n";
        for (const auto& r : report.rows) {
            os << r.b << "\t" << r.m.get_str() << "\t" << r.m_factored << "\t" << (r.cubefree ? 1 : 0)
               << "\t" << (r.squarefree ? 1 : 0) << "\t" << join_ints(r.squared_primes_2mod3) << "\t"
               << (r.odd_class_candidate ? 1 : 0) << "\t"
               << (r.root_number ? (*r.root_number > 0 ? "+1" : "-1") : "-") << "\t"
               << opt_bool(r.family_point_ok) << "\t" << opt_bool(r.unit_identity_ok) << "\t"
               << opt_bool(r.norm_identity_ok) << "\t" << opt_bool(r.cube_identity_ok) << "\t"
               << opt_bool(r.doubling_identity_ok) << "\t"
               << (r.class_h ? r.class_h->get_str() : "-") << "\t"
               << (r.class_structure ? *r.class_structure : "-") << "\t"
               << opt_bool(r.class_stabilized) << "\t" << opt_bool(r.hcf_found) << "\t"
               << (r.hcf_alpha ? *r.hcf_alpha : "-") << "\t"
               << (r.rank_annotation ? *r.rank_annotation : "-") << "\t"
               << join_strings(r.errors, ';') << "\n";
        }
        return os.str();
    }
    nlohmann::ordered_json j;
    j["format"] = "cubiclab-scan";
    j["version"] = 1;
    j["tool_version"] = report.tool_version;
    j["config"] = config_to_json(report.config);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["b"] = r.b;
        row["m"] = r.m.get_str();
        row["m_factored"] = r.m_factored;
        row["cubefree"] = r.cubefree;
        row["squarefree"] = r.squarefree;
        nlohmann::ordered_json sq = nlohmann::ordered_json::array();
        for (const Int& p : r.squared_primes_2mod3) sq.push_back(p.get_str());
        row["squared_primes_2mod3"] = sq;
        row["odd_class_candidate"] = r.odd_class_candidate;
        auto put_opt_bool = [&row](const char* key, const std::optional<bool>& v) {
            if (v) row[key] = *v; else row[key] = nullptr;
        };
        if (r.root_number) row["root_number"] = *r.root_number; else row["root_number"] = nullptr;
        put_opt_bool("family_point_ok", r.family_point_ok);
        put_opt_bool("unit_identity_ok", r.unit_identity_ok);
        put_opt_bool("norm_identity_ok", r.norm_identity_ok);
        put_opt_bool("cube_identity_ok", r.cube_identity_ok);
        put_opt_bool("doubling_identity_ok", r.doubling_identity_ok);
        if (r.class_h) row["class_h"] = r.class_h->get_str(); else row["class_h"] = nullptr;
        if (r.class_structure) row["class_structure"] = *r.class_structure; else row["class_structure"] = nullptr;
        put_opt_bool("class_stabilized", r.class_stabilized);
        put_opt_bool("hcf_found", r.hcf_found);
        if (r.hcf_alpha) row["hcf_alpha"] = *r.hcf_alpha; else row["hcf_alpha"] = nullptr;
        if (r.rank_annotation) row["rank"] = *r.rank_annotation; else row["rank"] = nullptr;
        row["errors"] = r.errors;
        rows.push_back(std::move(row));
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

ScanReport parse_json(const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    if (j.at("format").get<std::string>() != "cubiclab-scan")
        throw std::invalid_argument("parse_json: wrong format tag");
    if (j.at("version").get<int>() != 1) throw std::invalid_argument("parse_json: unsupported version");
    ScanReport report;
    report.tool_version = j.at("tool_version").get<std::string>();
    report.config = config_from_json(j.at("config"));
    for (const auto& row : j.at("rows")) {
        ScanRow r;
        r.b = row.at("b").get<long>();
        r.m = Int(row.at("m").get<std::string>());
        r.m_factored = row.at("m_factored").get<std::string>();
        r.cubefree = row.at("cubefree").get<bool>();
        r.squarefree = row.at("squarefree").get<bool>();
        for (const auto& p : row.at("squared_primes_2mod3")) r.squared_primes_2mod3.emplace_back(p.get<std::string>());
        r.odd_class_candidate = row.at("odd_class_candidate").get<bool>();
        auto get_opt_bool = [&row](const char* key) -> std::optional<bool> {
            if (row.at(key).is_null()) return std::nullopt;
            return row.at(key).get<bool>();
        };
        if (!row.at("root_number").is_null()) r.root_number = row.at("root_number").get<int>();
        r.family_point_ok = get_opt_bool("family_point_ok");
        r.unit_identity_ok = get_opt_bool("unit_identity_ok");
        r.norm_identity_ok = get_opt_bool("norm_identity_ok");
        r.cube_identity_ok = get_opt_bool("cube_identity_ok");
        r.doubling_identity_ok = get_opt_bool("doubling_identity_ok");
        if (!row.at("class_h").is_null()) r.class_h = Int(row.at("class_h").get<std::string>());
        if (!row.at("class_structure").is_null()) r.class_structure = row.at("class_structure").get<std::string>();
        r.class_stabilized = get_opt_bool("class_stabilized");
        r.hcf_found = get_opt_bool("hcf_found");
        if (!row.at("hcf_alpha").is_null()) r.hcf_alpha = row.at("hcf_alpha").get<std::string>();
        if (!row.at("rank").is_null()) r.rank_annotation = row.at("rank").get<std::string>();
        for (const auto& e : row.at("errors")) r.errors.push_back(e.get<std::string>());
        report.rows.push_back(std::move(r));
    }
    return report;
}

}  // namespace cubiclab::scan
