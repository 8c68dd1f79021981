#pragma once

// Batch driver: per-b records over a range (factorization, root numbers,
// family point and identity checks, optional class groups and certificates),
// with deterministic TSV/JSON emission.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubiclab/numbers.hpp"

namespace cubiclab::scan {

inline constexpr const char* kToolVersion = "cubiclab 0.1.0";

struct ScanConfig {
    long b_min = 1;
    long b_max = 10;
    bool check_rootnum = true;
    bool check_family = true;
    bool check_identities = true;
    bool check_classgroup = false;
    bool check_hcf = false;
    long search_t_max = 4;
    Int search_r_max = Int(10000);
    Int relation_bound = Int(12);
    int threads = 1;
    std::string rank_annotation_path;  // empty = none
};

struct ScanRow {
    long b = 0;
    Int m;
    std::string m_factored;
    bool cubefree = false;
    bool squarefree = false;
    std::vector<Int> squared_primes_2mod3;
    bool odd_class_candidate = false;  // exactly one squared prime = 2 mod 3
    std::optional<int> root_number;
    std::optional<bool> family_point_ok;
    std::optional<bool> unit_identity_ok;
    std::optional<bool> norm_identity_ok;
    std::optional<bool> cube_identity_ok;
    std::optional<bool> doubling_identity_ok;
    std::optional<Int> class_h;
    std::optional<std::string> class_structure;
    std::optional<bool> class_stabilized;
    std::optional<bool> hcf_found;
    std::optional<std::string> hcf_alpha;
    std::optional<std::string> rank_annotation;
    std::vector<std::string> errors;  // per-b failures, never abort the scan
};

struct ScanReport {
    std::string tool_version;
    ScanConfig config;
    std::vector<ScanRow> rows;  // sorted by b
};

ScanReport run_scan(const ScanConfig& config);

enum class Format { tsv, json };

// Byte-stable for a fixed report and tool version.
std::string emit(const ScanReport& report, Format format);

ScanReport parse_json(const std::string& text);

// "b<TAB>rank<TAB>note" lines, '#' comments; values are external annotations.
std::map<long, std::string> load_rank_annotations(const std::string& path);

}  // namespace cubiclab::scan
