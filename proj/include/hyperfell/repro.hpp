#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "hyperfell/builtin_geometry.hpp"
#include "hyperfell/hyperspace.hpp"
#include "hyperfell/props.hpp"

namespace hyperfell {

struct SubClaim {
    std::string id;
    std::string description;
    std::string expected;
    std::string observed;
    bool matched = false;
    nlohmann::ordered_json details;
    std::vector<std::string> notes;
};

struct ReproReport {
    std::string example;
    std::vector<SubClaim> claims;
    std::vector<std::string> notes;
    std::vector<std::string> plot_files;

    bool all_matched() const {
        for (const auto& c : claims)
            if (!c.matched) return false;
        return true;
    }
};

struct ReproConfig {
    int resolution_2d = kDefaultResolution;
    int resolution_3d = 32;
    int m_max = 20;
    int m_max_hausdorff = 4;
    int points_per_scene = 5;
    int thm34_points = 6;
    // also measure the divergence along the back top edge (the u-side
    // mirror of the standard check)
    bool ex42_u_branch = false;
    std::uint64_t seed = kDefaultSeed;
    std::string plot_dir;  // empty: no CSV output
};

std::vector<std::string> repro_example_ids();  // ex25 ex35 ex36 ex41 ex42 thm34

ReproReport run_repro(const std::string& example_id, const ReproConfig& cfg = {});

}  // namespace hyperfell
