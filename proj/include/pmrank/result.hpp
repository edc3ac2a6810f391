#pragma once

#include "pmrank/crp.hpp"
#include "pmrank/kernel_rank.hpp"

#include <json.hpp>

#include <optional>

namespace pmrank {

struct KernelSection {
    Shift shift;
    PolyMatrix basis;
};

/// Machine-readable output of the CLI commands.
struct ResultDocument {
    std::size_t rank = 0;
    IndexList column_rank_profile;
    IndexList independent_rows;
    std::optional<KernelSection> kernel;
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const ResultDocument& doc);
/// Reads back the fields written by to_json; the kernel pmx block is parsed.
ResultDocument result_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json stats_json(const KernelStats& s);
nlohmann::ordered_json stats_json(const CrpStats& s, std::size_t m);

} // namespace pmrank
