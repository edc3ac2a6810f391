#include "pmrank/result.hpp"

#include "pmrank/pmx.hpp"

namespace pmrank {

using nlohmann::ordered_json;

ordered_json to_json(const ResultDocument& doc) {
    ordered_json j;
    j["rank"] = doc.rank;
    j["column_rank_profile"] = doc.column_rank_profile;
    j["independent_rows"] = doc.independent_rows;
    if (doc.kernel) {
        const auto& k = *doc.kernel;
        ordered_json pivots = ordered_json::array();
        for (const auto& p : pivot_profile(k.basis, k.shift)) {
            if (p)
                pivots.push_back({{"index", p->index}, {"degree", p->degree}});
            else
                pivots.push_back(nullptr);
        }
        j["kernel"] = {{"shift", k.shift.values()},
                       {"rows", k.basis.rows()},
                       {"pivots", pivots},
                       {"pmx", serialize_pmx(k.basis)}};
    }
    j["stats"] = doc.stats;
    return j;
}

ResultDocument result_from_json(const ordered_json& j) {
    ResultDocument doc;
    doc.rank = j.at("rank").get<std::size_t>();
    doc.column_rank_profile = j.at("column_rank_profile").get<IndexList>();
    doc.independent_rows = j.at("independent_rows").get<IndexList>();
    if (j.contains("kernel"))
        doc.kernel = KernelSection{Shift(j["kernel"].at("shift").get<std::vector<std::int64_t>>()),
                                   parse_pmx(j["kernel"].at("pmx").get<std::string>())};
    if (j.contains("stats")) doc.stats = j["stats"];
    return doc;
}

ordered_json stats_json(const KernelStats& s) {
    ordered_json rel = ordered_json::array();
    for (const auto& r : s.relation_steps)
        rel.push_back({{"depth", r.depth},
                       {"rows", r.rows},
                       {"cols", r.cols},
                       {"mu", r.mu},
                       {"order", r.order},
                       {"residual_rows", r.residual_rows},
                       {"outside_kernel", r.outside_kernel},
                       {"rank", r.rank}});
    return {{"field_ops", s.field_ops},
            {"calls", s.calls},
            {"max_depth", s.max_depth},
            {"split_steps", s.split_steps.size()},
            {"relation_steps", rel}};
}

ordered_json stats_json(const CrpStats& s, std::size_t m) {
    ordered_json rounds = ordered_json::array();
    for (const auto& r : s.rounds)
        rounds.push_back({{"theta", r.theta},
                          {"k", r.k},
                          {"ell", r.ell},
                          {"degree_sum", r.degree_sum},
                          {"rank_after", r.rank_after}});
    return {{"field_ops", s.field_ops},
            {"k_sum", s.k_sum()},
            {"max_window_multiplicity", s.max_window_multiplicity(m)},
            {"kernel_calls", s.kernel.calls},
            {"kernel_max_depth", s.kernel.max_depth},
            {"rounds", rounds}};
}

} // namespace pmrank
