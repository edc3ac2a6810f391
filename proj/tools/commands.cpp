#include "commands.hpp"

#include "pmrank/crp.hpp"
#include "pmrank/errors.hpp"
#include "pmrank/kernel_rank.hpp"
#include "pmrank/oracle.hpp"
#include "pmrank/pmx.hpp"
#include "pmrank/result.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace pmrank::cli {

namespace {

using nlohmann::ordered_json;

struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

KernelOptions release_options() {
    KernelOptions o;
    o.check_exactness = false;
    return o;
}

Shift parse_shift(const std::string& text, const PolyMatrix& F) {
    if (text == "auto") return auto_shift(F);
    std::vector<std::int64_t> v;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("--shift: '" + item + "' is not an integer");
        }
    }
    if (v.size() != F.rows())
        throw UsageError("--shift has " + std::to_string(v.size()) + " entries, the matrix has " +
                         std::to_string(F.rows()) + " rows");
    return Shift(std::move(v));
}

void emit(std::ostream& out, const ResultDocument& doc) { out << to_json(doc).dump(2) << '\n'; }

int cmd_rank_profile(const std::string& path, const std::string& algorithm, bool check, std::ostream& out) {
    const PolyMatrix F = read_pmx_file(path);
    ResultDocument doc;
    if (algorithm == "oracle") {
        doc.column_rank_profile = oracle::crp_oracle(F);
        doc.independent_rows = oracle::row_rank_profile_oracle(F);
        doc.rank = doc.column_rank_profile.size();
        doc.stats = {{"algorithm", "oracle"}};
    } else {
        CrpResult r = column_rank_profile(F, release_options());
        doc.rank = r.rank;
        doc.column_rank_profile = r.rank_profile;
        doc.independent_rows = r.rows;
        doc.stats = stats_json(r.stats, F.rows());
        doc.stats["algorithm"] = "fast";
    }
    if (check) {
        const IndexList other = algorithm == "oracle" ? column_rank_profile(F, release_options()).rank_profile
                                                      : oracle::crp_oracle(F);
        const bool rows_ok = oracle::rank_oracle(select_rows(F, doc.independent_rows)) == doc.rank;
        doc.stats["check"] = other == doc.column_rank_profile && rows_ok ? "agree" : "mismatch";
        emit(out, doc);
        if (other != doc.column_rank_profile) throw Mismatch("fast and oracle column rank profiles differ");
        if (!rows_ok) throw Mismatch("reported rows are not linearly independent");
        return exit_ok;
    }
    emit(out, doc);
    return exit_ok;
}

int cmd_kernel(const std::string& path, const std::string& shift_text, bool verify, const std::string& kernel_out,
               std::ostream& out) {
    const PolyMatrix F = read_pmx_file(path);
    const Shift s = parse_shift(shift_text, F);
    KernelRankResult r = kernel_basis_rank_profile(F, s, release_options());
    ResultDocument doc;
    doc.rank = r.rank_profile.size();
    doc.column_rank_profile = r.rank_profile;
    // non-pivot indices of an ordered weak Popov kernel basis index independent rows
    std::vector<bool> pivot(F.rows() + 1, false);
    for (const auto& p : pivot_profile(r.kernel, s))
        if (p) pivot[p->index] = true;
    for (std::size_t i = 1; i <= F.rows(); ++i)
        if (!pivot[i]) doc.independent_rows.push_back(i);
    doc.stats = stats_json(r.stats);
    std::string failure;
    if (verify) {
        if (!matmul(r.kernel, F).is_zero())
            failure = "K * F is nonzero";
        else if (!is_ordered_weak_popov(r.kernel, s))
            failure = "K is not in s-ordered weak Popov form";
        doc.stats["verify"] = failure.empty() ? "pass" : "fail";
    }
    doc.kernel = KernelSection{s, std::move(r.kernel)};
    if (!kernel_out.empty()) write_pmx_file(kernel_out, doc.kernel->basis);
    emit(out, doc);
    if (!failure.empty()) throw Mismatch(failure);
    return exit_ok;
}

int cmd_gen(const oracle::InstanceSpec& spec, const std::string& path, std::ostream& out) {
    const PolyMatrix F = oracle::random_instance(spec);
    if (path.empty() || path == "-")
        out << serialize_pmx(F);
    else
        write_pmx_file(path, F);
    return exit_ok;
}

struct BenchRow {
    std::size_t rank;
    std::uint64_t field_ops;
    std::size_t rounds;
    std::size_t kernel_calls;
    double seconds;
};

int cmd_bench(std::size_t m, std::size_t n, std::size_t d, std::uint64_t p, std::uint64_t seed,
              std::vector<std::size_t> ranks, unsigned jobs, std::ostream& out, std::ostream& err) {
    if (ranks.empty()) {
        const std::size_t full = std::min(m, n);
        ranks = {std::min<std::size_t>(2, full), full / 4, full / 2, full};
    }
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    for (std::size_t r : ranks)
        if (r > std::min(m, n)) throw UsageError("rank " + std::to_string(r) + " exceeds min(m, n)");

    std::vector<BenchRow> rows(ranks.size());
    std::vector<std::string> errors(ranks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < ranks.size();) {
            try {
                const PolyMatrix F = oracle::random_instance({m, n, ranks[k], d, p, seed + ranks[k]});
                const auto t0 = std::chrono::steady_clock::now();
                CrpResult r = column_rank_profile(F, release_options());
                const auto t1 = std::chrono::steady_clock::now();
                if (r.rank != ranks[k]) throw InternalError("rank " + std::to_string(r.rank) + " reported");
                rows[k] = {ranks[k], r.stats.field_ops, r.stats.rounds.size(), r.stats.kernel.calls,
                           std::chrono::duration<double>(t1 - t0).count()};
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(ranks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (std::size_t k = 0; k < ranks.size(); ++k)
        if (!errors[k].empty()) throw InternalError("bench rank " + std::to_string(ranks[k]) + ": " + errors[k]);

    err << std::setw(6) << "rank" << std::setw(16) << "field_ops" << std::setw(8) << "rounds" << std::setw(8)
        << "calls" << std::setw(12) << "seconds" << '\n';
    ordered_json runs = ordered_json::array();
    for (const auto& r : rows) {
        err << std::setw(6) << r.rank << std::setw(16) << r.field_ops << std::setw(8) << r.rounds << std::setw(8)
            << r.kernel_calls << std::setw(12) << std::fixed << std::setprecision(4) << r.seconds << '\n';
        runs.push_back({{"rank", r.rank},
                        {"field_ops", r.field_ops},
                        {"rounds", r.rounds},
                        {"kernel_calls", r.kernel_calls},
                        {"seconds", r.seconds}});
    }
    ordered_json doc = {{"rows", m}, {"cols", n}, {"degree", d}, {"modulus", p}, {"seed", seed}, {"runs", runs}};
    out << doc.dump(2) << '\n';
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rank profiles and kernel bases of polynomial matrices over GF(p)", "pmrank"};
    app.require_subcommand(1);

    std::string path, algorithm = "fast", shift = "auto", kernel_out, gen_out;
    bool check = false, verify = false;
    auto* rp = app.add_subcommand("rank-profile", "Column rank profile and independent rows");
    rp->add_option("path", path, "pmx input")->required();
    rp->add_option("--algorithm", algorithm, "fast or oracle")->check(CLI::IsMember({"fast", "oracle"}));
    rp->add_flag("--check", check, "Run both algorithms; exit 3 on disagreement");

    auto* kr = app.add_subcommand("kernel", "Shifted kernel basis in ordered weak Popov form");
    kr->add_option("path", path, "pmx input")->required();
    kr->add_option("--shift", shift, "'auto' or a comma-separated list, one entry per row");
    kr->add_flag("--verify", verify, "Check K*F = 0 and the weak Popov form; exit 3 on failure");
    kr->add_option("--kernel-out", kernel_out, "Also write the kernel basis as pmx");

    oracle::InstanceSpec spec;
    auto* gen = app.add_subcommand("gen", "Seeded random matrix of prescribed rank");
    gen->add_option("--rows", spec.rows)->required();
    gen->add_option("--cols", spec.cols)->required();
    gen->add_option("--rank", spec.rank)->required();
    gen->add_option("--degree", spec.degree)->required();
    gen->add_option("--modulus", spec.modulus)->required();
    gen->add_option("--seed", spec.seed)->required();
    gen->add_option("-o,--output,path", gen_out, "Output file, stdout when omitted");

    std::size_t bm = 64, bn = 64, bd = 2;
    std::uint64_t bp = 97, bseed = 1;
    std::vector<std::size_t> branks;
    unsigned jobs = 1;
    auto* bench = app.add_subcommand("bench", "Field-operation counts across a rank sweep");
    bench->add_option("--rows", bm);
    bench->add_option("--cols", bn);
    bench->add_option("--degree", bd);
    bench->add_option("--modulus", bp);
    bench->add_option("--seed", bseed);
    bench->add_option("--ranks", branks, "Ranks to sweep, default 2, r/4, r/2, r")->delimiter(',');
    bench->add_option("--jobs", jobs, "Worker threads");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (rp->parsed()) return cmd_rank_profile(path, algorithm, check, out);
        if (kr->parsed()) return cmd_kernel(path, shift, verify, kernel_out, out);
        if (gen->parsed()) return cmd_gen(spec, gen_out, out);
        return cmd_bench(bm, bn, bd, bp, bseed, branks, jobs, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << path << ": " << e.what() << '\n';
        return exit_parse;
    } catch (const Mismatch& e) {
        err << "check failed: " << e.what() << '\n';
        return exit_mismatch;
    } catch (const PreconditionError& e) {
        err << "precondition violated";
        if (e.row()) err << " at row " << e.row();
        err << ": " << e.what() << '\n';
        return exit_precondition;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

} // namespace pmrank::cli
