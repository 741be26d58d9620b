// energylab command-line front end.
//
// Subcommands: energy, zeta-moment, gcdsum, the experiment harnesses
// (repulsion, ap-search, shift-growth, tl-scan, incidence, product-growth,
// identities) and plot. Exit codes: 0 ok, 2 usage, 3 domain/ceiling,
// 4 I/O. Every stochastic command takes --seed and reproduces identical
// measured bytes for identical invocations (timestamps excluded via
// --no-timestamps).

#include <atomic>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "energylab/bounds.hpp"
#include "energylab/energy.hpp"
#include "energylab/errors.hpp"
#include "energylab/experiments.hpp"
#include "energylab/generator.hpp"
#include "energylab/intset.hpp"
#include "energylab/numtheory.hpp"
#include "energylab/record.hpp"
#include "energylab/svg.hpp"
#include "energylab/weight.hpp"
#include "energylab/zeta.hpp"

namespace {

std::atomic<bool> g_interrupt{false};

void on_sigint(int) { g_interrupt.store(true); }

using energylab::Json;

// One human-readable line per parameter point.
std::string summarize(const energylab::ResultRecord& r) {
    std::string line = r.kind;
    for (auto it = r.params.begin(); it != r.params.end(); ++it) {
        if (!it.value().is_structured()) line += " " + it.key() + "=" + it.value().dump();
    }
    static const char* headline[] = {"normalized_energy", "ap_length",      "max_ratio", "exponent",
                                     "sigma",             "product_size",   "parseval_mc", "all_contained",
                                     "holds_at_plus_5se", "t_energy"};
    for (const char* key : headline)
        if (r.measured.contains(key)) {
            line += std::string(" ") + key + "=" + r.measured[key].dump();
            break;
        }
    return line;
}

struct ExperimentFlags {
    std::string config_path;
    std::string out_path;
    std::string format = "jsonl";
    bool no_timestamps = false;
};

// Shared experiment flags; per-experiment flags are registered by the
// caller against the same config object.
void add_common(CLI::App* cmd, ExperimentFlags& flags, energylab::ExperimentConfig& cfg) {
    cmd->add_option("--config", flags.config_path, "JSON config file; inline flags override its fields");
    cmd->add_option("--out", flags.out_path, "output path (stdout when omitted)");
    cmd->add_option("--format", flags.format, "jsonl|csv")->check(CLI::IsMember({"jsonl", "csv"}));
    cmd->add_flag("--no-timestamps", flags.no_timestamps, "zero out durations for byte-stable output");
    cmd->add_option("--seed", cfg.seed, "seed for any stochastic step");
    cmd->add_option("--threads", cfg.threads, "worker threads inside energy counting");
}

int finish_experiment(const std::string& kind, const ExperimentFlags& flags, energylab::ExperimentConfig cfg) {
    cfg.kind = kind;
    cfg.interrupt = &g_interrupt;
    const energylab::RunResult result = energylab::run_experiment(cfg);
    const auto format =
        flags.format == "csv" ? energylab::OutputFormat::csv : energylab::OutputFormat::jsonl;
    if (!flags.out_path.empty()) {
        energylab::persist(result.records, flags.out_path, format, flags.no_timestamps, result.truncated);
        for (const auto& r : result.records) std::cout << summarize(r) << '\n';
    } else {
        std::cout << energylab::render_records(result.records, format, flags.no_timestamps, result.truncated);
    }
    return result.truncated ? 130 : 0;
}

// Apply --config file under explicitly passed flags: parse the file first,
// then re-parse argv so the command line wins.
energylab::ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw energylab::io_error("cannot open config: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw energylab::io_error(path + ": invalid JSON");
    return energylab::config_from_json(j);
}

std::vector<std::int64_t> parse_i64_list(const std::string& csv, const char* what) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            out.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw energylab::usage_error(std::string(what) + ": invalid integer '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw energylab::usage_error(std::string(what) + ": invalid number '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_sigint);
    CLI::App app{"exact and Monte Carlo arithmetic-combinatorics computations"};
    app.require_subcommand(1);

    // ---- energy ----------------------------------------------------------
    std::string en_op, en_set_a, en_set_b;
    int en_k = 1, en_threads = 1;
    auto* en = app.add_subcommand("energy", "exact set energies");
    en->add_option("--op", en_op, "add|mul|t")->required()->check(CLI::IsMember({"add", "mul", "t"}));
    en->add_option("--k", en_k, "fold count for --op t");
    en->add_option("--set-a", en_set_a, "generator spec or file:PATH")->required();
    en->add_option("--set-b", en_set_b, "second set (add/mul only)");
    en->add_option("--threads", en_threads, "worker threads");

    // ---- zeta-moment -----------------------------------------------------
    std::string zm_mode;
    std::int64_t zm_z = 0;
    double zm_alpha = 0;
    int zm_l = 1, zm_threads = 1;
    std::uint64_t zm_samples = 100000, zm_seed = 0;
    auto* zm = app.add_subcommand("zeta-moment", "moments of the restricted Euler product");
    zm->add_option("--mode", zm_mode, "exact|mc")->required()->check(CLI::IsMember({"exact", "mc"}));
    zm->add_option("--z", zm_z, "prime range [z, 2z)")->required();
    zm->add_option("--alpha", zm_alpha, "exponent alpha > 0")->required();
    zm->add_option("--l", zm_l, "moment order: estimates E|Z|^(2l)")->required();
    zm->add_option("--samples", zm_samples, "Monte Carlo samples (mc mode)");
    zm->add_option("--seed", zm_seed, "seed (mc mode)");
    zm->add_option("--threads", zm_threads, "worker threads (mc mode)");

    // ---- gcdsum ----------------------------------------------------------
    std::string gs_weight;
    double gs_alpha = 1.0;
    std::int64_t gs_trunc = 1000000;
    auto* gs = app.add_subcommand("gcdsum", "GCD sum of a weight with certified zeta truncation");
    gs->add_option("--weight", gs_weight, "weight file (n<TAB>w lines)")->required();
    gs->add_option("--alpha", gs_alpha, "exponent, 2*alpha > 1")->required();
    gs->add_option("--trunc", gs_trunc, "zeta truncation");

    // ---- experiments -----------------------------------------------------
    energylab::ExperimentConfig cfg;
    ExperimentFlags ex_flags;
    std::string opt_l_values, opt_d_values, opt_alphas, opt_shifts, opt_z_values;

    auto* rep = app.add_subcommand("repulsion", "E^x(d*P^(l), S) across an l sweep");
    add_common(rep, ex_flags, cfg);
    rep->add_option("--l-values", opt_l_values, "comma-separated l sweep");
    rep->add_option("--d-values", opt_d_values, "comma-separated dilations (default 1)");
    rep->add_option("--s-gen", cfg.s_gen, "S generator");
    rep->add_option("--eps", cfg.eps, "epsilon of the hypothesis/threshold");
    rep->add_option("--const-hyp", cfg.const_hyp, "suppressed hypothesis constant");

    auto* aps = app.add_subcommand("ap-search", "longest zero-based AP in S");
    add_common(aps, ex_flags, cfg);
    aps->add_option("--s-gen", cfg.s_gen, "S generator");

    auto* sg = app.add_subcommand("shift-growth", "|(A-a)S| distribution over shifts a in A");
    add_common(sg, ex_flags, cfg);
    sg->add_option("--a-gen", cfg.a_gen, "A generator");
    sg->add_option("--s-gen", cfg.s_gen, "S generator");
    sg->add_option("--alpha", cfg.alpha, "exponent in [0, 1/6)");
    sg->add_option("--const-c", cfg.const_c, "growth constant C");
    sg->add_option("--const-hyp", cfg.const_hyp, "hypothesis constant");
    sg->add_option("--max-shifts", cfg.max_shifts, "sample this many shifts when |A| is larger");

    auto* tl = app.add_subcommand("tl-scan", "T_{2^j} decay of a convex integer image");
    add_common(tl, ex_flags, cfg);
    tl->add_option("--f", cfg.f_gen, "image generator, e.g. pow:3,64");
    tl->add_option("--j-max", cfg.j_max, "scan j = 1..j_max");
    tl->add_option("--const-c", cfg.const_c, "decay constant c");

    auto* inc = app.add_subcommand("incidence", "count f(i) + b = c and E^+(f(I), B)");
    add_common(inc, ex_flags, cfg);
    inc->add_option("--f", cfg.f_gen, "image generator");
    inc->add_option("--b-gen", cfg.b_gen, "B generator");
    inc->add_option("--c-gen", cfg.c_gen, "C generator");
    inc->add_option("--delta", cfg.delta, "exponent delta");

    auto* pg = app.add_subcommand("product-growth", "|(A+z_1)...(A+z_{2^m})|");
    add_common(pg, ex_flags, cfg);
    pg->add_option("--a-gen", cfg.a_gen, "A generator");
    pg->add_option("--m", cfg.m, "2^m factors, m <= 3");
    pg->add_option("--shifts", opt_shifts, "comma-separated nonzero shifts (2^m of them)");
    pg->add_option("--const-c", cfg.const_c, "growth constant c");

    auto* ids = app.add_subcommand("identities", "Parseval, T_2, GCD-sum and transfer-bound checks");
    add_common(ids, ex_flags, cfg);
    ids->add_option("--samples", cfg.samples, "Monte Carlo samples");
    ids->add_option("--weights", cfg.weights_count, "number of random weights");
    ids->add_option("--support-max", cfg.weight_support_max, "support bound for GCD weights");
    ids->add_option("--alphas", opt_alphas, "comma-separated GCD alphas");
    ids->add_option("--z-values", opt_z_values, "comma-separated Euler z values");

    // ---- plot ------------------------------------------------------------
    std::string pl_in, pl_x, pl_y, pl_out, pl_title;
    bool pl_logx = false, pl_logy = false;
    auto* pl = app.add_subcommand("plot", "standalone SVG chart from a JSONL result file");
    pl->add_option("--in", pl_in, "input JSONL")->required();
    pl->add_option("--x", pl_x, "dotted field path, e.g. params.l")->required();
    pl->add_option("--y", pl_y, "dotted field path, e.g. measured.normalized_energy")->required();
    pl->add_option("--out", pl_out, "output SVG path")->required();
    pl->add_flag("--logx", pl_logx, "log-scale x");
    pl->add_flag("--logy", pl_logy, "log-scale y");
    pl->add_option("--title", pl_title, "chart title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (en->parsed()) {
            energylab::EnergyOptions opts{en_threads};
            const energylab::IntSet a = energylab::generate(en_set_a);
            energylab::EnergyValue e;
            Json sizes = Json::array();
            if (en_op == "t") {
                if (!en_set_b.empty()) throw energylab::usage_error("energy: --set-b conflicts with --op t");
                e = energylab::t_energy(a, en_k, energylab::SetOp::sum, opts);
                sizes.push_back(a.size());
            } else {
                if (en_set_b.empty()) throw energylab::usage_error("energy: --set-b required for add/mul");
                const energylab::IntSet b = energylab::generate(en_set_b);
                e = en_op == "add" ? energylab::additive_energy(a, b, opts)
                                   : energylab::multiplicative_energy(a, b, opts);
                sizes.push_back(a.size());
                sizes.push_back(b.size());
            }
            Json j;
            j["op"] = en_op;
            if (en_op == "t") j["k"] = en_k;
            j["sizes"] = sizes;
            j["energy"] = energylab::json_count(e.value);
            j["diagonal_floor"] = energylab::json_count(e.diagonal_floor);
            if (e.zero_warning) j["zero_warning"] = true;
            std::cout << energylab::dump_json(j) << '\n';
            return 0;
        }
        if (zm->parsed()) {
            Json j;
            j["mode"] = zm_mode;
            j["z"] = zm_z;
            j["alpha"] = zm_alpha;
            j["l"] = zm_l;
            if (zm_mode == "exact") {
                const energylab::PrimeTable table = energylab::sieve_primes(2 * zm_z);
                const energylab::ExactZMoment m = energylab::exact_Z_moment(zm_z, zm_alpha, zm_l, table);
                j["value"] = m.value;
                j["bound"] = m.bound;
                j["bound_exponent"] = m.bound_exponent;
                j["hypothesis_l_le_z_alpha"] = m.hypothesis_ok;
            } else {
                energylab::SampledExpr expr;
                expr.kind = energylab::SampledExpr::Kind::restricted_euler;
                expr.alpha = zm_alpha;
                expr.z = zm_z;
                const energylab::MomentEstimate est =
                    energylab::mc_moment(expr, zm_l, zm_samples, zm_seed, zm_threads);
                j["samples"] = est.samples;
                j["seed"] = zm_seed;
                j["mean"] = est.mean;
                j["std_error"] = est.std_error;
                j["target"] = est.target;
            }
            std::cout << energylab::dump_json(j) << '\n';
            return 0;
        }
        if (gs->parsed()) {
            const energylab::Weight w = energylab::read_weight_file(gs_weight);
            const energylab::GcdSum g = energylab::gcd_sum(w, gs_alpha, gs_trunc);
            Json j;
            j["weight"] = gs_weight;
            j["support"] = w.support_size();
            j["alpha"] = gs_alpha;
            j["trunc"] = gs_trunc;
            j["value"] = g.value;
            j["interval_width"] = g.interval_width;
            std::cout << energylab::dump_json(j) << '\n';
            return 0;
        }
        if (pl->parsed()) {
            const auto records = energylab::read_jsonl(pl_in);
            std::vector<std::pair<double, double>> points;
            for (const auto& rec : records) {
                const Json* xv = energylab::lookup_path(rec, pl_x);
                const Json* yv = energylab::lookup_path(rec, pl_y);
                if (!xv) throw energylab::io_error("plot: field '" + pl_x + "' missing from a record");
                if (!yv) throw energylab::io_error("plot: field '" + pl_y + "' missing from a record");
                auto as_double = [](const Json& v, const std::string& field) {
                    if (v.is_number()) return v.get<double>();
                    if (v.is_string()) {
                        try {
                            return std::stod(v.get<std::string>());
                        } catch (const std::exception&) {
                        }
                    }
                    throw energylab::io_error("plot: field '" + field + "' is not numeric");
                };
                points.emplace_back(as_double(*xv, pl_x), as_double(*yv, pl_y));
            }
            energylab::ChartOptions opt;
            opt.x_label = pl_x;
            opt.y_label = pl_y;
            opt.log_x = pl_logx;
            opt.log_y = pl_logy;
            opt.title = pl_title;
            const std::string svg = energylab::render_chart(points, opt);
            std::ofstream out(pl_out, std::ios::binary | std::ios::trunc);
            if (!out) throw energylab::io_error("plot: cannot write " + pl_out);
            out << svg;
            if (!out) throw energylab::io_error("plot: write failed for " + pl_out);
            return 0;
        }

        // Experiment subcommands share the config object. Apply --config
        // first, then re-read the explicitly passed flags over it.
        for (CLI::App* cmd : {rep, aps, sg, tl, inc, pg, ids}) {
            if (!cmd->parsed()) continue;
            if (!ex_flags.config_path.empty()) {
                energylab::ExperimentConfig file_cfg = load_config_file(ex_flags.config_path);
                // Inline flags already parsed into cfg; copy file values
                // only for fields the command line left untouched.
                auto passed = [&](const std::string& flag) {
                    const CLI::Option* o = cmd->get_option_no_throw(flag);
                    return o && o->count() > 0;
                };
                if (!passed("--s-gen") && !file_cfg.s_gen.empty()) cfg.s_gen = file_cfg.s_gen;
                if (!passed("--a-gen") && !file_cfg.a_gen.empty()) cfg.a_gen = file_cfg.a_gen;
                if (!passed("--b-gen") && !file_cfg.b_gen.empty()) cfg.b_gen = file_cfg.b_gen;
                if (!passed("--c-gen") && !file_cfg.c_gen.empty()) cfg.c_gen = file_cfg.c_gen;
                if (!passed("--f") && !file_cfg.f_gen.empty()) cfg.f_gen = file_cfg.f_gen;
                if (!passed("--l-values") && !file_cfg.l_values.empty()) cfg.l_values = file_cfg.l_values;
                if (!passed("--d-values")) cfg.d_values = file_cfg.d_values;
                if (!passed("--alphas")) cfg.alphas = file_cfg.alphas;
                if (!passed("--z-values")) cfg.z_values = file_cfg.z_values;
                if (!passed("--alpha")) cfg.alpha = file_cfg.alpha;
                if (!passed("--eps")) cfg.eps = file_cfg.eps;
                if (!passed("--delta")) cfg.delta = file_cfg.delta;
                if (!passed("--const-c")) cfg.const_c = file_cfg.const_c;
                if (!passed("--const-hyp")) cfg.const_hyp = file_cfg.const_hyp;
                if (!passed("--j-max")) cfg.j_max = file_cfg.j_max;
                if (!passed("--m")) cfg.m = file_cfg.m;
                if (!passed("--shifts")) cfg.shifts = file_cfg.shifts;
                if (!passed("--samples")) cfg.samples = file_cfg.samples;
                if (!passed("--seed")) cfg.seed = file_cfg.seed;
                if (!passed("--weights")) cfg.weights_count = file_cfg.weights_count;
                if (!passed("--support-max")) cfg.weight_support_max = file_cfg.weight_support_max;
                if (!passed("--max-shifts")) cfg.max_shifts = file_cfg.max_shifts;
                if (!passed("--threads")) cfg.threads = file_cfg.threads;
            }
            if (!opt_l_values.empty()) cfg.l_values = parse_i64_list(opt_l_values, "--l-values");
            if (!opt_d_values.empty()) cfg.d_values = parse_i64_list(opt_d_values, "--d-values");
            if (!opt_alphas.empty()) cfg.alphas = parse_double_list(opt_alphas, "--alphas");
            if (!opt_z_values.empty()) cfg.z_values = parse_i64_list(opt_z_values, "--z-values");
            if (!opt_shifts.empty()) cfg.shifts = parse_i64_list(opt_shifts, "--shifts");
            static const char* kinds[] = {"repulsion",  "ap-search", "shift-growth", "tl-scan",
                                          "incidence", "product-growth", "identities"};
            const CLI::App* cmds[] = {rep, aps, sg, tl, inc, pg, ids};
            for (std::size_t i = 0; i < 7; ++i)
                if (cmds[i] == cmd) return finish_experiment(kinds[i], ex_flags, cfg);
        }
        throw energylab::usage_error("no subcommand given");
    } catch (const energylab::error& e) {
        std::cerr << "energylab: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "energylab: internal error: " << e.what() << '\n';
        return 1;
    }
}
