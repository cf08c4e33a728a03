// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "json_io.hpp"
#include "verify.hpp"

using namespace cokernel_lab;
using namespace cokernel_lab::cli;

namespace {

constexpr const char* kSchemaVersion = "1.0.0";
constexpr const char* kVersion = "0.1.0";

struct Outcome {
    json config = json::object();
    std::optional<std::uint64_t> seed;
    json hypotheses = {{"eta_product_gt_half", nullptr}, {"l_not_dividing_P_of_q", nullptr}};
    json result;
    std::string summary;
    bool failed = false; ///< verify only
};

std::string utc_now()
{
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::optional<Residue> opt_a(const std::optional<std::int64_t>& a, Residue l)
{
    if (!a)
        return std::nullopt;
    const auto m = static_cast<std::int64_t>(l);
    return static_cast<Residue>(((*a % m) + m) % m);
}

std::vector<std::uint64_t> residue_sizes(const RingSpec& r)
{
    std::vector<std::uint64_t> out;
    for (const auto& f : r.factors())
        out.push_back(f.residue_size());
    return out;
}

void write_csv(const std::string& path, const std::string& body)
{
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot open CSV path " + path);
    out << body;
}

std::string coeff_list(const std::vector<mpz_class>& c)
{
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i)
        s += (i ? " " : "") + c[i].get_str();
    return s;
}

// ---- options ---------------------------------------------------------------

struct Opts {
    std::uint64_t Q = 3;
    double tol = 1e-12;
    std::string ring_text;
    std::string type_text;
    Residue l = 3;
    std::optional<std::int64_t> a;
    std::string p_text = "X";
    int e = 1;
    int m = 0;
    std::optional<int> m_max;
    int k = 1;
    bool brute = false;
    std::vector<std::string> conds;
    int n = 8;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 42;
    bool exhaustive = false;
    int workers = 1;
    std::string csv;
    double min_mass = 1e-7;
    std::uint32_t q = 13;
    int g = 1;
    std::string suite = "exact";
    std::string tamper;
};

// ---- subcommands -----------------------------------------------------------

Outcome run_eta(const Opts& o)
{
    Outcome r;
    r.config = {{"Q", o.Q}, {"tol", o.tol}};
    const auto ev = eta(o.Q, o.tol);
    r.result = {{"Q", o.Q}, {"tol", o.tol}, {"depth", ev.depth}, {"value", ev.value}};
    r.hypotheses["eta_product_gt_half"] = eta_product_gt_half({o.Q});
    std::ostringstream s;
    s.precision(16);
    s << "eta(" << o.Q << ") = " << ev.value << " (" << ev.depth << " factors)";
    r.summary = s.str();
    return r;
}

Outcome run_measure(const Opts& o)
{
    Outcome r;
    const RingSpec ring = parse_ring(o.ring_text, o.l, opt_a(o.a, o.l));
    const TypeKey key = parse_type(o.type_text, ring);
    const ModuleType t(ring, key);
    r.config = {{"ring", to_json(ring)}, {"type", to_json(key)}};
    const auto m = mu(t);
    json d = json::array();
    for (std::size_t i = 0; i < key.size(); ++i)
        d.push_back(d_invariant(key[i], ring.factors()[i].exponent()));
    r.result = {{"mu", to_json(m)}, {"aut_order", aut_order(t).get_str()}, {"d_invariants", d}};
    r.hypotheses["eta_product_gt_half"] = eta_product_gt_half(residue_sizes(ring));
    r.summary = "mu(" + to_string(key) + ") = " + rational_string(m.rational) + " * eta-factors";
    return r;
}

Outcome run_rank_dist(const Opts& o)
{
    Outcome r;
    const Poly p = parse_poly_arg(o.p_text, o.l, opt_a(o.a, o.l));
    if (!is_irreducible(p) || !p.is_monic())
        throw ValidationError("--p must be monic irreducible");
    if (o.e < 1)
        throw ValidationError("--e must be >= 1");
    const LocalRingSpec ring(p, o.e);
    const int hi = o.m_max.value_or(o.m);
    r.config = {{"ring", to_json(RingSpec({ring}))}, {"m", o.m}, {"m_max", hi}};
    json rows = json::array();
    bool all_equal = true;
    for (int m = o.m; m <= hi; ++m) {
        const auto direct = rank_distribution(ring, m);
        const auto pf = rank_distribution_partition_form(ring.residue_size(), ring.residue_degree(), o.e, m);
        all_equal &= direct == pf;
        rows.push_back({{"m", m}, {"direct", to_json(direct)}, {"partition_form", to_json(pf)}, {"equal", direct == pf}});
    }
    r.result = {{"rows", rows}, {"all_equal", all_equal}};
    r.hypotheses["eta_product_gt_half"] = eta_product_gt_half({ring.residue_size()});
    r.summary = "rank distribution rows: " + std::to_string(rows.size()) + (all_equal ? ", forms agree" : ", FORMS DISAGREE");
    return r;
}

Outcome run_moments(const Opts& o)
{
    Outcome r;
    const Poly p = parse_poly_arg(o.p_text, o.l, opt_a(o.a, o.l));
    if (!is_irreducible(p) || !p.is_monic())
        throw ValidationError("--p must be monic irreducible");
    if (o.e < 1 || o.k < 0)
        throw ValidationError("need --e >= 1 and --k >= 0");
    const LocalRingSpec local(p, o.e);
    const auto Q = local.residue_size();
    r.config = {{"ring", to_json(RingSpec({local}))}, {"k", o.k}, {"brute_force", o.brute}};
    const auto value = moment_rank(Q, o.e, o.k);
    r.result = {{"Q", Q}, {"e", o.e}, {"k", o.k}, {"value", value.get_str()}, {"brute_force", nullptr}};
    r.summary = "submodules of R_0^" + std::to_string(o.k) + ": " + value.get_str();
    if (o.brute) {
        const RingSpec ring({local});
        const ModuleType free_module(ring, {Partition(std::vector<int>(static_cast<std::size_t>(o.k), o.e))});
        const auto brute = count_submodules(free_module);
        r.result["brute_force"] = brute.get_str();
        r.result["equal"] = brute == value;
        r.summary += ", enumeration " + brute.get_str();
    }
    return r;
}

Outcome run_density(const Opts& o)
{
    Outcome r;
    if (o.conds.empty())
        throw ValidationError("at least one --cond P:m is required");
    const auto a = opt_a(o.a.value_or(1), o.l);
    std::vector<DivisorCondition> conds;
    json echo = json::array();
    for (const auto& c : o.conds) {
        conds.push_back(parse_condition(c, o.l, a));
        echo.push_back({{"p", to_json(conds.back().prime)}, {"m", conds.back().multiplicity}});
    }
    r.config = {{"l", o.l}, {"a", *a}, {"conditions", echo}};
    const auto pred = divisor_density(conds);
    json v = to_json(pred.value);
    v["hypothesis_eta_gt_half"] = pred.eta_product_gt_half;
    r.result = v;
    r.hypotheses["eta_product_gt_half"] = pred.eta_product_gt_half;
    std::ostringstream s;
    s.precision(10);
    s << "predicted density " << rational_string(pred.value.rational) << " * eta-factors = " << pred.value.value();
    r.summary = s.str();
    return r;
}

Outcome run_sim_cokernel(const Opts& o)
{
    Outcome r;
    const RingSpec ring = parse_ring(o.ring_text, o.l, opt_a(o.a, o.l));
    SampleConfig cfg{ring, o.n, o.trials, o.seed};
    cfg.mode = o.exhaustive ? SampleMode::Exhaustive : SampleMode::Random;
    cfg.workers = o.workers;
    if (o.n < 1)
        throw ValidationError("--n must be >= 1");
    if (o.workers < 1)
        throw ValidationError("--workers must be >= 1");
    r.config = {{"ring", to_json(ring)}, {"n", o.n}, {"trials", o.exhaustive ? json(nullptr) : json(o.trials)},
                {"exhaustive", o.exhaustive}, {"workers", o.workers}, {"min_mass", o.min_mass}};
    if (!o.exhaustive)
        r.seed = o.seed;
    const auto emp = sample_cokernels(cfg);
    const auto tv = tv_distance(emp, ring, o.min_mass);
    json counts = json::array();
    std::string csv = "type,count,empirical,theoretical\n";
    for (const auto& row : tv.rows) {
        const auto it = emp.counts.find(row.type);
        const std::uint64_t c = it == emp.counts.end() ? 0 : it->second;
        counts.push_back({{"type", to_json(row.type)}, {"count", c}, {"empirical", row.empirical}, {"theory", row.theory}});
        std::ostringstream line;
        line.precision(12);
        line << '"' << to_string(row.type) << "\"," << c << ',' << row.empirical << ',' << row.theory << '\n';
        csv += line.str();
    }
    r.result = {{"total", emp.total}, {"counts", counts}, {"tv_vs_theory", tv.tv}, {"truncation_deficit", tv.deficit}};
    if (ring.factor_count() > 1)
        r.result["factorization_gap"] = factorization_gap(emp);
    r.hypotheses["eta_product_gt_half"] = eta_product_gt_half(residue_sizes(ring));
    if (!o.csv.empty())
        write_csv(o.csv, csv);
    std::ostringstream s;
    s << emp.total << " cokernels, " << emp.counts.size() << " types, TV " << tv.tv << ", deficit " << tv.deficit;
    r.summary = s.str();
    return r;
}

json density_json(const DensityReport& d)
{
    json hist = json::array();
    for (const auto& h : d.multiplicity_histograms) {
        json row = json::object();
        for (const auto& [m, c] : h)
            row[std::to_string(m)] = c;
        hist.push_back(row);
    }
    json pred = to_json(d.predicted.value);
    pred["hypothesis_eta_gt_half"] = d.predicted.eta_product_gt_half;
    return {{"trials", d.trials}, {"hits", d.hits}, {"empirical", d.empirical}, {"standard_error", d.standard_error},
            {"predicted", pred}, {"multiplicity_histograms", hist}};
}

json independence_json(const IndependenceReport& r)
{
    return {{"table", {{r.table[0][0], r.table[0][1]}, {r.table[1][0], r.table[1][1]}}},
            {"trials", r.trials}, {"p1", r.p1}, {"p2", r.p2}, {"p12", r.p12}, {"gap", r.gap},
            {"standard_error", r.standard_error}, {"chi_square", r.chi_square}};
}

Outcome run_sim_curves(const Opts& o)
{
    Outcome r;
    if (o.conds.empty())
        throw ValidationError("at least one --cond P:m is required");
    if (o.workers < 1)
        throw ValidationError("--workers must be >= 1");
    const auto a = opt_a(o.a.value_or(1), o.l);
    CurveRunConfig cfg;
    cfg.l = o.l;
    cfg.q = o.q;
    cfg.g = o.g;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.exhaustive = o.exhaustive;
    cfg.workers = o.workers;
    json echo = json::array();
    for (const auto& c : o.conds) {
        cfg.conditions.push_back(parse_condition(c, o.l, a));
        echo.push_back({{"p", to_json(cfg.conditions.back().prime)}, {"m", cfg.conditions.back().multiplicity}});
    }
    r.config = {{"l", o.l}, {"q", o.q}, {"g", o.g}, {"a", *a}, {"conditions", echo},
                {"trials", o.exhaustive ? json(nullptr) : json(o.trials)}, {"exhaustive", o.exhaustive}, {"workers", o.workers}};
    if (!o.exhaustive)
        r.seed = o.seed;
    validate_curve_config(cfg);
    r.hypotheses["l_not_dividing_P_of_q"] = true;
    const auto records = curve_census(cfg);
    const auto dens = density_report(records, cfg);
    r.hypotheses["eta_product_gt_half"] = dens.predicted.eta_product_gt_half;
    r.result = {{"density", density_json(dens)}};
    if (cfg.conditions.size() == 2)
        r.result["independence"] = independence_json(independence_report(records, cfg));
    if (!o.csv.empty()) {
        std::string csv = "f,char_poly,char_poly_mod_l";
        for (std::size_t i = 0; i < cfg.conditions.size(); ++i)
            csv += ",mult_" + std::to_string(i + 1);
        csv += '\n';
        for (const auto& rec : records) {
            std::string f;
            for (std::size_t i = 0; i < rec.curve.f.size(); ++i)
                f += (i ? " " : "") + std::to_string(rec.curve.f[i]);
            csv += '"' + f + "\",\"" + coeff_list(rec.curve.char_poly) + "\",\"" + to_string(reduce_mod(rec.curve.char_poly, o.l)) + '"';
            for (int m : rec.multiplicities)
                csv += ',' + std::to_string(m);
            csv += '\n';
        }
        write_csv(o.csv, csv);
    }
    std::ostringstream s;
    s.precision(6);
    s << records.size() << " curves; empirical " << dens.empirical << " +- " << dens.standard_error << ", predicted "
      << dens.predicted.value.value();
    r.summary = s.str();
    return r;
}

Outcome run_verify(const Opts& o)
{
    Outcome r;
    if (o.workers < 1)
        throw ValidationError("--workers must be >= 1");
    r.config = {{"suite", o.suite}, {"workers", o.workers}};
    if (!o.tamper.empty())
        r.config["tamper"] = o.tamper;
    r.seed = o.seed;
    VerifyOptions vo{o.seed, o.workers, o.tamper};
    const auto checks = run_suite(o.suite, vo);
    json arr = json::array();
    int failed = 0;
    std::string names;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"informational", c.informational}, {"detail", c.detail}});
        if (!c.pass && !c.informational) {
            ++failed;
            names += " " + c.name;
        }
    }
    r.result = {{"suite", o.suite}, {"checks", arr}, {"passed", static_cast<int>(checks.size()) - failed}, {"failed", failed}};
    r.failed = failed > 0;
    r.summary = "suite " + o.suite + ": " + std::to_string(checks.size() - static_cast<std::size_t>(failed)) + "/" +
                std::to_string(checks.size()) + " passed" + (failed ? "; failing:" + names : "");
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cokernel_lab: cokernel distributions over finite quotient rings and hyperelliptic curves"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    bool reproducible = false;
    app.add_flag("--reproducible", reproducible, "omit timestamps and runtime from the manifest");

    Opts o;
    std::string chosen;
    auto add_l = [&](CLI::App* s) { s->add_option("--l", o.l, "odd prime l")->check(CLI::PositiveNumber); };
    auto add_a = [&](CLI::App* s) { s->add_option("--a", o.a, "value substituted for 'a' in polynomials"); };
    auto add_workers = [&](CLI::App* s) { s->add_option("--workers", o.workers, "OpenMP workers (results do not depend on it)"); };

    auto* eta_cmd = app.add_subcommand("eta", "eta(Q) = prod (1 - Q^-i)");
    eta_cmd->add_option("--Q", o.Q, "residue field size")->required();
    eta_cmd->add_option("--tol", o.tol, "absolute tolerance");

    auto* measure_cmd = app.add_subcommand("measure", "mu of one module type");
    measure_cmd->add_option("--ring", o.ring_text, "ring JSON or 'P:e;P:e'")->required();
    measure_cmd->add_option("--type", o.type_text, "JSON list of partitions, one per factor")->required();
    add_l(measure_cmd);
    add_a(measure_cmd);

    auto* rank_cmd = app.add_subcommand("rank-dist", "P(M_P has type with m parts) for R_0 = F_l[X]/(P^e)");
    add_l(rank_cmd);
    add_a(rank_cmd);
    rank_cmd->add_option("--p", o.p_text, "monic irreducible P");
    rank_cmd->add_option("--e", o.e, "exponent e")->required();
    rank_cmd->add_option("--m", o.m, "size |lambda| (first row)");
    rank_cmd->add_option("--m-max", o.m_max, "last row");

    auto* mom_cmd = app.add_subcommand("moments", "number of submodules of R_0^k");
    add_l(mom_cmd);
    add_a(mom_cmd);
    mom_cmd->add_option("--p", o.p_text, "monic irreducible P");
    mom_cmd->add_option("--e", o.e, "exponent e")->required();
    mom_cmd->add_option("--k", o.k, "rank k")->required();
    mom_cmd->add_flag("--brute-force", o.brute, "also enumerate submodules");

    auto* dens_cmd = app.add_subcommand("density", "predicted density of P^m || P_C mod l");
    add_l(dens_cmd);
    add_a(dens_cmd);
    dens_cmd->add_option("--cond", o.conds, "P:m, repeatable")->required();

    auto* sim = app.add_subcommand("simulate", "Monte Carlo experiments");
    sim->require_subcommand(1);
    auto* sim_cok = sim->add_subcommand("cokernel", "cokernels of random R^{n x n} matrices");
    sim_cok->add_option("--ring", o.ring_text, "ring JSON or 'P:e;P:e'")->required();
    add_l(sim_cok);
    add_a(sim_cok);
    sim_cok->add_option("--n", o.n, "matrix size");
    sim_cok->add_option("--trials", o.trials, "number of matrices");
    sim_cok->add_option("--seed", o.seed, "master seed");
    sim_cok->add_flag("--exhaustive", o.exhaustive, "enumerate all matrices");
    sim_cok->add_option("--min-mass", o.min_mass, "truncation threshold for the theory side");
    sim_cok->add_option("--emit-csv", o.csv, "write per-type rows to this path");
    add_workers(sim_cok);

    auto* sim_cur = sim->add_subcommand("curves", "y^2 = f(x) over F_q and P_C mod l");
    add_l(sim_cur);
    add_a(sim_cur);
    sim_cur->add_option("--q", o.q, "odd prime power q")->required();
    sim_cur->add_option("--g", o.g, "genus")->required();
    sim_cur->add_option("--cond", o.conds, "P:m, repeatable")->required();
    sim_cur->add_option("--trials", o.trials, "number of curves");
    sim_cur->add_option("--seed", o.seed, "master seed");
    sim_cur->add_flag("--exhaustive", o.exhaustive, "every monic squarefree f");
    sim_cur->add_option("--emit-csv", o.csv, "write one row per curve to this path");
    add_workers(sim_cur);

    auto* ver = app.add_subcommand("verify", "oracle suites");
    ver->add_option("--suite", o.suite, "exact | montecarlo | curves-small")->required();
    std::uint64_t verify_seed = 7;
    ver->add_option("--seed", verify_seed, "master seed");
    add_workers(ver);
    ver->add_option("--tamper", o.tamper)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, std::cerr, std::cerr);
        return rc == 0 ? 0 : 1;
    }

    const auto started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    std::string name;
    try {
        if (eta_cmd->parsed()) {
            name = "eta";
            out = run_eta(o);
        } else if (measure_cmd->parsed()) {
            name = "measure";
            out = run_measure(o);
        } else if (rank_cmd->parsed()) {
            name = "rank-dist";
            out = run_rank_dist(o);
        } else if (mom_cmd->parsed()) {
            name = "moments";
            out = run_moments(o);
        } else if (dens_cmd->parsed()) {
            name = "density";
            out = run_density(o);
        } else if (sim_cok->parsed()) {
            name = "simulate cokernel";
            out = run_sim_cokernel(o);
        } else if (sim_cur->parsed()) {
            name = "simulate curves";
            out = run_sim_curves(o);
        } else {
            name = "verify";
            o.seed = verify_seed;
            out = run_verify(o);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    json manifest = {{"schema_version", kSchemaVersion}, {"tool", "cokernel_lab"}, {"version", kVersion},
                     {"subcommand", name}, {"config", out.config}, {"hypotheses", out.hypotheses},
                     {"seed", out.seed ? json(*out.seed) : json(nullptr)}};
    if (!reproducible) {
        manifest["started_at"] = started;
        manifest["finished_at"] = utc_now();
        manifest["runtime_ms"] = ms;
    }
    std::cout << json{{"manifest", manifest}, {"result", out.result}}.dump(2) << '\n';
    std::cerr << out.summary << '\n';
    return out.failed ? 2 : 0;
}
