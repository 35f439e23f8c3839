// Command-line front end: every analytic and Monte Carlo estimate as a
// machine-readable table (JSON array or CSV) for plotting and reproduction.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpsld/gengauss.hpp"
#include "lpsld/montecarlo.hpp"
#include "lpsld/sld.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

struct OutputOptions {
    std::string format = "json";
    std::string path;  // empty = stdout
};

std::vector<double> parse_grid(const std::string& spec_str, double single, bool has_single) {
    if (!spec_str.empty()) {
        double lo, hi;
        int steps;
        char c1, c2;
        std::istringstream is(spec_str);
        if (!(is >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1)
            throw lpsld::BadParams("bad grid spec '" + spec_str + "', expected lo:hi:steps");
        std::vector<double> out;
        if (steps == 1) return {lo};
        for (int i = 0; i < steps; ++i)
            out.push_back(lo + (hi - lo) * static_cast<double>(i) / (steps - 1));
        return out;
    }
    if (!has_single) throw lpsld::BadParams("missing required value/grid argument");
    return {single};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_records(const std::vector<ordered_json>& records, const OutputOptions& opt) {
    std::ostringstream body;
    if (opt.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : records) arr.push_back(r);
        body << arr.dump(2) << "\n";
    } else if (opt.format == "csv") {
        if (!records.empty()) {
            bool first = true;
            for (auto& [k, v] : records.front().items()) {
                body << (first ? "" : ",") << k;
                first = false;
            }
            body << "\n";
            for (const auto& r : records) {
                first = true;
                for (auto& [k, v] : r.items()) {
                    body << (first ? "" : ",");
                    first = false;
                    if (v.is_number_float())
                        body << fmt17(v.get<double>());
                    else if (v.is_string())
                        body << v.get<std::string>();
                    else
                        body << v.dump();
                }
                body << "\n";
            }
        }
    } else {
        throw lpsld::BadParams("unknown output format '" + opt.format + "'");
    }
    if (opt.path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(opt.path, std::ios::binary | std::ios::trunc);
        if (!f) throw lpsld::Error(lpsld::ErrorCode::NumericalFailure, "cannot open " + opt.path);
        f << body.str();
    }
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LPSLD_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

ordered_json sld_record(const char* command, const lpsld::PqParams& par,
                        const lpsld::SldEstimate& est) {
    ordered_json r;
    r["command"] = command;
    r["p"] = par.p;
    r["q"] = par.q;
    r["n"] = est.n;
    r["z"] = est.z;
    r["rate"] = est.rate;
    r["prefactor"] = est.prefactor;
    r["probability"] = est.probability;
    r["regime"] = est.valid_asymptotic ? "valid-asymptotic" : "invalid-asymptotic";
    return r;
}

void add_mc(ordered_json& r, const lpsld::McEstimate& mc) {
    r["mc_p_hat"] = mc.p_hat;
    r["mc_stderr"] = mc.stderr_;
    r["mc_samples"] = mc.n_samples;
    r["mc_ci95_lo"] = mc.ci95_lo;
    r["mc_ci95_hi"] = mc.ci95_hi;
    r["seed"] = mc.seed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp tail estimates for q-norms on l_p spheres and balls, with Monte Carlo checks"};
    app.require_subcommand(1);

    double p = 2.0, q = 1.0, z = 0.0, t = 0.0, q_proj = 0.0;
    std::vector<int> n_list;
    std::string z_grid;
    long long samples = 1000000;
    std::uint64_t seed = default_seed();
    bool z_given = false;
    OutputOptions out;

    auto add_common = [&](CLI::App* cmd, bool needs_n) {
        cmd->add_option("--p", p, "exponent p");
        cmd->add_option("--q", q, "exponent q");
        if (needs_n) cmd->add_option("--n", n_list, "dimension(s)")->required();
        cmd->add_option("--format", out.format, "json or csv");
        cmd->add_option("--output", out.path, "output file (default stdout)");
    };
    auto add_z = [&](CLI::App* cmd) {
        cmd->add_option("--z", z, "deviation level")
            ->check([&](const std::string&) { z_given = true; return std::string(); });
        cmd->add_option("--z-grid", z_grid, "grid lo:hi:steps (inclusive endpoints)");
    };

    auto* cmd_cone = app.add_subcommand("sld-cone", "analytic tail under the cone measure");
    add_common(cmd_cone, true);
    add_z(cmd_cone);

    auto* cmd_ball = app.add_subcommand("sld-ball", "analytic tail under the uniform measure");
    add_common(cmd_ball, true);
    add_z(cmd_ball);

    auto* cmd_rate = app.add_subcommand("rate-curve", "rate and prefactor terms over a z grid");
    add_common(cmd_rate, false);
    add_z(cmd_rate);

    auto* cmd_intersect = app.add_subcommand("intersect", "intersection volume of normalized balls");
    add_common(cmd_intersect, true);
    cmd_intersect->add_option("--t", t, "scaling factor of the q-ball")->required();

    auto* cmd_project = app.add_subcommand("project", "projection-length tail (p = 2 implied)");
    cmd_project->add_option("--q-proj", q_proj, "projected ball exponent, > 2")->required();
    cmd_project->add_option("--n", n_list, "dimension(s)")->required();
    cmd_project->add_option("--z", z, "deviation level")->required();
    cmd_project->add_option("--format", out.format, "json or csv");
    cmd_project->add_option("--output", out.path, "output file (default stdout)");

    std::string mc_measure = "cone";
    auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo tail estimate");
    add_common(cmd_mc, true);
    add_z(cmd_mc);
    cmd_mc->add_option("--measure", mc_measure, "cone or ball");
    cmd_mc->add_option("--samples", samples, "sample count");
    cmd_mc->add_option("--seed", seed, "master seed");

    auto* cmd_compare = app.add_subcommand("compare", "analytic vs Monte Carlo, both measures");
    add_common(cmd_compare, true);
    add_z(cmd_compare);
    cmd_compare->add_option("--samples", samples, "sample count");
    cmd_compare->add_option("--seed", seed, "master seed");

    auto* cmd_constants = app.add_subcommand("constants", "ball volume and normalization constants");
    add_common(cmd_constants, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const lpsld::PqParams par(p, q);
        std::vector<ordered_json> records;

        if (cmd_cone->parsed() || cmd_ball->parsed()) {
            const bool cone = cmd_cone->parsed();
            for (double zv : parse_grid(z_grid, z, z_given))
                for (int n : n_list) {
                    const lpsld::SldEstimate est =
                        cone ? lpsld::tail_cone(n, zv, par) : lpsld::tail_ball(n, zv, par);
                    ordered_json r = sld_record(cone ? "sld-cone" : "sld-ball", par, est);
                    const lpsld::RatePoint rp = lpsld::rate_norm(zv, par);
                    if (cone) {
                        r["xi"] = lpsld::xi(rp);
                        r["kappa"] = lpsld::kappa(zv, rp, par);
                    } else {
                        r["gamma"] = lpsld::gamma_term(zv, rp, par);
                    }
                    records.push_back(std::move(r));
                }
        } else if (cmd_rate->parsed()) {
            for (double zv : parse_grid(z_grid, z, z_given)) {
                const lpsld::RatePoint rp = lpsld::rate_norm(zv, par);
                ordered_json r;
                r["command"] = "rate-curve";
                r["p"] = par.p;
                r["q"] = par.q;
                r["z"] = zv;
                r["rate"] = rp.rate;
                r["tau1"] = rp.tau.tau1;
                r["tau2"] = rp.tau.tau2;
                r["xi"] = lpsld::xi(rp);
                r["kappa"] = lpsld::kappa(zv, rp, par);
                r["gamma"] = lpsld::gamma_term(zv, rp, par);
                records.push_back(std::move(r));
            }
        } else if (cmd_intersect->parsed()) {
            for (int n : n_list) {
                const lpsld::IntersectionEstimate est = lpsld::intersection_volume(n, t, par);
                ordered_json r;
                r["command"] = "intersect";
                r["p"] = par.p;
                r["q"] = par.q;
                r["n"] = n;
                r["t"] = t;
                r["z_eff"] = est.z_eff;
                r["volume"] = est.volume;
                r["tail_probability"] = est.tail.probability;
                r["rate"] = est.tail.rate;
                r["regime"] = est.tail.valid_asymptotic ? "valid-asymptotic" : "invalid-asymptotic";
                records.push_back(std::move(r));
            }
        } else if (cmd_project->parsed()) {
            for (int n : n_list) {
                const lpsld::SldEstimate est = lpsld::projection_tail(n, q_proj, z);
                ordered_json r;
                r["command"] = "project";
                r["q_proj"] = q_proj;
                r["q_conjugate"] = lpsld::conjugate_exponent(q_proj);
                r["n"] = n;
                r["z"] = z;
                r["rate"] = est.rate;
                r["prefactor"] = est.prefactor;
                r["probability"] = est.probability;
                r["regime"] = est.valid_asymptotic ? "valid-asymptotic" : "invalid-asymptotic";
                records.push_back(std::move(r));
            }
        } else if (cmd_mc->parsed()) {
            for (double zv : parse_grid(z_grid, z, z_given))
                for (int n : n_list) {
                    const lpsld::McEstimate mc =
                        mc_measure == "ball" ? lpsld::mc_tail_ball(n, zv, par, samples, seed)
                                             : lpsld::mc_tail_cone(n, zv, par, samples, seed);
                    ordered_json r;
                    r["command"] = "mc";
                    r["measure"] = mc_measure;
                    r["p"] = par.p;
                    r["q"] = par.q;
                    r["n"] = n;
                    r["z"] = zv;
                    add_mc(r, mc);
                    records.push_back(std::move(r));
                }
        } else if (cmd_compare->parsed()) {
            for (double zv : parse_grid(z_grid, z, z_given))
                for (int n : n_list) {
                    const lpsld::CompareResult c = lpsld::compare(n, zv, par, samples, seed);
                    ordered_json r;
                    r["command"] = "compare";
                    r["p"] = par.p;
                    r["q"] = par.q;
                    r["n"] = n;
                    r["z"] = zv;
                    r["sld_cone"] = c.sld_cone.probability;
                    r["sld_ball"] = c.sld_ball.probability;
                    r["mc_cone"] = c.mc_cone.p_hat;
                    r["mc_ball"] = c.mc_ball.p_hat;
                    r["mc_cone_stderr"] = c.mc_cone.stderr_;
                    r["mc_ball_stderr"] = c.mc_ball.stderr_;
                    r["ratio_cone"] = c.ratio_cone;
                    r["ratio_ball"] = c.ratio_ball;
                    r["rate"] = c.sld_cone.rate;
                    r["samples"] = samples;
                    r["seed"] = seed;
                    records.push_back(std::move(r));
                }
        } else if (cmd_constants->parsed()) {
            for (int n : n_list) {
                const lpsld::BallConstants bc = lpsld::ball_constants(n, par);
                ordered_json r;
                r["command"] = "constants";
                r["p"] = bc.p;
                r["q"] = bc.q;
                r["n"] = bc.n;
                r["log_vol_p"] = bc.log_vol_p;
                r["c_np"] = bc.c_np;
                r["c_nq"] = bc.c_nq;
                r["c_p"] = bc.c_p;
                r["c_q"] = bc.c_q;
                r["c_npq"] = bc.c_npq;
                r["A_npq"] = bc.A_npq;
                r["A_pq"] = bc.A_pq;
                r["m_pq"] = lpsld::mean_mpq(par);
                records.push_back(std::move(r));
            }
        }

        write_records(records, out);
        return 0;
    } catch (const lpsld::Error& e) {
        std::cerr << "error[" << static_cast<int>(e.code()) << "]: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error[5]: " << e.what() << "\n";
        return 5;
    }
}
