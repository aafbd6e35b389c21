// rotgas: evaluate the Hessian geometry of the rotating-gas Gibbs set at a
// point, run convergence sweeps towards the high-velocity limits, or run the
// verification suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotgas/asymptotics.hpp"
#include "rotgas/curvature.hpp"
#include "rotgas/json_io.hpp"
#include "rotgas/verify.hpp"

namespace {

rotgas::Vec3 parse_omega(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        double v = std::stod(item, &pos);
        if (pos != item.size()) throw CLI::ValidationError("--omega", "malformed component '" + item + "'");
        vals.push_back(v);
    }
    if (vals.size() != 3)
        throw CLI::ValidationError("--omega", "expected three comma-separated components");
    return {vals[0], vals[1], vals[2]};
}

std::vector<double> parse_theta_grid(const std::string& s) {
    // either a comma list "1,10,100" or "lo:hi:n" log-spaced
    std::vector<double> grid;
    if (s.find(':') != std::string::npos) {
        double lo, hi;
        int n;
        if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 2 || !(lo > 0.0) || !(hi > lo))
            throw CLI::ValidationError("--theta-grid", "expected lo:hi:count with 0 < lo < hi");
        for (int i = 0; i < n; ++i)
            grid.push_back(std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (n - 1)));
        return grid;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    if (grid.empty()) throw CLI::ValidationError("--theta-grid", "empty grid");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1])) throw CLI::ValidationError("--theta-grid", "grid must increase");
    return grid;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hessian (Fisher-Rao) geometry of a spherically confined rotating ideal gas"};
    app.fallthrough();
    app.set_config("--config", "", "flat key=value configuration file (flags take precedence)");

    double mass = 1.0, radius = 1.0, beta = 1.0;
    std::string omega_str = "0,0,0";
    std::string chart_str = "beta-omega";
    int order = 4;
    std::string out_path;
    std::string format = "json";
    unsigned long long seed = 20240913ull;
    double tol_scale = 1.0;
    std::string only;
    std::string theta_grid_str = "1:1e5:6";

    app.add_option("--mass", mass, "particle mass m > 0")->capture_default_str();
    app.add_option("--radius", radius, "confinement radius R > 0")->capture_default_str();
    app.add_option("--seed", seed, "random seed for plane sampling")->capture_default_str();
    app.add_option("--out", out_path, "output path (default: stdout)");

    auto* eval = app.add_subcommand("eval", "curvature report at one point");
    eval->add_option("--beta", beta, "inverse temperature > 0")->capture_default_str();
    eval->add_option("--omega", omega_str, "angular velocity x,y,z")->capture_default_str();
    eval->add_option("--chart", chart_str, "flat | beta-omega | u-omega | beta-M")->capture_default_str();
    eval->add_option("--order", order, "highest differential order in the report (2..4)")
        ->capture_default_str();
    eval->add_option("--format", format, "json")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "convergence sweeps over a theta grid");
    sweep->add_option("--theta-grid", theta_grid_str,
                      "comma list or lo:hi:count (log-spaced); beta = 1, omega along z")
        ->capture_default_str();
    sweep->add_option("--format", format, "csv | json")->capture_default_str();
    sweep->description(
        "CSV columns, in order: quantity, theta, value, limit, rel_error, monotone, status");

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_option("--tolerance-scale", tol_scale, "multiply every tolerance by this factor")
        ->capture_default_str();
    verify->add_option("--only", only, "run only criteria whose module tag contains this string");

    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        app.exit(e);
        return 2;
    }

    if (!eval->parsed() && !sweep->parsed() && !verify->parsed()) {
        std::cerr << app.help() << std::endl;
        return 2;
    }

    try {
        rotgas::GasParameters gp{mass, radius};
        gp.validate();

        if (eval->parsed()) {
            if (order < 2 || order > 4) {
                std::cerr << "eval: --order must be 2, 3 or 4\n";
                return 2;
            }
            if (format != "json") {
                std::cerr << "eval: only json output is supported\n";
                return 2;
            }
            rotgas::GeneralizedTemperature p{beta, parse_omega(omega_str)};
            p.validate();
            rotgas::Chart chart;
            try {
                chart = rotgas::chart_from_name(chart_str);
            } catch (const std::invalid_argument& e) {
                throw CLI::ValidationError("--chart", e.what());
            }
            auto rep = rotgas::curvature_report(p, gp, chart, 50, seed);
            nlohmann::json j = rotgas::report_to_json(rep, gp);
            if (order < 4) {
                j.erase("D2g");
                j.erase("hessian_curvature");
                j.erase("riemann");
                j.erase("sectional");
                j.erase("kn_deviation");
            }
            if (order < 3) j.erase("Dg");
            write_output(out_path, j.dump(2) + "\n");
            return 0;
        }

        if (sweep->parsed()) {
            auto grid = parse_theta_grid(theta_grid_str);
            auto sweeps = rotgas::limit_suite(gp, grid);
            std::size_t rows = 0, failed_rows = 0;
            if (format == "csv") {
                std::ostringstream csv;
                csv << "quantity,theta,value,limit,rel_error,monotone,status\n";
                char buf[256];
                for (auto& ns : sweeps) {
                    if (ns.failed) {
                        for (double th : grid) {
                            std::snprintf(buf, sizeof buf, "%s,%.17g,,,,,failed\n", ns.name.c_str(), th);
                            csv << buf;
                            ++rows;
                            ++failed_rows;
                        }
                        continue;
                    }
                    for (std::size_t i = 0; i < ns.sweep.x.size(); ++i) {
                        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%d,ok\n",
                                      ns.name.c_str(), ns.sweep.x[i], ns.sweep.value[i], ns.sweep.limit,
                                      ns.sweep.rel_error[i], ns.sweep.monotone ? 1 : 0);
                        csv << buf;
                        ++rows;
                    }
                }
                write_output(out_path, csv.str());
            } else if (format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (auto& ns : sweeps) {
                    nlohmann::json e;
                    e["quantity"] = ns.name;
                    e["failed"] = ns.failed;
                    if (ns.failed) {
                        e["error"] = ns.error;
                        failed_rows += grid.size();
                        rows += grid.size();
                    } else {
                        e["theta"] = ns.sweep.x;
                        e["value"] = ns.sweep.value;
                        e["limit"] = ns.sweep.limit;
                        e["rel_error"] = ns.sweep.rel_error;
                        e["monotone"] = ns.sweep.monotone;
                        e["fitted_exponent"] = ns.sweep.fitted_exponent;
                        rows += grid.size();
                    }
                    j.push_back(e);
                }
                write_output(out_path, j.dump(2) + "\n");
            } else {
                std::cerr << "sweep: unknown format '" << format << "'\n";
                return 2;
            }
            return (failed_rows * 10 <= rows) ? 0 : 1;
        }

        // verify
        rotgas::VerifyOptions opt;
        opt.tolerance_scale = tol_scale;
        opt.seed = seed;
        opt.only = only;
        auto rep = rotgas::run_verification(opt);
        nlohmann::json j;
        j["all_pass"] = rep.all_pass;
        j["criteria"] = nlohmann::json::array();
        for (auto& r : rep.results) {
            std::printf("[%s] %2d %-55s worst %.3e tol %.3e (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL",
                        r.id, r.name.c_str(), r.worst, r.tolerance, r.seconds,
                        r.detail.empty() ? "" : "  ", r.detail.c_str());
            nlohmann::json e;
            e["id"] = r.id;
            e["name"] = r.name;
            e["module"] = r.module_tag;
            e["pass"] = r.pass;
            e["worst"] = r.worst;
            e["tolerance"] = r.tolerance;
            if (!r.detail.empty()) e["detail"] = r.detail;
            // no timing in the file output: identical config + seed must give
            // bit-identical files
            j["criteria"].push_back(e);
        }
        std::printf("%s: %zu criteria\n", rep.all_pass ? "ALL PASS" : "FAILURES PRESENT",
                    rep.results.size());
        if (!out_path.empty()) write_output(out_path, j.dump(2) + "\n");
        return rep.all_pass ? 0 : 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
