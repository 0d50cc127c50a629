// verify: run the relation-check suites for a chosen Cartan type and emit a
// witness-bearing JSON report.
//
//   verify --type A2 --suite all --modes 3 --degree 5 --serre-k 1,2,3 --out report.json
//
// Exit codes: 0 all non-"beyond-paper" cases pass, 1 at least one failing
// check, 2 configuration errors (bad Cartan data, unknown suite, bad flags).

#include "qtor/cartan_io.hpp"
#include "qtor/parallel.hpp"
#include "qtor/report_json.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace qtor;

const std::set<std::string> known_suites{"heisenberg", "cocycle",  "series-oracle",
                                         "ope",        "locality", "delta",
                                         "phipsi",     "serre-sym", "serre-op",
                                         "all"};

Mutation parse_mutation(const std::string& name) {
    if (name.empty() || name == "none") return Mutation::none;
    if (name == "heis-drop-half") return Mutation::heisenberg_drop_half;
    if (name == "ope-flip-pairing") return Mutation::ope_flip_pairing_sign;
    if (name == "locality-flip-sign") return Mutation::locality_flip_sign;
    if (name == "delta-unit-scalar") return Mutation::delta_unit_scalar;
    if (name == "phipsi-negate-g1") return Mutation::phipsi_negate_g1;
    if (name == "serre-k1-exponent") return Mutation::serre_k1_shift_exponent;
    if (name == "serre-op-prefactor") return Mutation::serre_op_shift_prefactor;
    throw validation_error("unknown mutation '" + name + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact relation verifier for the level-one twisted Fock representation"};

    std::string type, cartan_file, out_path, alpha0_arg, mutate_name;
    std::vector<std::string> suite_args{"all"};
    int modes = 3, degree = 5, series_degree = 6, threads = 0, cocycle_trials = 1000;
    std::vector<int> serre_k{1, 2, 3};
    bool verbose = false;

    app.add_option("--type", type, "builtin Cartan type (A<l>, D<l>, E6, E7, E8)");
    app.add_option("--cartan", cartan_file, "JSON file with an explicit Cartan matrix");
    app.add_option("--suite", suite_args,
                   "suites to run (comma separated or repeated); default all")
        ->delimiter(',');
    app.add_option("--modes", modes, "mode bound M for operator checks")->check(CLI::PositiveNumber);
    app.add_option("--degree", degree, "degree bound D for operator checks")
        ->check(CLI::PositiveNumber);
    app.add_option("--series-degree", series_degree, "degree bound for the conjugation suite")
        ->check(CLI::PositiveNumber);
    app.add_option("--serre-k", serre_k, "Serre relation indices k (comma separated)")
        ->delimiter(',');
    app.add_option("--cocycle-trials", cocycle_trials, "random pairs for the cocycle suite")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "write the JSON report here");
    app.add_option("--alpha0", alpha0_arg,
                   "affine-node root as comma separated coefficients, or 'auto' for "
                   "-highest_root (builtin types); cases run as beyond-paper");
    app.add_option("--threads", threads, "worker threads (0 = all cores; env QTOR_THREADS caps)");
    app.add_option("--mutate", mutate_name,
                   "perturb a checker's defining scalar (self-test aid): heis-drop-half, "
                   "ope-flip-pairing, locality-flip-sign, delta-unit-scalar, phipsi-negate-g1, "
                   "serre-k1-exponent, serre-op-prefactor");
    app.add_flag("-v,--verbose", verbose, "print each report as it completes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (type.empty() == cartan_file.empty())
            throw validation_error("exactly one of --type or --cartan is required");
        for (const auto& s : suite_args)
            if (!known_suites.count(s)) throw validation_error("unknown suite '" + s + "'");
        for (int k : serre_k)
            if (k < 1) throw validation_error("--serre-k entries must be >= 1");

        const CartanData c = type.empty() ? cartan_from_json_file(cartan_file) : cartan_load(type);
        const Mutation mutation = parse_mutation(mutate_name);

        std::optional<LatticeElt> alpha0;
        if (!alpha0_arg.empty()) {
            if (alpha0_arg == "auto") {
                if (type.empty())
                    throw validation_error("--alpha0 auto needs a builtin --type");
                alpha0 = -highest_root(type);
            } else {
                std::vector<int> coeffs;
                for (const auto& part : split_list(alpha0_arg)) coeffs.push_back(std::stoi(part));
                if (coeffs.size() != c.rank())
                    throw validation_error("--alpha0 needs exactly " + std::to_string(c.rank()) +
                                           " coefficients");
                alpha0 = LatticeElt(std::move(coeffs));
            }
        }

        std::set<std::string> suites(suite_args.begin(), suite_args.end());
        const bool all = suites.count("all") > 0;
        auto selected = [&](const char* name) { return all || suites.count(name) > 0; };

        std::vector<std::function<CheckReport()>> tasks;
        if (selected("heisenberg"))
            tasks.push_back([&] { return check_heisenberg(c, modes, degree, mutation); });
        if (selected("cocycle"))
            tasks.push_back([&] { return check_cocycle(c, cocycle_trials); });
        if (selected("series-oracle")) tasks.push_back([&] { return check_series_oracle(); });
        if (selected("ope")) {
            tasks.push_back([&] { return check_ope(c, degree, mutation); });
            if (alpha0) tasks.push_back([&] { return check_ope_root(c, *alpha0, "alpha0", degree); });
        }
        if (selected("locality"))
            tasks.push_back([&] { return check_locality(c, degree, mutation); });
        if (selected("delta")) {
            for (size_t i = 0; i < c.rank(); ++i)
                tasks.push_back([&, i] { return check_delta(c, i, modes, degree, mutation); });
            if (alpha0)
                tasks.push_back(
                    [&] { return check_delta_root(c, *alpha0, "alpha0", modes, degree); });
        }
        if (selected("phipsi"))
            tasks.push_back([&] { return check_phipsi(c, series_degree, mutation); });
        if (selected("serre-sym"))
            for (int k : serre_k)
                tasks.push_back([&, k] { return check_serre_symbolic(k, mutation); });
        if (selected("serre-op"))
            tasks.push_back([&] { return check_serre_operator(c, degree, mutation); });

        auto reports = parallel_map<CheckReport>(
            tasks.size(), [&](size_t i) { return tasks[i](); }, unsigned(std::max(threads, 0)));

        int fails = 0;
        for (const auto& rep : reports) {
            if (rep.status == CheckStatus::fail) ++fails;
            std::ostringstream line;
            line << "[" << status_str(rep.status) << "] " << rep.suite;
            for (const auto& [k, v] : rep.params) line << " " << k << "=" << v;
            if (rep.witness) {
                line << "  witness: " << rep.witness->state << " expected " << rep.witness->expected
                     << " got " << rep.witness->actual;
            }
            std::cout << line.str() << "\n";
            if (verbose && rep.witness && !rep.witness->input.empty())
                std::cout << "    on input " << rep.witness->input << "\n";
        }
        nlohmann::json config;
        config["cartan"] = type.empty() ? cartan_file : type;
        config["suites"] = std::vector<std::string>(suites.begin(), suites.end());
        config["modes"] = modes;
        config["degree"] = degree;
        config["series_degree"] = series_degree;
        config["serre_k"] = serre_k;
        config["cocycle_trials"] = cocycle_trials;
        if (alpha0) config["alpha0"] = alpha0->str();
        if (mutation != Mutation::none) config["mutate"] = mutate_name;
        nlohmann::json full = full_report(config, reports);
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) throw validation_error("cannot write report to '" + out_path + "'");
            out << full.dump(2) << "\n";
        }
        const auto& s = full["summary"];
        std::cout << "summary: " << s["pass"] << " pass, " << s["fail"] << " fail, "
                  << s["beyond_paper"] << " beyond-paper\n";
        return fails > 0 ? 1 : 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
