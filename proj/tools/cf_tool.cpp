#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cnf/coeff_search.hpp"
#include "cnf/errors.hpp"
#include "cnf/finite_field.hpp"
#include "cnf/lattice_codec.hpp"
#include "cnf/outage_sim.hpp"
#include "cnf/parse.hpp"
#include "cnf/rates.hpp"

#include <json.hpp>

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        std::size_t used = 0;
        grid.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad grid value '" + item + "'");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (grid.empty()) throw std::invalid_argument("grid must contain at least one value");
    return grid;
}

int run(int argc, char** argv) {
    CLI::App app{"Compute-and-forward rate, recovery and simulation toolkit"};
    app.require_subcommand(1);
    // --h is a data option below, so keep only the long help flag everywhere.
    app.set_help_flag("--help", "Print help");
    app.option_defaults()->ignore_case(false);

    std::string h_text, a_text, out_path;
    double snr_db = 0.0;

    auto* rate = app.add_subcommand("rate", "Best-scaling computation rate for one equation");
    rate->set_help_flag("--help", "Print help");
    rate->add_option("--h", h_text, "channel gains, e.g. \"1.5+0.5j,-2j\"")->required();
    rate->add_option("--a", a_text, "integer coefficients, e.g. \"1,-1\"")->required();
    rate->add_option("--snr-db", snr_db, "SNR in dB")->required();

    std::size_t top_k = 10;
    auto* profile = app.add_subcommand("profile", "Candidate equations ranked by rate (CSV)");
    profile->set_help_flag("--help", "Print help");
    profile->add_option("--h", h_text)->required();
    profile->add_option("--snr-db", snr_db)->required();
    profile->add_option("--top", top_k, "number of rows")->check(CLI::PositiveNumber);
    profile->add_option("--out", out_path, "output file (default stdout)");

    std::int64_t p = 3;
    std::string coeffs_path;
    std::size_t target = 1;
    auto* recover = app.add_subcommand("recover",
                                       "Message-recovery matrix from equation coefficients");
    recover->add_option("--p", p, "prime modulus")->required();
    recover->add_option("--coeffs-json", coeffs_path,
                        "JSON file: list of coefficient vectors as [re, im] pairs")
        ->required();
    recover->add_option("--target", target, "1-based message index")->required();
    recover->set_help_flag("--help", "Print help");

    std::string k_text = "1";
    std::size_t dim_n = 2;
    std::uint64_t trials = 1000, seed = 0;
    bool noiseless = false;
    auto* codec = app.add_subcommand("codec", "Monte-Carlo equation error rate (CSV)");
    codec->set_help_flag("--help", "Print help");
    codec->add_option("--p", p)->required();
    codec->add_option("--k", k_text, "per-transmitter message lengths, e.g. \"1,1\"");
    codec->add_option("--n", dim_n, "lattice dimension")->required();
    codec->add_option("--h", h_text)->required();
    codec->add_option("--a", a_text)->required();
    codec->add_option("--snr-db", snr_db)->required();
    codec->add_option("--trials", trials)->check(CLI::PositiveNumber);
    codec->add_option("--seed", seed, "RNG seed")->required();
    codec->add_flag("--noiseless", noiseless, "disable channel noise and fix alpha = 1");
    codec->add_option("--out", out_path);

    auto* outage = app.add_subcommand("outage", "Outage-rate sweeps over an SNR grid");
    outage->set_help_flag("--help", "Print help");
    outage->require_subcommand(1);
    std::string grid_text;
    double rho = 0.25, pipe_c = 2.0, bc_factor = 2.0;

    auto* mimo = outage->add_subcommand("mimo", "2x2 distributed MIMO strategies");
    mimo->set_help_flag("--help", "Print help");
    mimo->add_option("--grid", grid_text, "comma-separated SNR values in dB")->required();
    mimo->add_option("--c", pipe_c, "bit-pipe rate");
    mimo->add_option("--rho", rho, "outage probability");
    mimo->add_option("--trials", trials)->check(CLI::PositiveNumber);
    mimo->add_option("--seed", seed)->required();
    mimo->add_option("--out", out_path);

    auto* twoway = outage->add_subcommand("twoway", "Two-way relay strategies");
    twoway->set_help_flag("--help", "Print help");
    twoway->add_option("--grid", grid_text)->required();
    twoway->add_option("--bc-factor", bc_factor, "relay power as a multiple of SNR");
    twoway->add_option("--rho", rho, "outage probability");
    twoway->add_option("--trials", trials)->check(CLI::PositiveNumber);
    twoway->add_option("--seed", seed)->required();
    twoway->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (rate->parsed()) {
        cnf::ChannelVector h(cnf::parse::parse_complex_list(h_text));
        auto a = cnf::parse::parse_gauss_int_list(a_text);
        auto result = cnf::rates::comp_rate(h, a, cnf::Snr::from_db(snr_db));
        std::printf("rate=%.6f\n", result.rate_bits);
        std::printf("alpha=%s\n", cnf::parse::format_complex(result.alpha).c_str());
        return 0;
    }

    if (profile->parsed()) {
        cnf::ChannelVector h(cnf::parse::parse_complex_list(h_text));
        auto prof = cnf::search::rate_profile(h, cnf::Snr::from_db(snr_db), top_k);
        std::string csv;
        for (std::size_t l = 1; l <= h.size(); ++l) csv += "a_re_" + std::to_string(l) + ",";
        for (std::size_t l = 1; l <= h.size(); ++l) csv += "a_im_" + std::to_string(l) + ",";
        csv += "rate_bits\n";
        for (const auto& [a, r] : prof.rows) {
            for (const auto& g : a) csv += std::to_string(g.re) + ",";
            for (const auto& g : a) csv += std::to_string(g.im) + ",";
            csv += cnf::parse::format_double(r) + "\n";
        }
        write_output(out_path, csv);
        return 0;
    }

    if (recover->parsed()) {
        auto doc = nlohmann::json::parse(read_file(coeffs_path));
        std::vector<cnf::CoeffVector> a_list;
        std::size_t L = 0;
        for (const auto& vec : doc) {
            cnf::CoeffVector a;
            for (const auto& pair : vec)
                a.push_back({pair.at(0).get<std::int64_t>(), pair.at(1).get<std::int64_t>()});
            if (L == 0) L = a.size();
            if (a.size() != L || L == 0)
                throw std::invalid_argument("coefficient vectors must share a positive length");
            a_list.push_back(std::move(a));
        }
        if (a_list.empty()) throw std::invalid_argument("need at least one coefficient vector");
        auto q = cnf::ff::build_Q(a_list, p, L);
        auto phi = cnf::ff::recovery_matrix(q, target, L);
        nlohmann::json out;
        if (phi) {
            // Confirm the product hits the target unit rows before printing.
            auto prod = cnf::ff::multiply(*phi, q);
            for (std::size_t j = 0; j < 2 * L; ++j) {
                std::int64_t want0 = j == target - 1 ? 1 : 0;
                std::int64_t want1 = j == target - 1 + L ? 1 : 0;
                if (prod.at(0, j) != want0 || prod.at(1, j) != want1)
                    throw std::runtime_error("recovery matrix verification failed");
            }
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t i = 0; i < 2; ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (std::size_t j = 0; j < phi->cols(); ++j) row.push_back(phi->at(i, j));
                rows.push_back(std::move(row));
            }
            out["phi"] = std::move(rows);
        } else {
            out["phi"] = nullptr;
        }
        std::cout << out.dump() << "\n";
        return 0;
    }

    if (codec->parsed()) {
        cnf::ChannelVector h(cnf::parse::parse_complex_list(h_text));
        auto a = cnf::parse::parse_gauss_int_list(a_text);
        std::vector<std::size_t> k_list;
        for (const auto& g : cnf::parse::parse_gauss_int_list(k_text)) {
            if (g.im != 0 || g.re < 1) throw std::invalid_argument("--k entries must be positive integers");
            k_list.push_back(static_cast<std::size_t>(g.re));
        }
        auto snr = cnf::Snr::from_db(snr_db);
        auto code = cnf::lattice::build_code(p, k_list, dim_n, seed, snr);
        auto result =
            cnf::lattice::simulate_equation_error_detail(code, h, a, trials, seed, noiseless);
        write_output(out_path, cnf::lattice::sim_to_csv(result));
        return 0;
    }

    auto grid = parse_grid(grid_text);
    if (mimo->parsed()) {
        cnf::outage::MimoConfig cfg{pipe_c, rho, trials, seed};
        write_output(out_path, cnf::outage::mimo_curve_csv(cnf::outage::sweep_mimo(cfg, grid)));
        return 0;
    }
    cnf::outage::TwoWayConfig cfg{bc_factor, rho, trials, seed};
    write_output(out_path, cnf::outage::twoway_curve_csv(cnf::outage::sweep_twoway(cfg, grid)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cnf::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
