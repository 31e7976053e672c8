#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lindyn/config.hpp"
#include "lindyn/errors.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"Runs one weighted-shift / translation-semigroup experiment from a JSON "
                 "config and writes a machine-readable report"};
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--seed", seed, "Override the config's random seed");
    app.add_option("--out", out_dir, "Directory for the report and CSV files");
    app.add_option("--threads", threads, "Worker threads for orbit scans");
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config '" << config_path << "'\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        const lindyn::RunResult r = lindyn::run_experiment_text(buf.str(), seed, threads);

        fs::create_directories(out_dir);
        const fs::path report_path = fs::path(out_dir) / r.report_name;
        {
            std::ofstream rep(report_path);
            rep << r.report_json;
            if (!rep) {
                std::cerr << "error: cannot write '" << report_path.string() << "'\n";
                return 2;
            }
        }
        std::cout << r.verdict << "\n";
        std::cout << "report: " << report_path.string() << "\n";
        if (r.csv) {
            const fs::path csv_path = fs::path(out_dir) / r.csv_name;
            std::ofstream csv(csv_path);
            csv << *r.csv;
            if (!csv) {
                std::cerr << "error: cannot write '" << csv_path.string() << "'\n";
                return 2;
            }
            std::cout << "csv: " << csv_path.string() << "\n";
        }
        return r.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
