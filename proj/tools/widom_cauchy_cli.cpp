// Command-line front end: reads a JSON config, drives the verification run
// through the C API, and writes report.json / report.csv into --out.
//
// Exit codes: 0 all checks passed; 1 at least one case failed or errored;
// 2 config parse/validation failure or unwritable output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "widom_cauchy.h"

namespace {

int fail_usage(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suite for the derivative direct-Cauchy identity"};
    std::string command, config_path, out_dir = ".";
    int threads = -1;
    app.add_option("command", command, "one of: verify-theorem verify-lemma verify-orbit-sum "
                                       "verify-inner-outer verify-assumption verify-l1 "
                                       "verify-unfolding sweep")
        ->required();
    app.add_option("--config", config_path, "path to the JSON run configuration")->required();
    app.add_option("--out", out_dir, "directory for report.json / report.csv (default .)");
    app.add_option("--threads", threads, "worker threads (overrides config; env WC_THREADS wins)");
    CLI11_PARSE(app, argc, argv);

    std::ifstream in(config_path);
    if (!in) return fail_usage("cannot read config file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(buf.str(), nullptr, false);
    if (doc.is_discarded())
        return fail_usage("config file '" + config_path + "' is not valid JSON");
    // the CLI argument names the command; the config supplies the cases
    doc["command"] = command;
    if (threads >= 0) doc["threads"] = threads;

    char* report_json = nullptr;
    char* report_csv = nullptr;
    int all_passed = 0;
    wc_status st =
        wc_run_config_json(doc.dump().c_str(), &report_json, &report_csv, &all_passed);
    if (st != WC_OK) {
        std::fprintf(stderr, "error: %s\n", wc_last_error());
        bool config_error = st == WC_ERR_VALIDATION || st == WC_ERR_IO ||
                            st == WC_ERR_INVALID_ARGUMENT;
        return config_error ? 2 : 1;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        wc_string_free(report_json);
        wc_string_free(report_csv);
        return fail_usage("cannot create output directory '" + out_dir + "'");
    }
    const std::string json_path = out_dir + "/report.json";
    const std::string csv_path = out_dir + "/report.csv";
    {
        std::ofstream jf(json_path, std::ios::binary);
        std::ofstream cf(csv_path, std::ios::binary);
        if (!jf || !cf) {
            wc_string_free(report_json);
            wc_string_free(report_csv);
            return fail_usage("cannot write reports under '" + out_dir + "'");
        }
        jf << report_json;
        cf << report_csv;
        if (!jf.good() || !cf.good()) {
            wc_string_free(report_json);
            wc_string_free(report_csv);
            return fail_usage("short write under '" + out_dir + "'");
        }
    }

    // per-case one-liners for quick scanning
    nlohmann::ordered_json rep = nlohmann::ordered_json::parse(report_json);
    std::size_t n = rep["cases"].size();
    std::size_t passed = 0;
    for (const auto& c : rep["cases"])
        if (c.value("pass", false)) ++passed;
    std::printf("%s: %zu/%zu cases passed; reports in %s and %s\n", command.c_str(), passed, n,
                json_path.c_str(), csv_path.c_str());
    for (const auto& c : rep["cases"]) {
        if (!c.value("pass", false)) {
            std::string why = c.contains("error") ? c["error"].get<std::string>()
                                                  : std::string("tolerance exceeded");
            std::printf("  [FAIL] k=%s q=%s: %s\n",
                        c.contains("k") ? c["k"].dump().c_str() : "-",
                        c.contains("q") ? c["q"].dump().c_str() : "-", why.c_str());
        }
    }

    wc_string_free(report_json);
    wc_string_free(report_csv);
    return all_passed ? 0 : 1;
}
