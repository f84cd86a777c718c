// qnm-lab: batch harness around the qnmlab experiments. Parses an INI
// config, runs the named experiment, writes one CSV per dataset plus a
// JSON manifest echoing the inputs. Exit codes: 0 success, 2 config
// error, 3 numerical failure (error recorded in the manifest).

#include <cxxabi.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnmlab/config.hpp"
#include "qnmlab/errors.hpp"
#include "qnmlab/experiments.hpp"

namespace {

constexpr const char* version = "0.1.0";

std::string error_name(const std::exception& e) {
    int status = 0;
    char* raw = abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status);
    std::string name = (status == 0 && raw) ? raw : typeid(e).name();
    std::free(raw);
    if (name.rfind("qnmlab::", 0) == 0) name = name.substr(8);
    return name;
}

int resolve_threads(int from_flag) {
    if (from_flag > 0) return from_flag;
    if (const char* env = std::getenv("QNMLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

void write_manifest(const std::filesystem::path& path, nlohmann::json& m) {
    std::ofstream out(path, std::ios::binary);
    out << m.dump(2) << '\n';
}

int run(const std::string& config_path, const std::string& out_dir,
        int threads) {
    namespace fs = std::filesystem;
    nlohmann::json manifest;
    manifest["versions"] = {{"qnm-lab", version}, {"manifest", 1}};

    qnmlab::Config cfg;
    try {
        cfg = qnmlab::Config::parse_file(config_path);
        manifest["experiment"] = cfg.get_string("experiment", "name");
        manifest["config_echo"] = cfg.echo();
    } catch (const qnmlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    try {
        const qnmlab::ExperimentResult res =
            qnmlab::run_experiment(cfg, resolve_threads(threads));
        manifest["warnings"] = res.warnings;
        manifest["outputs"] = nlohmann::json::array();
        for (const auto& out : res.outputs) {
            out.table.write((dir / out.filename).string());
            manifest["outputs"].push_back({{"file", out.filename},
                                           {"columns", out.table.header()},
                                           {"rows", out.table.row_count()}});
        }
        write_manifest(dir / "manifest.json", manifest);
        for (const std::string& w : res.warnings)
            std::cerr << "warning: " << w << '\n';
        return 0;
    } catch (const qnmlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const qnmlab::QnmError& e) {
        manifest["error"] = {{"type", error_name(e)}, {"message", e.what()}};
        manifest["outputs"] = nlohmann::json::array();
        manifest["warnings"] = nlohmann::json::array();
        write_manifest(dir / "manifest.json", manifest);
        std::cerr << "numerical failure (" << error_name(e)
                  << "): " << e.what() << '\n';
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasinormal-mode normalization and completeness "
                 "experiments on canonical open resonators"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    int threads = 0;
    CLI::App* cmd_run = app.add_subcommand("run", "run an experiment config");
    cmd_run->add_option("config", config_path, "INI config file")->required();
    cmd_run->add_option("--out", out_dir, "output directory (default: cwd)");
    cmd_run->add_option("--threads", threads,
                        "concurrent sweep points (default: QNMLAB_THREADS "
                        "or 1)");

    CLI::App* cmd_list =
        app.add_subcommand("list", "list the available experiments");

    CLI11_PARSE(app, argc, argv);

    if (cmd_list->parsed()) {
        for (const auto& e : qnmlab::experiment_catalog())
            std::cout << e.name << "  " << e.description << '\n';
        return 0;
    }
    return run(config_path, out_dir, threads);
}
