// Batch driver: runs the built-in experiments from a flat key = value
// configuration, writes verdicts (JSON) and curves (CSV), and reports one
// line per claim.
//
// Exit codes: 0 all verdicts pass, 1 at least one claim verdict failed,
// 2 configuration or IO failure.

#include <CLI11.hpp>

#include "lplab/experiments.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <semaphore>
#include <vector>

namespace {

int worker_count() {
    if (const char* env = std::getenv("LPLAB_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : static_cast<int>(hw);
}

int run_and_emit(const lplab::ExperimentConfig& cfg, bool with_determinism) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << cfg.output_dir << ": "
                  << ec.message() << "\n";
        return 2;
    }

    // experiments run in a bounded worker pool; results are collected and
    // written by this thread in catalog order so outputs are deterministic
    std::counting_semaphore<256> slots(worker_count());
    std::vector<std::future<lplab::ExperimentResult>> futures;
    for (const auto& name : cfg.experiments) {
        futures.push_back(std::async(std::launch::async, [&, name] {
            slots.acquire();
            struct Release {
                std::counting_semaphore<256>* s;
                ~Release() { s->release(); }
            } release{&slots};
            try {
                return lplab::run_experiment(name, cfg.params);
            } catch (const std::exception& e) {
                lplab::ExperimentResult res;
                res.name = name;
                res.pass = false;
                res.detail = std::string("failed: ") + e.what();
                return res;
            }
        }));
    }

    std::vector<lplab::ExperimentResult> results;
    results.reserve(futures.size());
    for (auto& f : futures) results.push_back(f.get());
    if (with_determinism) results.push_back(lplab::determinism_check(cfg.params));

    std::vector<lplab::Verdict> verdicts;
    bool all_pass = true;
    for (const auto& res : results) {
        all_pass = all_pass && res.pass;
        std::cout << (res.pass ? "[pass] " : "[FAIL] ") << res.name << ": " << res.detail
                  << "\n";
        for (const auto& v : res.verdicts) verdicts.push_back(v);
        for (const auto& [file, body] : res.artifacts) {
            std::ofstream out(fs::path(cfg.output_dir) / file, std::ios::binary);
            out << body;
            if (!out) {
                std::cerr << "error: cannot write " << file << "\n";
                return 2;
            }
        }
    }
    std::ofstream vout(fs::path(cfg.output_dir) / "verdicts.json", std::ios::binary);
    vout << lplab::verdicts_to_json_string(verdicts);
    if (!vout) {
        std::cerr << "error: cannot write verdicts.json\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for square-function inequalities"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    auto* run = app.add_subcommand("run", "run experiments from a config file");
    run->add_option("config", config_path, "flat key = value config")->required();
    run->add_option("-o,--out", out_override, "override the output directory");

    auto* list = app.add_subcommand("list", "list built-in experiments and their claims");

    std::string smoke_out = "lplab-out";
    auto* smoke = app.add_subcommand("smoke", "run the fast subset plus the determinism check");
    smoke->add_option("-o,--out", smoke_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& info : lplab::experiment_catalog()) {
                std::cout << info.name << (info.in_smoke ? "  [smoke]" : "") << "\n    "
                          << info.claim << "\n";
            }
            return 0;
        }
        if (smoke->parsed()) {
            lplab::ExperimentConfig cfg;
            cfg.output_dir = smoke_out;
            for (const auto& info : lplab::experiment_catalog()) {
                if (info.in_smoke) cfg.experiments.push_back(info.name);
            }
            return run_and_emit(cfg, true);
        }
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config " << config_path << "\n";
            return 2;
        }
        auto cfg = lplab::parse_config(in);
        if (!out_override.empty()) cfg.output_dir = out_override;
        return run_and_emit(cfg, false);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
