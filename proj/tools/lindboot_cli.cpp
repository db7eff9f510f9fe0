// lindboot_cli.cpp: command-line front end

#include "lindboot/cli.hpp"
#include "lindboot/errors.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

int main(int argc, char** argv)
{
    using namespace lindboot;

    CLI::App app{"Semidefinite bootstrap bounds for translation-invariant Lindblad chains"};
    app.set_version_flag("--version", kVersion);

    std::string command;
    app.add_option("command", command, "steady | scan | critical | ratio | gap | export-sdpa")
        ->check(CLI::IsMember({"steady", "scan", "critical", "ratio", "gap", "export-sdpa"}));

    std::string config_path;
    std::string manifest_path;
    app.add_option("--config", config_path, "key = value file; flags override it");
    app.add_option("--from-manifest", manifest_path, "rerun the configuration stored in a manifest");

    std::map<std::string, std::optional<std::string>> flags;
    for (const auto& key : config_keys()) flags[key];
    for (auto& [key, slot] : flags) {
        std::string dashed = key;
        for (char& c : dashed) {
            if (c == '_') c = '-';
        }
        std::string names = "--" + dashed;
        if (dashed != key) names += ",--" + key;
        app.add_option(names, slot, "config key " + key);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        if (!manifest_path.empty()) load_manifest(cfg, manifest_path);
        if (!config_path.empty()) load_config_file(cfg, config_path);
        if (!command.empty()) cfg.command = command;
        if (cfg.command.empty()) {
            std::cerr << "error: no command given\n" << app.help();
            return 2;
        }
        if (const char* env = std::getenv(kOutputDirEnv); env && *env) cfg.output_dir = env;
        for (const auto& [key, value] : flags) {
            if (value) apply_setting(cfg, key, *value);
        }
        return run(cfg, std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
        case ErrorCode::IoFailure: return 3;
        case ErrorCode::InvalidConfig:
        case ErrorCode::ParseError:
        case ErrorCode::SiteOutOfRange:
        case ErrorCode::InvalidArgument: return 2;
        default: return 1;
        }
    }
}
