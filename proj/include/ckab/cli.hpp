#pragma once

// Command-line front end: validate, analyze, check, simulate, export.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ckab::cli {

enum Exit : int {
    kOk = 0,
    kFails = 1,
    kNotWeaklyAcyclic = 2,
    kIncomplete = 3,
    kUsage = 64,
    kDataError = 65,
    kNoInput = 66,
    kCantCreate = 73,
};

struct BuildOptions {
    std::optional<int> k;
    std::size_t state_cap = 100000;
    std::optional<std::size_t> bound;
    unsigned threads = 1;
};

struct CheckOptions {
    BuildOptions build;
    std::string export_path; // .dot for Graphviz, anything else JSON
    bool json = false;
    bool timings = false;
};

struct SimulateOptions {
    std::size_t steps = 3;
    /// "hash", "hash:SEED" or "table:PATH".
    std::string services = "hash";
    std::size_t hash_values = 4;
};

int cmd_validate(const std::string& spec_path, std::ostream& out, std::ostream& err);
int cmd_analyze(const std::string& spec_path, bool json, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& spec_path, const std::string& property_path, const CheckOptions& opts,
              std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& spec_path, const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_export(const std::string& spec_path, const BuildOptions& opts, const std::string& format,
               std::ostream& out, std::ostream& err);

/// Thread count from CKAB_THREADS, capped at the hardware concurrency.
unsigned threads_from_env();

/// Parses argv and dispatches; returns the exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace ckab::cli
