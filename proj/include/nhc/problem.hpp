// Problem files, the command driver, serialization and the run cache.
//
// A problem file is JSON holding either a semigroup with two ideal
// generator lists ("computed" source) or a reference to an externally
// produced Hilbert table ("ingested" source), plus optional default options.
// run_command executes one subcommand against the parsed problem and returns
// a report (ordered JSON) together with CSV renderings; everything it emits
// is byte-deterministic for a fixed problem and options, so results can be
// cached under a content hash and replayed verbatim. Timings never enter
// reports.
#pragma once

#include "nhc/cohomology.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <string>

namespace nhc {

struct Options {
    long long gridR = 10, gridS = 10; // Hilbert table bounds [0,R] x [0,S]
    long long window = 3;             // fit verification window width
    long long kcap = 12;              // stabilization cap for the direct route
    long long r0 = 0, s0 = 0;         // base cell for colength / check thm4
    std::string format = "json";      // stdout rendering: json | csv
    bool noCache = false;
    std::string outDir; // empty: write no files
};

struct ProblemSpec {
    std::shared_ptr<const NormalFiltration> filtration; // null for ingested
    std::string tablePath;                              // empty for computed
    std::string name;                                   // instance label (file stem)
    std::string canonical; // canonical serialization used for content hashing
    nlohmann::ordered_json fileOptions; // options block from the file (may be null)
};

// Read and validate a problem file; throws input_error listing every
// violation found. Table paths resolve relative to the problem file.
ProblemSpec parse_problem(const std::string& path);

// Apply the problem file's options for every key the command line did not
// set. cliSet uses the bare keys: grid, window, kcap, r0, s0.
void apply_file_options(const ProblemSpec& spec, Options& opts,
                        const std::set<std::string>& cliSet);

struct RunResult {
    nlohmann::ordered_json report;
    std::map<std::string, std::string> files; // filename -> bytes (CSV tables)
    int exitCode = 0;
};

// command is one of: closure, colength, table, coeffs, jointred, h2,
// "check <id>", all. Throws input_error / stabilization_error /
// invariant_error; a check that merely finds a disagreement does not throw,
// it sets exitCode = 1.
RunResult run_command(const ProblemSpec& spec, const std::string& command, const Options& opts);

std::string fnv1a_hex(const std::string& bytes);
// Content hash of (spec, command, computation options). Output-only options
// (format, out, no-cache) do not enter the key.
std::string cache_key(const ProblemSpec& spec, const std::string& command, const Options& opts);

bool cache_load(const std::string& dir, const std::string& key, RunResult& out);
// Atomic: writes a temp file in dir, then renames it onto the key.
void cache_store(const std::string& dir, const std::string& key, const RunResult& result);

// Write report.json plus every CSV into dir (created if needed), atomically.
void write_report(const RunResult& result, const std::string& dir);

// Bytes for stdout: the report for "json", the command's table for "csv".
std::string render_stdout(const RunResult& result, const std::string& command,
                          const std::string& format);

} // namespace nhc
