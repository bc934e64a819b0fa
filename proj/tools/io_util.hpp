#pragma once
// Output-side plumbing for the CLI: run directory management, the run
// manifest with content digests, and small formatting helpers.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace coglab::cli {

std::uint64_t fnv1a64(const std::string& bytes, std::uint64_t seed = 14695981039346656037ull);
std::string hex64(std::uint64_t value);

std::string read_file(const std::string& path);
std::vector<std::string> list_files(const std::string& dir, const std::string& extension);

std::string format_double(double v);  // locale-free, stable

// Collects output files for one run, writes them under the output
// directory, and finishes with a manifest covering every emitted byte.
class RunWriter {
public:
    RunWriter(std::string out_dir, std::string command);

    void set_seed(std::uint64_t seed) { seed_ = seed; }
    void set_config(const std::string& path) { config_ = path; }
    void add_input(const std::string& path) { inputs_.push_back(path); }

    void write(const std::string& filename, const std::string& content);

    // Writes manifest.json (digest covers all previously written files).
    void finish();

private:
    std::string out_dir_;
    std::string command_;
    std::string config_ = "(defaults)";
    std::vector<std::string> inputs_;
    std::uint64_t seed_ = 0;
    std::map<std::string, std::string> file_digests_;  // filename -> fnv64 hex
};

}  // namespace coglab::cli
