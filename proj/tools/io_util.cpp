#include "io_util.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coglab/error.hpp"

namespace coglab::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> list_files(const std::string& dir, const std::string& extension) {
    if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == extension) {
            out.push_back(entry.path().string());
        }
    }
    std::sort(out.begin(), out.end());  // directory order is unspecified
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

RunWriter::RunWriter(std::string out_dir, std::string command)
    : out_dir_(std::move(out_dir)), command_(std::move(command)) {
    fs::create_directories(out_dir_);
}

void RunWriter::write(const std::string& filename, const std::string& content) {
    const fs::path path = fs::path(out_dir_) / filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << content;
    file_digests_[filename] = hex64(fnv1a64(content));
}

void RunWriter::finish() {
    nlohmann::json manifest;
    manifest["command"] = command_;
    manifest["config"] = config_;
    manifest["inputs"] = inputs_;
    manifest["seed"] = seed_;
    manifest["tool_version"] = "0.1.0";
    nlohmann::json files = nlohmann::json::object();
    std::uint64_t combined = 14695981039346656037ull;
    for (const auto& [name, digest] : file_digests_) {
        files[name] = digest;
        combined = fnv1a64(name + ":" + digest + "\n", combined);
    }
    manifest["outputs"] = files;
    manifest["output_digest"] = hex64(combined);

    const fs::path path = fs::path(out_dir_) / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write manifest: " + path.string());
    out << manifest.dump(2) << "\n";
}

}  // namespace coglab::cli
