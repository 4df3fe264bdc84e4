#pragma once

#include "tempground/io.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace tgtest {

inline tempground::FeatureSequence random_features(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                                   float frame_rate = 1.0f) {
    std::normal_distribution<float> normal(0.0f, 1.0f);
    tempground::Matrix m(n, d);
    for (float& v : m.values()) v = normal(rng);
    return {std::move(m), frame_rate};
}

inline std::vector<double> random_series(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> uniform(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = uniform(rng);
    return out;
}

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("tempground_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace tgtest
