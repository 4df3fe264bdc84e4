#pragma once

#include "tempground/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tempground {

/// Per-frame embeddings, one row per sampled frame.
struct FeatureSequence {
    Matrix data;
    float frame_rate = 1.0f;

    std::size_t num_frames() const noexcept { return data.rows(); }
    std::size_t dim() const noexcept { return data.cols(); }
    double duration() const noexcept { return static_cast<double>(data.rows()) / frame_rate; }

    /// N >= 1, D >= 1, frame_rate > 0, all entries finite. Throws InvalidInput.
    void validate() const;
};

/// Text-query embedding; its dimension must match the paired features.
struct QueryEmbedding {
    std::vector<float> values;

    std::size_t dim() const noexcept { return values.size(); }
};

// TAGF layout (all little-endian):
//   offset 0   char[4]  "TAGF"
//   offset 4   u16      version (= 1)
//   offset 6   u32      N (rows)
//   offset 10  u32      D (cols)
//   offset 14  f32      frame rate
//   offset 18  f32[N*D] row-major payload
inline constexpr std::size_t tagf_header_size = 18;
inline constexpr std::uint16_t tagf_version = 1;

struct TagfHeader {
    std::uint16_t version = tagf_version;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    float frame_rate = 0.0f;
};

FeatureSequence read_feature_file(const std::string& path);
void write_feature_file(const FeatureSequence& seq, const std::string& path);

/// Validates magic, version and payload length without reading the payload.
TagfHeader read_feature_header(const std::string& path);

/// Query vectors are TAGF files holding a single row.
QueryEmbedding read_query_file(const std::string& path);
void write_query_file(const QueryEmbedding& query, const std::string& path);

struct ManifestRecord {
    std::string video_id;
    std::string feature_path;
    std::string query_id;
    std::string query_embedding_path;
    double gt_start = 0.0;
    double gt_end = 0.0;
};

struct DatasetManifest {
    std::vector<ManifestRecord> records;
};

/// Reads a JSON-Lines manifest. Relative paths are resolved against the
/// manifest's directory. Each referenced feature file header is checked so
/// that gt_end fits inside the video.
DatasetManifest load_manifest(const std::string& path);
void write_manifest(const DatasetManifest& manifest, const std::string& path);

/// One evaluated (video, query) pair.
struct ReportRecord {
    std::string video_id;
    std::string query_id;
    double pred_start = 0.0;
    double pred_end = 0.0;
    std::size_t pred_start_frame = 0;
    std::size_t pred_end_frame = 0;
    double gt_start = 0.0;
    double gt_end = 0.0;
    double iou = 0.0;
    double score = 0.0;
    std::optional<double> lambda;
    std::optional<std::size_t> clusters_in_gt;

    friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

struct ReportSummary {
    std::map<double, double> recall;   // threshold -> R@m
    double mean_iou = 0.0;
    std::size_t count = 0;
    std::optional<double> mean_clusters_in_gt;

    friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct Report {
    std::vector<ReportRecord> records;
    ReportSummary summary;

    friend bool operator==(const Report&, const Report&) = default;
};

void write_report(const Report& report, const std::string& path);
Report read_report(const std::string& path);

} // namespace tempground
