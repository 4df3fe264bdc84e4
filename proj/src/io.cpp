#include "tempground/io.hpp"

#include "tempground/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

namespace tempground {

namespace fs = std::filesystem;
using nlohmann::json;

void FeatureSequence::validate() const {
    if (data.rows() == 0 || data.cols() == 0) throw InvalidInput("feature sequence must have N >= 1 and D >= 1");
    if (!(frame_rate > 0.0f) || !std::isfinite(frame_rate)) throw InvalidInput("invalid frame rate");
    if (!data.all_finite()) throw InvalidInput("feature sequence contains non-finite values");
}

namespace {

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) {
        out.push_back(static_cast<char>((v >> shift) & 0xff));
    }
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

TagfHeader parse_header(std::istream& in, const std::string& path, std::uintmax_t file_size) {
    std::array<unsigned char, tagf_header_size> raw{};
    in.read(reinterpret_cast<char*>(raw.data()), raw.size());
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
        throw FormatError(path + ": truncated header");
    }
    if (std::memcmp(raw.data(), "TAGF", 4) != 0) throw FormatError(path + ": bad magic");

    TagfHeader header;
    header.version = get_u16(raw.data() + 4);
    header.rows = get_u32(raw.data() + 6);
    header.cols = get_u32(raw.data() + 10);
    header.frame_rate = std::bit_cast<float>(get_u32(raw.data() + 14));

    if (header.version != tagf_version) {
        throw FormatError(path + ": unsupported version " + std::to_string(header.version));
    }
    if (header.rows == 0 || header.cols == 0) throw FormatError(path + ": N and D must be nonzero");
    if (!(header.frame_rate > 0.0f) || !std::isfinite(header.frame_rate)) {
        throw FormatError(path + ": invalid frame rate");
    }
    const std::uintmax_t expected =
        tagf_header_size + std::uintmax_t{4} * header.rows * header.cols;
    if (file_size < expected) throw FormatError(path + ": truncated payload");
    if (file_size > expected) throw FormatError(path + ": trailing bytes after payload");
    return header;
}

std::ifstream open_binary(const std::string& path, std::uintmax_t& size) {
    std::error_code ec;
    size = fs::file_size(path, ec);
    if (ec) throw FormatError(path + ": cannot stat file (" + ec.message() + ")");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path + ": cannot open file");
    return in;
}

void write_tagf(const Matrix& data, float frame_rate, const std::string& path) {
    if (!(frame_rate > 0.0f) || !std::isfinite(frame_rate)) throw InvalidInput("invalid frame rate");
    if (data.rows() == 0 || data.cols() == 0) throw InvalidInput("cannot write an empty matrix");
    if (data.rows() > UINT32_MAX || data.cols() > UINT32_MAX) throw InvalidInput("matrix too large for TAGF");

    std::string bytes;
    bytes.reserve(tagf_header_size + 4 * data.values().size());
    bytes.append("TAGF");
    put_u16(bytes, tagf_version);
    put_u32(bytes, static_cast<std::uint32_t>(data.rows()));
    put_u32(bytes, static_cast<std::uint32_t>(data.cols()));
    put_u32(bytes, std::bit_cast<std::uint32_t>(frame_rate));
    for (float v : data.values()) put_u32(bytes, std::bit_cast<std::uint32_t>(v));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for '" + path + "'");
}

} // namespace

TagfHeader read_feature_header(const std::string& path) {
    std::uintmax_t size = 0;
    auto in = open_binary(path, size);
    return parse_header(in, path, size);
}

FeatureSequence read_feature_file(const std::string& path) {
    std::uintmax_t size = 0;
    auto in = open_binary(path, size);
    const TagfHeader header = parse_header(in, path, size);

    const std::size_t count = std::size_t{header.rows} * header.cols;
    std::vector<unsigned char> payload(count * 4);
    in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (in.gcount() != static_cast<std::streamsize>(payload.size())) {
        throw FormatError(path + ": truncated payload");
    }

    std::vector<float> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = std::bit_cast<float>(get_u32(payload.data() + 4 * i));
        if (!std::isfinite(values[i])) throw FormatError(path + ": non-finite value at index " + std::to_string(i));
    }
    return FeatureSequence{Matrix(header.rows, header.cols, std::move(values)), header.frame_rate};
}

void write_feature_file(const FeatureSequence& seq, const std::string& path) {
    write_tagf(seq.data, seq.frame_rate, path);
}

QueryEmbedding read_query_file(const std::string& path) {
    FeatureSequence seq = read_feature_file(path);
    if (seq.num_frames() != 1) {
        throw FormatError(path + ": query file must hold exactly one row (found " +
                          std::to_string(seq.num_frames()) + ")");
    }
    auto row = seq.data.row(0);
    return QueryEmbedding{{row.begin(), row.end()}};
}

void write_query_file(const QueryEmbedding& query, const std::string& path) {
    write_tagf(Matrix(1, query.dim(), query.values), 1.0f, path);
}

// ---------------------------------------------------------------------------
// Manifests

namespace {

std::string line_error(std::size_t line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}

std::string require_string(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw FormatError(line_error(line, std::string("missing string field '") + key + "'"));
    }
    return it->get<std::string>();
}

double require_number(const json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw FormatError(line_error(line, std::string("missing numeric field '") + key + "'"));
    }
    return it->get<double>();
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

} // namespace

DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open manifest '" + path + "'");
    const fs::path base = fs::path(path).parent_path();

    auto resolve = [&](const std::string& p) {
        const fs::path candidate(p);
        return candidate.is_absolute() ? candidate.string() : (base / candidate).string();
    };

    DatasetManifest manifest;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw FormatError(line_error(line_no, std::string("malformed JSON: ") + e.what()));
        }
        if (!obj.is_object()) throw FormatError(line_error(line_no, "record must be a JSON object"));

        ManifestRecord rec;
        rec.video_id = require_string(obj, "video_id", line_no);
        rec.feature_path = resolve(require_string(obj, "feature_path", line_no));
        rec.query_id = require_string(obj, "query_id", line_no);
        rec.query_embedding_path = resolve(require_string(obj, "query_embedding_path", line_no));
        rec.gt_start = require_number(obj, "gt_start", line_no);
        rec.gt_end = require_number(obj, "gt_end", line_no);

        if (!(rec.gt_start >= 0.0)) throw FormatError(line_error(line_no, "gt_start must be >= 0"));
        if (!(rec.gt_end > rec.gt_start)) throw FormatError(line_error(line_no, "gt_end must be greater than gt_start"));

        if (!fs::exists(rec.feature_path)) {
            throw FormatError(line_error(line_no, "feature file not found: " + rec.feature_path));
        }
        TagfHeader header;
        try {
            header = read_feature_header(rec.feature_path);
        } catch (const FormatError& e) {
            throw FormatError(line_error(line_no, e.what()));
        }
        const double duration = static_cast<double>(header.rows) / header.frame_rate;
        if (rec.gt_end > duration + 1e-6) {
            throw FormatError(line_error(line_no, "gt_end " + std::to_string(rec.gt_end) +
                                                      " exceeds video duration " + std::to_string(duration)));
        }
        manifest.records.push_back(std::move(rec));
    }
    return manifest;
}

void write_manifest(const DatasetManifest& manifest, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    for (const auto& rec : manifest.records) {
        json obj = {
            {"video_id", rec.video_id},
            {"feature_path", rec.feature_path},
            {"query_id", rec.query_id},
            {"query_embedding_path", rec.query_embedding_path},
            {"gt_start", rec.gt_start},
            {"gt_end", rec.gt_end},
        };
        out << obj.dump() << '\n';
    }
}

// ---------------------------------------------------------------------------
// Reports

void write_report(const Report& report, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");

    for (const auto& rec : report.records) {
        json obj = {
            {"type", "record"},
            {"video_id", rec.video_id},
            {"query_id", rec.query_id},
            {"pred_start", rec.pred_start},
            {"pred_end", rec.pred_end},
            {"pred_start_frame", rec.pred_start_frame},
            {"pred_end_frame", rec.pred_end_frame},
            {"gt_start", rec.gt_start},
            {"gt_end", rec.gt_end},
            {"iou", rec.iou},
            {"score", rec.score},
        };
        if (rec.lambda) obj["lambda"] = *rec.lambda;
        if (rec.clusters_in_gt) obj["clusters_in_gt"] = *rec.clusters_in_gt;
        out << obj.dump() << '\n';
    }

    json recall = json::object();
    for (const auto& [m, value] : report.summary.recall) recall[json(m).dump()] = value;
    json summary = {
        {"type", "summary"},
        {"recall", recall},
        {"mean_iou", report.summary.mean_iou},
        {"count", report.summary.count},
    };
    if (report.summary.mean_clusters_in_gt) summary["mean_clusters_in_gt"] = *report.summary.mean_clusters_in_gt;
    out << summary.dump() << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

Report read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open report '" + path + "'");

    Report report;
    bool have_summary = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        try {
            const json obj = json::parse(line);
            const auto type = obj.at("type").get<std::string>();
            if (type == "record") {
                ReportRecord rec;
                rec.video_id = obj.at("video_id").get<std::string>();
                rec.query_id = obj.at("query_id").get<std::string>();
                rec.pred_start = obj.at("pred_start").get<double>();
                rec.pred_end = obj.at("pred_end").get<double>();
                rec.pred_start_frame = obj.at("pred_start_frame").get<std::size_t>();
                rec.pred_end_frame = obj.at("pred_end_frame").get<std::size_t>();
                rec.gt_start = obj.at("gt_start").get<double>();
                rec.gt_end = obj.at("gt_end").get<double>();
                rec.iou = obj.at("iou").get<double>();
                rec.score = obj.at("score").get<double>();
                if (obj.contains("lambda")) rec.lambda = obj["lambda"].get<double>();
                if (obj.contains("clusters_in_gt")) rec.clusters_in_gt = obj["clusters_in_gt"].get<std::size_t>();
                report.records.push_back(std::move(rec));
            } else if (type == "summary") {
                for (const auto& [key, value] : obj.at("recall").items()) {
                    report.summary.recall[std::stod(key)] = value.get<double>();
                }
                report.summary.mean_iou = obj.at("mean_iou").get<double>();
                report.summary.count = obj.at("count").get<std::size_t>();
                if (obj.contains("mean_clusters_in_gt")) {
                    report.summary.mean_clusters_in_gt = obj["mean_clusters_in_gt"].get<double>();
                }
                have_summary = true;
            } else {
                throw FormatError("unknown record type '" + type + "'");
            }
        } catch (const json::exception& e) {
            throw FormatError(line_error(line_no, e.what()));
        } catch (const FormatError& e) {
            throw FormatError(line_error(line_no, e.what()));
        }
    }
    if (!have_summary) throw FormatError(path + ": report has no summary line");
    return report;
}

} // namespace tempground
