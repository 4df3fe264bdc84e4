// Command-line front end: ground, evaluate, config, synth.

#include "tempground/config.hpp"
#include "tempground/errors.hpp"
#include "tempground/io.hpp"
#include "tempground/metrics.hpp"
#include "tempground/pipeline.hpp"
#include "tempground/synthetic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace tempground;

namespace {

// Pipeline flags shared by `ground`, `evaluate` and `config`. Flags that are
// given on the command line override the config file.
struct PipelineFlags {
    std::string config_path;
    int w = 0;
    int k = 0;
    int r = 0;
    int max_iters = 0;
    std::uint64_t seed = 0;
    std::string pooling_kernel;
    double sigma = 0.0;
    std::string normalization;
    std::string lambda;

    CLI::Option* w_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* r_opt = nullptr;
    CLI::Option* max_iters_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* kernel_opt = nullptr;
    CLI::Option* sigma_opt = nullptr;
    CLI::Option* normalization_opt = nullptr;
    CLI::Option* lambda_opt = nullptr;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        w_opt = app.add_option("--w", w, "temporal pooling window (odd)");
        k_opt = app.add_option("--k", k, "number of clusters");
        r_opt = app.add_option("--r", r, "coherence window (odd, 1 = plain k-means)");
        max_iters_opt = app.add_option("--max-iters", max_iters, "clustering iteration cap");
        seed_opt = app.add_option("--seed", seed, "clustering seed");
        kernel_opt = app.add_option("--pooling-kernel", pooling_kernel, "uniform | gaussian");
        sigma_opt = app.add_option("--sigma", sigma, "gaussian kernel sigma (frames)");
        normalization_opt = app.add_option("--normalization", normalization, "none | box-cox | yeo-johnson");
        lambda_opt = app.add_option("--lambda", lambda, "fixed lambda, or 'auto'");
    }

    PipelineConfig resolve() const {
        PipelineConfig config = config_path.empty() ? PipelineConfig{} : load_config_file(config_path);
        if (w_opt->count()) config.pooling_window = w;
        if (k_opt->count()) config.num_clusters = k;
        if (r_opt->count()) config.coherence_window = r;
        if (max_iters_opt->count()) config.clustering_max_iters = max_iters;
        if (seed_opt->count()) config.clustering_seed = seed;
        if (kernel_opt->count()) config.pooling_kernel = parse_pooling_kernel(pooling_kernel);
        if (sigma_opt->count()) config.gaussian_sigma = sigma;
        if (normalization_opt->count()) config.normalization = parse_normalization(normalization);
        if (lambda_opt->count()) {
            if (lambda == "auto") {
                config.lambda_mode = LambdaMode::auto_mle;
            } else {
                config.lambda_mode = LambdaMode::fixed;
                try {
                    config.fixed_lambda = std::stod(lambda);
                } catch (const std::exception&) {
                    throw ConfigError("lambda must be a number or 'auto'");
                }
            }
        }
        config.validate();
        return config;
    }
};

std::vector<double> parse_thresholds(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InvalidInput("bad threshold '" + item + "'");
        }
    }
    if (out.empty()) throw InvalidInput("no thresholds given");
    return out;
}

void print_labels(const std::vector<int>& labels) {
    std::cout << "labels:";
    for (int l : labels) std::cout << ' ' << l;
    std::cout << '\n';
}

int run_ground(const PipelineFlags& flags, const std::string& features_path,
               const std::vector<std::string>& query_paths, bool dump_proposals, bool dump_labels) {
    const PipelineConfig config = flags.resolve();
    const FeatureSequence features = read_feature_file(features_path);
    std::vector<QueryEmbedding> queries;
    for (const auto& p : query_paths) queries.push_back(read_query_file(p));

    const GroundingRun run = ground(features, queries, config, {.keep_ranking = dump_proposals});
    const auto& res = run.result;

    std::cout << std::setprecision(6);
    std::cout << "interval_seconds: " << res.start_seconds << ' ' << res.end_seconds << '\n';
    std::cout << "interval_frames: " << res.interval.start << ' ' << res.interval.end << '\n';
    std::cout << "score: " << res.score << '\n';
    if (queries.size() > 1) std::cout << "query_index: " << res.query_index << '\n';
    if (res.lambda) std::cout << "lambda: " << *res.lambda << '\n';
    std::cout << "change_points: " << run.change_points.points.size() << " proposals: " << run.proposals.size() << '\n';

    if (dump_labels) {
        print_labels(run.clustering.labels);
        std::cout << "T:";
        for (auto t : run.change_points.points) std::cout << ' ' << t;
        std::cout << '\n';
    }
    if (dump_proposals) {
        std::cout << "rank start end score inside_mean outside_mean\n";
        for (std::size_t i = 0; i < res.ranked.size(); ++i) {
            const auto& sp = res.ranked[i];
            std::cout << i << ' ' << sp.proposal.start << ' ' << sp.proposal.end << ' ' << sp.score << ' '
                      << sp.inside_mean << ' ' << sp.outside_mean << '\n';
        }
    }
    return 0;
}

struct EvalArgs {
    std::string manifest;
    std::string thresholds = "0.3,0.5,0.7";
    double noise_rho = 0.0;
    std::uint64_t noise_seed = 0;
    bool fragmentation = false;
    std::string report_path;
    unsigned jobs = 1;
};

int run_evaluate(const PipelineFlags& flags, const EvalArgs& args) {
    const PipelineConfig config = flags.resolve();
    const std::vector<double> thresholds = parse_thresholds(args.thresholds);
    const DatasetManifest manifest = load_manifest(args.manifest);
    if (manifest.records.empty()) throw InvalidInput("manifest has no records");

    const std::size_t count = manifest.records.size();
    std::vector<ReportRecord> rows(count);
    std::vector<EvalRecord> eval(count);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                const auto& rec = manifest.records[i];
                FeatureSequence features = read_feature_file(rec.feature_path);
                const QueryEmbedding query = read_query_file(rec.query_embedding_path);
                Interval gt{rec.gt_start, rec.gt_end};
                if (args.noise_rho > 0.0) {
                    auto augmented = insert_noise_prefix(features, gt, {args.noise_rho, args.noise_seed + i});
                    features = std::move(augmented.features);
                    gt = augmented.ground_truth;
                }
                const GroundingRun run = ground(features, query, config);
                const Interval pred{run.result.start_seconds, run.result.end_seconds};

                ReportRecord& row = rows[i];
                row.video_id = rec.video_id;
                row.query_id = rec.query_id;
                row.pred_start = pred.start;
                row.pred_end = pred.end;
                row.pred_start_frame = run.result.interval.start;
                row.pred_end_frame = run.result.interval.end;
                row.gt_start = gt.start;
                row.gt_end = gt.end;
                row.iou = interval_iou(pred, gt);
                row.score = run.result.score;
                row.lambda = run.result.lambda;
                if (args.fragmentation) {
                    const Proposal gt_frames = interval_to_frames(gt, features.frame_rate, features.num_frames());
                    row.clusters_in_gt = clusters_per_gt(run.clustering.labels, gt_frames);
                }
                eval[i] = {pred, gt};
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (first_error.empty()) first_error = "record " + std::to_string(i + 1) + ": " + e.what();
                next = count;
            }
        }
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(args.jobs, static_cast<unsigned>(count)));
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
    }
    if (!first_error.empty()) throw Error(first_error);

    const EvalSummary summary = evaluate(eval, thresholds);
    Report report;
    report.records = std::move(rows);
    report.summary.recall = summary.recall;
    report.summary.mean_iou = summary.mean_iou;
    report.summary.count = summary.count;
    if (args.fragmentation) {
        double total = 0.0;
        for (const auto& r : report.records) total += static_cast<double>(*r.clusters_in_gt);
        report.summary.mean_clusters_in_gt = total / static_cast<double>(count);
    }
    if (!args.report_path.empty()) write_report(report, args.report_path);

    std::cout << std::fixed << std::setprecision(2);
    std::cout << "records: " << summary.count << '\n';
    for (const auto& [m, value] : summary.recall) {
        std::cout << "R@" << std::setprecision(2) << m << ": " << value * 100.0 << '\n';
    }
    std::cout << "mIoU: " << summary.mean_iou * 100.0 << '\n';
    if (report.summary.mean_clusters_in_gt) {
        std::cout << "clusters per ground truth: " << *report.summary.mean_clusters_in_gt << '\n';
    }
    return 0;
}

struct SynthArgs {
    std::string out_dir;
    std::size_t videos = 20;
    std::uint64_t seed = 1;
    double spike_fraction = 0.0;
    double frame_rate = 1.0;
};

int run_synth(const SynthArgs& args) {
    fs::create_directories(args.out_dir);
    synthetic::PlantedOptions options;
    options.spike_fraction = args.spike_fraction;
    options.frame_rate = args.frame_rate;

    DatasetManifest manifest;
    for (std::size_t v = 0; v < args.videos; ++v) {
        const auto video = synthetic::planted_segment_video(args.seed + v, options);
        const std::string id = "synth" + std::to_string(v);
        write_feature_file(video.features, (fs::path(args.out_dir) / (id + ".tagf")).string());
        write_query_file(video.query, (fs::path(args.out_dir) / (id + ".query.tagf")).string());
        manifest.records.push_back({id, id + ".tagf", id + "_q0", id + ".query.tagf",
                                    static_cast<double>(video.target.start) / args.frame_rate,
                                    static_cast<double>(video.target.end) / args.frame_rate});
    }
    const auto manifest_path = (fs::path(args.out_dir) / "manifest.jsonl").string();
    write_manifest(manifest, manifest_path);
    std::cout << "wrote " << args.videos << " videos and " << manifest_path << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Training-free video temporal grounding over precomputed frame embeddings"};
    app.require_subcommand(1);

    PipelineFlags ground_flags;
    std::string features_path;
    std::vector<std::string> query_paths;
    bool dump_proposals = false;
    bool dump_labels = false;
    auto* ground_cmd = app.add_subcommand("ground", "ground one query (or several paraphrases) in one video");
    ground_cmd->add_option("--features", features_path, "TAGF feature file")->required()->check(CLI::ExistingFile);
    ground_cmd->add_option("--query", query_paths, "TAGF query vector; repeat for paraphrases")
        ->required()
        ->check(CLI::ExistingFile);
    ground_cmd->add_flag("--dump-proposals", dump_proposals, "print every proposal, best first");
    ground_cmd->add_flag("--dump-labels", dump_labels, "print cluster labels and change points");
    ground_flags.attach(*ground_cmd);

    PipelineFlags eval_flags;
    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("evaluate", "run a manifest and report R@m / mIoU");
    eval_cmd->add_option("--manifest", eval_args.manifest, "JSON-Lines manifest")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--thresholds", eval_args.thresholds, "comma-separated IoU thresholds");
    eval_cmd->add_option("--noise-rho", eval_args.noise_rho, "seconds of random frames to prepend");
    eval_cmd->add_option("--noise-seed", eval_args.noise_seed, "seed for the prepended frames");
    eval_cmd->add_flag("--fragmentation", eval_args.fragmentation, "count cluster runs inside each ground truth");
    eval_cmd->add_option("--report", eval_args.report_path, "write a JSON-Lines report here");
    eval_cmd->add_option("--jobs", eval_args.jobs, "worker threads")->check(CLI::PositiveNumber);
    eval_flags.attach(*eval_cmd);

    PipelineFlags config_flags;
    auto* config_cmd = app.add_subcommand("config", "print the effective configuration");
    config_flags.attach(*config_cmd);

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic planted-segment dataset");
    synth_cmd->add_option("--out-dir", synth_args.out_dir, "output directory")->required();
    synth_cmd->add_option("--videos", synth_args.videos, "number of videos");
    synth_cmd->add_option("--seed", synth_args.seed, "first seed");
    synth_cmd->add_option("--spike-fraction", synth_args.spike_fraction, "distractor spike rate");
    synth_cmd->add_option("--fps", synth_args.frame_rate, "frame rate written to the files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ground_cmd) return run_ground(ground_flags, features_path, query_paths, dump_proposals, dump_labels);
        if (*eval_cmd) return run_evaluate(eval_flags, eval_args);
        if (*config_cmd) {
            std::cout << serialize_config(config_flags.resolve()) << '\n';
            return 0;
        }
        if (*synth_cmd) return run_synth(synth_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
