#include "tempground/config.hpp"

#include "tempground/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tempground {

namespace {

using nlohmann::json;

std::string normalized_name(std::string_view name) {
    std::string out(name);
    for (char& c : out) {
        if (c == '-') c = '_';
    }
    return out;
}

int read_int(const json& value, const char* field) {
    if (!value.is_number_integer()) {
        throw ConfigError(std::string(field) + " must be an integer");
    }
    const auto v = value.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(std::string(field) + " is out of range");
    }
    return static_cast<int>(v);
}

double read_real(const json& value, const char* field) {
    if (!value.is_number()) {
        throw ConfigError(std::string(field) + " must be a number");
    }
    return value.get<double>();
}

} // namespace

void PipelineConfig::validate() const {
    if (pooling_window < 1) throw ConfigError("w must be positive");
    if (pooling_window % 2 == 0) throw ConfigError("w must be odd");
    if (pooling_kernel == PoolingKernel::gaussian && !(gaussian_sigma > 0.0 && std::isfinite(gaussian_sigma))) {
        throw ConfigError("sigma must be positive for the gaussian kernel");
    }
    if (num_clusters < 1) throw ConfigError("k must be positive");
    if (coherence_window < 1) throw ConfigError("r must be positive");
    if (coherence_window % 2 == 0) throw ConfigError("r must be odd");
    if (clustering_max_iters < 1) throw ConfigError("max_iters must be positive");
    if (lambda_mode == LambdaMode::fixed && !std::isfinite(fixed_lambda)) {
        throw ConfigError("lambda must be finite");
    }
}

PoolingKernel parse_pooling_kernel(std::string_view name) {
    const auto n = normalized_name(name);
    if (n == "uniform") return PoolingKernel::uniform;
    if (n == "gaussian") return PoolingKernel::gaussian;
    throw ConfigError("pooling_kernel must be one of uniform, gaussian (got '" + n + "')");
}

Normalization parse_normalization(std::string_view name) {
    const auto n = normalized_name(name);
    if (n == "none") return Normalization::none;
    if (n == "box_cox") return Normalization::box_cox;
    if (n == "yeo_johnson") return Normalization::yeo_johnson;
    throw ConfigError("normalization must be one of none, box_cox, yeo_johnson (got '" + n + "')");
}

std::string_view to_string(PoolingKernel kernel) {
    return kernel == PoolingKernel::uniform ? "uniform" : "gaussian";
}

std::string_view to_string(Normalization normalization) {
    switch (normalization) {
    case Normalization::none: return "none";
    case Normalization::box_cox: return "box_cox";
    case Normalization::yeo_johnson: return "yeo_johnson";
    }
    return "none";
}

PipelineConfig load_config(std::string_view document) {
    PipelineConfig config;

    // An empty (or whitespace-only) document means "all defaults".
    if (document.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        return config;
    }

    json root;
    try {
        root = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config must be a JSON object");
    }

    for (const auto& [key, value] : root.items()) {
        const auto field = normalized_name(key);
        if (field == "w") {
            config.pooling_window = read_int(value, "w");
        } else if (field == "pooling_kernel") {
            if (!value.is_string()) throw ConfigError("pooling_kernel must be a string");
            config.pooling_kernel = parse_pooling_kernel(value.get<std::string>());
        } else if (field == "sigma") {
            config.gaussian_sigma = read_real(value, "sigma");
        } else if (field == "k") {
            config.num_clusters = read_int(value, "k");
        } else if (field == "r") {
            config.coherence_window = read_int(value, "r");
        } else if (field == "max_iters") {
            config.clustering_max_iters = read_int(value, "max_iters");
        } else if (field == "seed") {
            if (!value.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
            config.clustering_seed = value.get<std::uint64_t>();
        } else if (field == "normalization") {
            if (!value.is_string()) throw ConfigError("normalization must be a string");
            config.normalization = parse_normalization(value.get<std::string>());
        } else if (field == "lambda") {
            if (value.is_string() && value.get<std::string>() == "auto") {
                config.lambda_mode = LambdaMode::auto_mle;
            } else {
                config.lambda_mode = LambdaMode::fixed;
                config.fixed_lambda = read_real(value, "lambda");
            }
        } else {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }

    config.validate();
    return config;
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_config(buffer.str());
}

std::string serialize_config(const PipelineConfig& config) {
    json out = json::object();
    out["w"] = config.pooling_window;
    out["pooling_kernel"] = std::string(to_string(config.pooling_kernel));
    out["sigma"] = config.gaussian_sigma;
    out["k"] = config.num_clusters;
    out["r"] = config.coherence_window;
    out["max_iters"] = config.clustering_max_iters;
    out["seed"] = config.clustering_seed;
    out["normalization"] = std::string(to_string(config.normalization));
    if (config.lambda_mode == LambdaMode::auto_mle) {
        out["lambda"] = "auto";
    } else {
        out["lambda"] = config.fixed_lambda;
    }
    return out.dump(2);
}

} // namespace tempground
