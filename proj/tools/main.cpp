#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blindeval/errors.hpp"
#include "blindeval/pipeline.hpp"
#include "blindeval/synthetic.hpp"
#include "blindeval/version.hpp"

namespace {

using namespace blindeval;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::vector<Metric> parse_metric_list(const std::string& list) {
    std::vector<Metric> metrics;
    for (const auto& name : split(list, ',')) {
        const auto metric = metric_from_string(name);
        if (!metric) throw UsageError("unknown metric: " + name);
        if (std::find(metrics.begin(), metrics.end(), *metric) == metrics.end())
            metrics.push_back(*metric);
    }
    if (metrics.empty()) throw UsageError("no metrics given");
    return metrics;
}

Method parse_method(const std::string& name) {
    const auto method = method_from_string(name);
    if (!method) throw UsageError("unknown method: " + name);
    return *method;
}

std::vector<std::pair<double, double>> parse_channels(const std::string& list) {
    std::vector<std::pair<double, double>> channels;
    for (const auto& part : split(list, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw UsageError("channel must be sensitivity:specificity, got: " + part);
        try {
            channels.emplace_back(std::stod(part.substr(0, colon)),
                                  std::stod(part.substr(colon + 1)));
        } catch (const std::exception&) {
            throw UsageError("bad channel number in: " + part);
        }
    }
    return channels;
}

// --out wins; otherwise BLINDEVAL_OUT_DIR (or the working directory) plus
// the subcommand's default file name.
std::string resolve_out(const std::string& explicit_out, const std::string& filename) {
    if (!explicit_out.empty()) return explicit_out;
    const char* dir = std::getenv("BLINDEVAL_OUT_DIR");
    const std::filesystem::path base = (dir && *dir) ? dir : ".";
    return (base / filename).string();
}

Dataset load_dataset(const std::string& matrix_path, const std::string& gold_path,
                     const std::string& crowd_path) {
    LabelMatrix matrix = load_label_matrix(matrix_path);
    std::optional<JudgmentSet> gold;
    std::optional<JudgmentSet> crowd;
    if (!gold_path.empty()) gold = load_judgment_set(gold_path, JudgmentSource::gold);
    if (!crowd_path.empty()) crowd = load_judgment_set(crowd_path, JudgmentSource::crowd);
    return make_dataset(std::move(matrix), std::move(gold), std::move(crowd));
}

struct CommonFlags {
    std::string matrix;
    std::string gold;
    std::string crowd;
    std::string metric_list = "acc,pre,rec,spe";
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::size_t xi = 1000;
    double threshold = 0.5;
    bool exclude_self = false;
    std::string calibration_target = "acc";
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_gold) {
    cmd->add_option("--matrix", flags.matrix, "label matrix CSV")->required();
    auto* gold = cmd->add_option("--gold", flags.gold, "gold judgments CSV");
    if (needs_gold) gold->required();
    cmd->add_option("--crowd", flags.crowd, "crowd judgments CSV");
    cmd->add_option("--metric", flags.metric_list, "comma list from acc,pre,rec,spe");
    cmd->add_option("--alpha", flags.alpha, "significance level");
    cmd->add_option("--seed", flags.seed, "RNG seed");
    cmd->add_option("--xi", flags.xi, "sampling trial count");
    cmd->add_option("--threshold", flags.threshold, "majority-vote threshold");
    cmd->add_flag("--exclude-self", flags.exclude_self,
                  "exclude a classifier's own sampled labels when scoring it");
    cmd->add_option("--calibration-target", flags.calibration_target,
                    "metric calibrated_mv tunes for");
    cmd->add_option("--out", flags.out, "output path");
    cmd->add_option("--format", flags.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

RunConfig build_config(const CommonFlags& flags, Method method) {
    RunConfig config;
    config.method = method;
    config.metrics = parse_metric_list(flags.metric_list);
    config.alpha = flags.alpha;
    config.seed = flags.seed;
    config.mv_threshold = flags.threshold;
    config.xi = flags.xi;
    config.sampling_exclude_self = flags.exclude_self;
    const auto target = metric_from_string(flags.calibration_target);
    if (!target) throw UsageError("unknown calibration target: " + flags.calibration_target);
    config.calibration_target = *target;
    return config;
}

void emit(const std::string& json_text, const std::string& csv_text, const CommonFlags& flags,
          const std::string& default_name) {
    const bool json = flags.format == "json";
    const std::string path =
        resolve_out(flags.out, default_name + (json ? ".json" : ".csv"));
    write_text(json ? json_text : csv_text, path);
    std::cout << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blind evaluation of binary classifier pools"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonFlags run_flags;
    std::string run_method;
    auto* run_cmd = app.add_subcommand("run", "evaluate one estimation method");
    add_common(run_cmd, run_flags, false);
    run_cmd->add_option("--method", run_method, "estimation method")->required();

    CommonFlags compare_flags;
    std::string compare_method_p;
    std::string compare_method_q;
    auto* compare_cmd =
        app.add_subcommand("compare", "triangle-test two methods against gold");
    add_common(compare_cmd, compare_flags, true);
    compare_cmd->add_option("--method", compare_method_p, "first method")->required();
    compare_cmd->add_option("--method2", compare_method_q, "second method")->required();

    CommonFlags quality_flags;
    std::string quality_methods;
    auto* quality_cmd =
        app.add_subcommand("quality", "pseudo-gold quality vs evaluation fidelity");
    add_common(quality_cmd, quality_flags, true);
    quality_cmd->add_option("--methods", quality_methods, "comma list, at least 3")->required();

    std::size_t gen_items = 0;
    double gen_prevalence = 0.5;
    std::string gen_channels;
    std::uint64_t gen_seed = 0;
    std::string gen_matrix_out;
    std::string gen_gold_out;
    auto* generate_cmd = app.add_subcommand("generate", "write a synthetic dataset");
    generate_cmd->add_option("--items", gen_items, "item count")->required();
    generate_cmd->add_option("--prevalence", gen_prevalence, "P(gold = 1)");
    generate_cmd
        ->add_option("--channels", gen_channels,
                     "comma list of sensitivity:specificity pairs, one per classifier")
        ->required();
    generate_cmd->add_option("--seed", gen_seed, "RNG seed");
    generate_cmd->add_option("--matrix-out", gen_matrix_out, "matrix output path");
    generate_cmd->add_option("--gold-out", gen_gold_out, "gold output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (run_cmd->parsed()) {
            const RunConfig config = build_config(run_flags, parse_method(run_method));
            const Dataset dataset =
                load_dataset(run_flags.matrix, run_flags.gold, run_flags.crowd);
            const EvaluationReport report = run(dataset, config);
            emit(to_json(report), to_csv(report), run_flags, "report");
        } else if (compare_cmd->parsed()) {
            const RunConfig config_p =
                build_config(compare_flags, parse_method(compare_method_p));
            const RunConfig config_q =
                build_config(compare_flags, parse_method(compare_method_q));
            const Dataset dataset =
                load_dataset(compare_flags.matrix, compare_flags.gold, compare_flags.crowd);
            const EvaluationReport report = compare(dataset, config_p, config_q);
            emit(to_json(report), to_csv(report), compare_flags, "compare");
        } else if (quality_cmd->parsed()) {
            std::vector<RunConfig> configs;
            for (const auto& name : split(quality_methods, ','))
                configs.push_back(build_config(quality_flags, parse_method(name)));
            const Dataset dataset =
                load_dataset(quality_flags.matrix, quality_flags.gold, quality_flags.crowd);
            const QualityReport report = quality_vs_fidelity(dataset, configs);
            emit(to_json(report), to_csv(report), quality_flags, "quality");
        } else if (generate_cmd->parsed()) {
            EnsembleSpec spec;
            spec.items = gen_items;
            spec.prevalence = gen_prevalence;
            spec.channels = parse_channels(gen_channels);
            spec.seed = gen_seed;
            const Dataset dataset = generate(spec);
            const std::string matrix_path = resolve_out(gen_matrix_out, "matrix.csv");
            const std::string gold_path = resolve_out(gen_gold_out, "gold.csv");
            write_label_matrix(dataset.matrix, matrix_path);
            write_judgment_set(*dataset.gold, gold_path);
            std::cout << matrix_path << "\n" << gold_path << "\n";
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
