#include "blindeval/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include <json.hpp>

#include "blindeval/errors.hpp"
#include "blindeval/version.hpp"

namespace blindeval {

namespace {

using ordered_json = nlohmann::ordered_json;

const MetricEvaluation& metric_eval(const MethodEvaluation& eval, Metric metric) {
    for (const auto& me : eval.per_metric)
        if (me.metric == metric) return me;
    throw UsageError("metric not evaluated: " + std::string(to_string(metric)));
}

std::vector<std::optional<double>> metric_means(const MethodEvaluation& eval, Metric metric) {
    std::vector<std::optional<double>> means(eval.estimated.size());
    for (std::size_t k = 0; k < eval.estimated.size(); ++k) means[k] = eval.estimated[k][metric];
    return means;
}

// Estimated scores and per-metric rankings for a judgment set.
MethodEvaluation evaluate_judgments(const LabelMatrix& matrix, const JudgmentSet& judgments,
                                    std::string name, const std::vector<Metric>& metrics,
                                    double alpha) {
    MethodEvaluation eval;
    eval.method_name = std::move(name);
    eval.classifier_ids = matrix.classifier_ids();
    for (std::size_t k = 0; k < matrix.classifier_count(); ++k)
        eval.estimated.push_back(scores(confusion(matrix, k, judgments)));
    for (Metric metric : metrics) {
        MetricEvaluation me;
        me.metric = metric;
        me.verdicts = pairwise_from_judgments(matrix, judgments, metric, alpha);
        me.ranking = copeland_rank(me.verdicts, metric_means(eval, metric));
        eval.per_metric.push_back(std::move(me));
    }
    return eval;
}

MethodEvaluation evaluate_trials(const LabelMatrix& matrix, const EstimatedScores& est,
                                 std::string name, const std::vector<Metric>& metrics,
                                 double alpha) {
    MethodEvaluation eval;
    eval.method_name = std::move(name);
    eval.classifier_ids = matrix.classifier_ids();
    eval.estimated = est.means;
    eval.trial_count = est.trial_count;
    eval.undefined_trials = est.undefined_trials;
    for (Metric metric : metrics) {
        MetricEvaluation me;
        me.metric = metric;
        me.verdicts = pairwise_from_trials(est, metric, alpha);
        me.ranking = copeland_rank(me.verdicts, metric_means(eval, metric));
        eval.per_metric.push_back(std::move(me));
    }
    return eval;
}

MethodEvaluation evaluate_method(const Dataset& dataset, const RunConfig& config) {
    const LabelMatrix& matrix = dataset.matrix;
    if (needs_crowd(config.method) && !dataset.crowd)
        throw UsageError(std::string(to_string(config.method)) + " requires a crowd judgment set");

    MethodEvaluation eval;
    switch (config.method) {
        case Method::mv: {
            auto mv = majority_vote(matrix, MVConfig{config.mv_threshold, config.seed});
            eval = evaluate_judgments(matrix, mv.labels, "mv", config.metrics, config.alpha);
            eval.pseudo_gold = std::move(mv.labels);
            break;
        }
        case Method::em: {
            auto em = em_fit(matrix, config.em);
            eval = evaluate_judgments(matrix, em.labels, "em", config.metrics, config.alpha);
            eval.pseudo_gold = std::move(em.labels);
            break;
        }
        case Method::calibrated_mv:
        case Method::nb:
        case Method::glm:
        case Method::svm:
        case Method::adaboost: {
            const TrainingSet train = make_training_set(matrix, *dataset.crowd);
            SupervisedModel model;
            switch (config.method) {
                case Method::calibrated_mv:
                    model = train_calibrated_mv(train, config.calibration_target);
                    break;
                case Method::nb: model = train_naive_bayes(train); break;
                case Method::glm: model = train_glm(train); break;
                case Method::svm: model = train_svm(train); break;
                default: model = train_adaboost(train); break;
            }
            JudgmentSet labels = predict(model, matrix);
            eval = evaluate_judgments(matrix, labels, to_string(config.method), config.metrics,
                                      config.alpha);
            eval.pseudo_gold = std::move(labels);
            break;
        }
        case Method::direct_crowd: {
            eval = evaluate_judgments(matrix, *dataset.crowd, "direct_crowd", config.metrics,
                                      config.alpha);
            eval.pseudo_gold = *dataset.crowd;
            break;
        }
        case Method::round_robin: {
            eval = evaluate_trials(matrix, round_robin(matrix), "round_robin", config.metrics,
                                   config.alpha);
            break;
        }
        case Method::sampling: {
            auto est = sample_pseudo_gold(
                matrix, SamplingConfig{config.xi, config.seed, config.sampling_exclude_self});
            eval = evaluate_trials(matrix, est, "sampling", config.metrics, config.alpha);
            break;
        }
    }
    if (dataset.gold && eval.pseudo_gold)
        eval.pseudo_gold_quality = scores(confusion(*eval.pseudo_gold, *dataset.gold));
    return eval;
}

// Estimated-vs-actual fidelity per metric. Pearson pairs the score
// vectors; the rank measures pair the competition ranks. Both restrict to
// classifiers defined on both sides (the same set: a classifier is ranked
// iff its metric is defined).
CorrelationReport correlate_metric(const MethodEvaluation& est, const MethodEvaluation& act,
                                   Metric metric) {
    std::vector<double> est_scores;
    std::vector<double> act_scores;
    std::vector<double> est_ranks;
    std::vector<double> act_ranks;
    const MetricEvaluation& est_me = metric_eval(est, metric);
    const MetricEvaluation& act_me = metric_eval(act, metric);
    for (std::size_t k = 0; k < est.classifier_ids.size(); ++k) {
        const auto e = est.estimated[k][metric];
        const auto a = act.estimated[k][metric];
        if (!e || !a) continue;
        est_scores.push_back(*e);
        act_scores.push_back(*a);
        est_ranks.push_back(static_cast<double>(*est_me.ranking.entries[k].rank));
        act_ranks.push_back(static_cast<double>(*act_me.ranking.entries[k].rank));
    }
    CorrelationReport report;
    report.n = est_scores.size();
    if (report.n < 2) return report;
    report.pearson_r = pearson(est_scores, act_scores);
    report.spearman_rho = spearman(est_ranks, act_ranks);
    report.kendall_tau = blindeval::kendall_tau(est_ranks, act_ranks);
    report.swap_pct = blindeval::swap_pct(est_ranks, act_ranks);
    return report;
}

constexpr const char* kMeasures[] = {"pearson", "spearman", "kendall", "swap"};

// One measure's correlation for the triangle test; swap maps onto the
// correlation scale as 1 - swap/50.
std::optional<double> measure_correlation(const std::string& measure,
                                          std::span<const double> score_a,
                                          std::span<const double> score_b,
                                          std::span<const double> rank_a,
                                          std::span<const double> rank_b) {
    if (measure == "pearson") return pearson(score_a, score_b);
    if (measure == "spearman") return spearman(rank_a, rank_b);
    if (measure == "kendall") return kendall_tau(rank_a, rank_b);
    const auto swap = swap_pct(rank_a, rank_b);
    if (!swap) return std::nullopt;
    return 1.0 - *swap / 50.0;
}

std::vector<TriangleEntry> build_triangles(const MethodEvaluation& act,
                                           const MethodEvaluation& p, const MethodEvaluation& q,
                                           const std::vector<Metric>& metrics) {
    std::vector<TriangleEntry> entries;
    for (Metric metric : metrics) {
        std::vector<double> act_scores;
        std::vector<double> p_scores;
        std::vector<double> q_scores;
        std::vector<double> act_ranks;
        std::vector<double> p_ranks;
        std::vector<double> q_ranks;
        const MetricEvaluation& act_me = metric_eval(act, metric);
        const MetricEvaluation& p_me = metric_eval(p, metric);
        const MetricEvaluation& q_me = metric_eval(q, metric);
        for (std::size_t k = 0; k < act.classifier_ids.size(); ++k) {
            const auto a = act.estimated[k][metric];
            const auto vp = p.estimated[k][metric];
            const auto vq = q.estimated[k][metric];
            if (!a || !vp || !vq) continue;
            act_scores.push_back(*a);
            p_scores.push_back(*vp);
            q_scores.push_back(*vq);
            act_ranks.push_back(static_cast<double>(*act_me.ranking.entries[k].rank));
            p_ranks.push_back(static_cast<double>(*p_me.ranking.entries[k].rank));
            q_ranks.push_back(static_cast<double>(*q_me.ranking.entries[k].rank));
        }
        const std::size_t n = act_scores.size();
        for (const char* measure : kMeasures) {
            TriangleEntry entry;
            entry.metric = metric;
            entry.measure = measure;
            if (n < 4) {
                entry.error = "need at least 4 jointly defined classifiers";
                entries.push_back(std::move(entry));
                continue;
            }
            const auto r_xy =
                measure_correlation(entry.measure, act_scores, p_scores, act_ranks, p_ranks);
            const auto r_xz =
                measure_correlation(entry.measure, act_scores, q_scores, act_ranks, q_ranks);
            const auto r_yz =
                measure_correlation(entry.measure, p_scores, q_scores, p_ranks, q_ranks);
            if (!r_xy || !r_xz || !r_yz) {
                entry.error = "undefined correlation in the triple";
                entries.push_back(std::move(entry));
                continue;
            }
            try {
                entry.verdict = triangle_test(*r_xy, *r_xz, *r_yz, n);
            } catch (const DataError& e) {
                entry.error = e.what();
            }
            entries.push_back(std::move(entry));
        }
    }
    return entries;
}

// --- serialization ---

std::string format_double(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

ordered_json json_double(double value) {
    if (std::isfinite(value)) return value;
    return format_double(value);  // "inf" / "-inf"; JSON numbers cannot hold them
}

ordered_json json_opt(const std::optional<double>& value) {
    if (!value) return nullptr;
    return json_double(*value);
}

ordered_json json_scores(const MetricScores& scores) {
    ordered_json out;
    for (Metric metric : kAllMetrics) out[to_string(metric)] = json_opt(scores[metric]);
    return out;
}

ordered_json json_config(const RunConfig& config) {
    ordered_json out;
    out["method"] = to_string(config.method);
    ordered_json metrics = ordered_json::array();
    for (Metric metric : config.metrics) metrics.push_back(to_string(metric));
    out["metrics"] = metrics;
    out["alpha"] = config.alpha;
    out["seed"] = config.seed;
    out["mv_threshold"] = config.mv_threshold;
    out["xi"] = config.xi;
    out["sampling_exclude_self"] = config.sampling_exclude_self;
    out["calibration_target"] = to_string(config.calibration_target);
    out["em"] = {{"max_iters", config.em.max_iters},
                 {"tol", config.em.tol},
                 {"smoothing", config.em.smoothing},
                 {"hard", config.em.hard}};
    return out;
}

ordered_json json_method(const MethodEvaluation& eval) {
    ordered_json out;
    out["name"] = eval.method_name;
    out["classifiers"] = eval.classifier_ids;

    ordered_json scores;
    for (std::size_t k = 0; k < eval.classifier_ids.size(); ++k)
        scores[eval.classifier_ids[k]] = json_scores(eval.estimated[k]);
    out["scores"] = scores;

    ordered_json rankings;
    ordered_json pairwise;
    for (const auto& me : eval.per_metric) {
        ordered_json entries = ordered_json::array();
        for (const auto& entry : me.ranking.entries) {
            ordered_json e;
            e["classifier"] = entry.classifier_id;
            e["score"] = json_opt(entry.score);
            e["copeland"] = entry.copeland ? ordered_json(*entry.copeland) : nullptr;
            e["rank"] = entry.rank ? ordered_json(*entry.rank) : nullptr;
            entries.push_back(std::move(e));
        }
        rankings[to_string(me.metric)] = std::move(entries);

        ordered_json cells = ordered_json::array();
        const std::size_t K = me.verdicts.size();
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = a + 1; b < K; ++b) {
                ordered_json cell;
                cell["a"] = me.verdicts.classifier_ids[a];
                cell["b"] = me.verdicts.classifier_ids[b];
                cell["verdict"] = to_string(me.verdicts.verdict(a, b));
                cell["p"] = json_double(me.verdicts.p_value(a, b));
                cells.push_back(std::move(cell));
            }
        }
        pairwise[to_string(me.metric)] = std::move(cells);
    }
    out["rankings"] = std::move(rankings);
    out["pairwise"] = std::move(pairwise);

    if (eval.trial_count > 0) {
        out["trial_count"] = eval.trial_count;
        ordered_json undefined;
        for (std::size_t k = 0; k < eval.classifier_ids.size(); ++k) {
            ordered_json per;
            for (Metric metric : kAllMetrics)
                per[to_string(metric)] =
                    eval.undefined_trials[k][static_cast<std::size_t>(metric)];
            undefined[eval.classifier_ids[k]] = std::move(per);
        }
        out["undefined_trials"] = std::move(undefined);
    }
    if (eval.pseudo_gold) {
        ordered_json labels;
        for (const auto& [item_id, label] : eval.pseudo_gold->entries())
            labels[item_id] = static_cast<int>(label);
        out["pseudo_gold"] = std::move(labels);
    }
    if (eval.pseudo_gold_quality)
        out["pseudo_gold_quality"] = json_scores(*eval.pseudo_gold_quality);
    return out;
}

ordered_json json_correlations(const std::vector<std::pair<Metric, CorrelationReport>>& blocks) {
    ordered_json out;
    for (const auto& [metric, report] : blocks) {
        ordered_json block;
        block["n"] = report.n;
        block["pearson_r"] = json_opt(report.pearson_r);
        block["spearman_rho"] = json_opt(report.spearman_rho);
        block["kendall_tau"] = json_opt(report.kendall_tau);
        block["swap_pct"] = json_opt(report.swap_pct);
        out[to_string(metric)] = std::move(block);
    }
    return out;
}

void csv_escape(std::string& out, const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void csv_row(std::string& out, std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& field : fields) {
        if (!first) out += ',';
        first = false;
        csv_escape(out, field);
    }
    out += '\n';
}

std::string opt_str(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string();
}

void csv_method(std::string& out, const MethodEvaluation& eval) {
    for (const auto& me : eval.per_metric) {
        for (std::size_t k = 0; k < eval.classifier_ids.size(); ++k) {
            const auto& entry = me.ranking.entries[k];
            csv_row(out, {"score", eval.method_name, to_string(me.metric),
                          eval.classifier_ids[k], opt_str(entry.score),
                          entry.copeland ? std::to_string(*entry.copeland) : std::string(),
                          entry.rank ? std::to_string(*entry.rank) : std::string(),
                          std::string(), std::string(), std::string(), std::string()});
        }
    }
    if (eval.pseudo_gold_quality) {
        for (Metric metric : kAllMetrics) {
            csv_row(out, {"quality", eval.method_name, to_string(metric), "pseudo_gold",
                          opt_str((*eval.pseudo_gold_quality)[metric]), std::string(),
                          std::string(), std::string(), std::string(), std::string(),
                          std::string()});
        }
    }
}

void csv_correlations(std::string& out, const std::string& method,
                      const std::vector<std::pair<Metric, CorrelationReport>>& blocks) {
    for (const auto& [metric, report] : blocks) {
        const std::pair<const char*, const std::optional<double>*> measures[] = {
            {"pearson", &report.pearson_r},
            {"spearman", &report.spearman_rho},
            {"kendall", &report.kendall_tau},
            {"swap", &report.swap_pct},
        };
        for (const auto& [name, value] : measures) {
            csv_row(out, {"correlation", method, to_string(metric), name, opt_str(*value),
                          std::string(), std::string(), std::to_string(report.n), std::string(),
                          std::string(), std::string()});
        }
    }
}

constexpr const char* kCsvHeader =
    "record,method,metric,name,value,copeland,rank,n,p_value,df,note\n";

}  // namespace

const char* to_string(Method method) {
    switch (method) {
        case Method::mv: return "mv";
        case Method::em: return "em";
        case Method::calibrated_mv: return "calibrated_mv";
        case Method::nb: return "nb";
        case Method::glm: return "glm";
        case Method::svm: return "svm";
        case Method::adaboost: return "adaboost";
        case Method::round_robin: return "round_robin";
        case Method::sampling: return "sampling";
        case Method::direct_crowd: return "direct_crowd";
    }
    return "unknown";
}

std::optional<Method> method_from_string(const std::string& name) {
    for (Method method :
         {Method::mv, Method::em, Method::calibrated_mv, Method::nb, Method::glm, Method::svm,
          Method::adaboost, Method::round_robin, Method::sampling, Method::direct_crowd}) {
        if (name == to_string(method)) return method;
    }
    return std::nullopt;
}

bool is_supervised(Method method) {
    switch (method) {
        case Method::calibrated_mv:
        case Method::nb:
        case Method::glm:
        case Method::svm:
        case Method::adaboost: return true;
        default: return false;
    }
}

bool needs_crowd(Method method) {
    return is_supervised(method) || method == Method::direct_crowd;
}

bool is_trial_based(Method method) {
    return method == Method::round_robin || method == Method::sampling;
}

EvaluationReport run(const Dataset& dataset, const RunConfig& config) {
    if (config.metrics.empty()) throw UsageError("run: no metrics requested");

    EvaluationReport report;
    report.library_version = kVersion;
    report.alpha = config.alpha;
    report.seed = config.seed;
    report.metrics = config.metrics;
    report.config = config;
    report.primary = evaluate_method(dataset, config);
    if (dataset.gold) {
        report.actual = evaluate_judgments(dataset.matrix, *dataset.gold, "actual",
                                           config.metrics, config.alpha);
        for (Metric metric : config.metrics)
            report.correlations.emplace_back(
                metric, correlate_metric(report.primary, *report.actual, metric));
    }
    return report;
}

EvaluationReport compare(const Dataset& dataset, const RunConfig& config_p,
                         const RunConfig& config_q) {
    if (!dataset.gold) throw UsageError("compare: gold judgments required");
    if (config_p.metrics != config_q.metrics)
        throw UsageError("compare: both configs must request the same metrics");

    EvaluationReport report = run(dataset, config_p);
    report.config_q = config_q;
    report.secondary = evaluate_method(dataset, config_q);
    for (Metric metric : config_q.metrics)
        report.correlations_secondary.emplace_back(
            metric, correlate_metric(*report.secondary, *report.actual, metric));
    report.triangles =
        build_triangles(*report.actual, report.primary, *report.secondary, config_p.metrics);
    return report;
}

QualityReport quality_vs_fidelity(const Dataset& dataset,
                                  const std::vector<RunConfig>& methods) {
    if (!dataset.gold) throw UsageError("quality_vs_fidelity: gold judgments required");
    if (methods.size() < 3) throw UsageError("quality_vs_fidelity: need at least 3 methods");
    for (const auto& config : methods)
        if (is_trial_based(config.method))
            throw UsageError("quality_vs_fidelity: only combine & score methods produce labels");

    QualityReport report;
    report.library_version = kVersion;
    report.seed = methods.front().seed;
    report.configs = methods;
    for (const auto& config : methods) {
        const EvaluationReport single = run(dataset, config);
        QualityRow row;
        row.method_name = single.primary.method_name;
        if (!single.primary.pseudo_gold_quality)
            throw DataError("quality_vs_fidelity: no pseudo-gold quality for " + row.method_name);
        row.quality = *single.primary.pseudo_gold_quality;
        row.fidelity = single.correlations;
        report.rows.push_back(std::move(row));
    }

    // Secondary correlation: pseudo-gold accuracy vs each fidelity value,
    // across methods.
    for (Metric metric : methods.front().metrics) {
        for (const char* measure : kMeasures) {
            std::vector<double> quality;
            std::vector<double> fidelity;
            for (const auto& row : report.rows) {
                const auto q = row.quality[Metric::acc];
                std::optional<double> f;
                for (const auto& [m, corr] : row.fidelity) {
                    if (m != metric) continue;
                    if (std::string_view(measure) == "pearson") f = corr.pearson_r;
                    else if (std::string_view(measure) == "spearman") f = corr.spearman_rho;
                    else if (std::string_view(measure) == "kendall") f = corr.kendall_tau;
                    else f = corr.swap_pct;
                }
                if (!q || !f) continue;
                quality.push_back(*q);
                fidelity.push_back(*f);
            }
            SecondaryCorrelation secondary;
            secondary.metric = metric;
            secondary.measure = measure;
            if (quality.size() >= 2) secondary.r = pearson(quality, fidelity);
            report.secondary.push_back(std::move(secondary));
        }
    }
    return report;
}

std::string to_json(const EvaluationReport& report) {
    ordered_json out;
    out["schema_version"] = kReportSchemaVersion;
    out["library_version"] = report.library_version;
    out["alpha"] = report.alpha;
    out["seed"] = report.seed;
    ordered_json metrics = ordered_json::array();
    for (Metric metric : report.metrics) metrics.push_back(to_string(metric));
    out["metrics"] = std::move(metrics);
    out["config"] = json_config(report.config);
    if (report.config_q) out["config_q"] = json_config(*report.config_q);
    out["method"] = json_method(report.primary);
    if (report.secondary) out["method_q"] = json_method(*report.secondary);
    if (report.actual) {
        out["actual"] = json_method(*report.actual);
        out["correlations"] = json_correlations(report.correlations);
    }
    if (report.secondary) out["correlations_q"] = json_correlations(report.correlations_secondary);
    if (!report.triangles.empty()) {
        ordered_json triangles = ordered_json::array();
        for (const auto& entry : report.triangles) {
            ordered_json e;
            e["metric"] = to_string(entry.metric);
            e["measure"] = entry.measure;
            if (entry.verdict) {
                e["t"] = json_opt(entry.verdict->t_statistic);
                e["p"] = json_opt(entry.verdict->p_value);
                e["df"] = entry.verdict->df;
                e["significant_05"] = entry.verdict->significant_05;
                e["significant_01"] = entry.verdict->significant_01;
                if (!entry.verdict->note.empty()) e["note"] = entry.verdict->note;
            }
            if (!entry.error.empty()) e["error"] = entry.error;
            triangles.push_back(std::move(e));
        }
        out["triangles"] = std::move(triangles);
    }
    return out.dump(2) + "\n";
}

std::string to_csv(const EvaluationReport& report) {
    std::string out = kCsvHeader;
    csv_method(out, report.primary);
    if (report.secondary) csv_method(out, *report.secondary);
    if (report.actual) csv_method(out, *report.actual);
    csv_correlations(out, report.primary.method_name, report.correlations);
    if (report.secondary)
        csv_correlations(out, report.secondary->method_name, report.correlations_secondary);
    for (const auto& entry : report.triangles) {
        std::string t;
        std::string p;
        std::string df;
        if (entry.verdict) {
            t = opt_str(entry.verdict->t_statistic);
            p = opt_str(entry.verdict->p_value);
            df = std::to_string(entry.verdict->df);
        }
        csv_row(out, {"triangle", "p_vs_q", to_string(entry.metric), entry.measure, t,
                      std::string(), std::string(), std::string(), p, df,
                      entry.error.empty() ? (entry.verdict ? entry.verdict->note : std::string())
                                          : entry.error});
    }
    return out;
}

std::string to_json(const QualityReport& report) {
    ordered_json out;
    out["schema_version"] = kReportSchemaVersion;
    out["library_version"] = report.library_version;
    out["seed"] = report.seed;
    ordered_json configs = ordered_json::array();
    for (const auto& config : report.configs) configs.push_back(json_config(config));
    out["configs"] = std::move(configs);
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json r;
        r["method"] = row.method_name;
        r["quality"] = json_scores(row.quality);
        r["fidelity"] = json_correlations(row.fidelity);
        rows.push_back(std::move(r));
    }
    out["methods"] = std::move(rows);
    ordered_json secondary = ordered_json::array();
    for (const auto& entry : report.secondary) {
        ordered_json e;
        e["metric"] = to_string(entry.metric);
        e["measure"] = entry.measure;
        e["pearson_r"] = json_opt(entry.r);
        secondary.push_back(std::move(e));
    }
    out["secondary"] = std::move(secondary);
    return out.dump(2) + "\n";
}

std::string to_csv(const QualityReport& report) {
    std::string out = kCsvHeader;
    for (const auto& row : report.rows) {
        for (Metric metric : kAllMetrics) {
            csv_row(out, {"quality", row.method_name, to_string(metric), "pseudo_gold",
                          opt_str(row.quality[metric]), std::string(), std::string(),
                          std::string(), std::string(), std::string(), std::string()});
        }
        csv_correlations(out, row.method_name, row.fidelity);
    }
    for (const auto& entry : report.secondary) {
        csv_row(out, {"secondary", "all", to_string(entry.metric), entry.measure,
                      opt_str(entry.r), std::string(), std::string(), std::string(),
                      std::string(), std::string(), std::string()});
    }
    return out;
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace blindeval
