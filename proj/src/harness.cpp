#include "vptz/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "vptz/log.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace vptz {

namespace {

std::string format_tau(double tau_c) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", tau_c);
    return buf;
}

void dump_overlay(const Image& viewport, const AdjustedGt& gt,
                  const TrackerDecision& decision, const fs::path& path) {
    Image overlay = viewport;
    const int h = overlay.height();
    if (gt.box)
        draw_rect_outline(overlay, flip_rect_vertical(*gt.box, h), {0, 255, 0});
    draw_rect_outline(overlay, flip_rect_vertical(decision.predicted_box, h),
                      {255, 0, 0});
    draw_cross(overlay, overlay.width() / 2.0, overlay.height() / 2.0, 6,
               {255, 255, 0});
    save_png(overlay, path.string());
}

json aggregates_to_json(const Aggregates& a) {
    json j{{"mean_or", a.mean_or},
           {"tf_ratio", a.tf_ratio},
           {"processed_frames", a.processed_frames},
           {"valid_frames", a.valid_frames}};
    j["mean_cle"] = a.mean_cle ? json(*a.mean_cle) : json(nullptr);
    j["mean_tce"] = a.mean_tce ? json(*a.mean_tce) : json(nullptr);
    return j;
}

std::string metric_cell(const std::optional<double>& v) {
    if (!v)
        return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", *v);
    return buf;
}

void write_tables(const std::vector<SequenceResult>& results, const fs::path& dir) {
    // Rows: each difficulty tag plus the full run; columns: one per tau_c.
    std::vector<std::string> tags;
    for (const auto& r : results)
        for (const auto& t : r.difficulty_tags)
            if (std::find(tags.begin(), tags.end(), t) == tags.end())
                tags.push_back(t);
    std::sort(tags.begin(), tags.end());
    tags.push_back("all");

    struct MetricDef {
        const char* name;
        std::optional<double> (*get)(const Aggregates&);
    };
    const MetricDef metrics[] = {
        {"CLE", [](const Aggregates& a) { return a.mean_cle; }},
        {"TCE", [](const Aggregates& a) { return a.mean_tce; }},
        {"OR", [](const Aggregates& a) -> std::optional<double> { return a.mean_or; }},
        {"TF", [](const Aggregates& a) -> std::optional<double> { return a.tf_ratio; }},
    };

    std::ofstream txt(dir / "tables.txt");
    std::ofstream csv(dir / "tables.csv");
    if (!txt || !csv)
        throw Error("cannot write aggregate tables under '" + dir.string() + "'");
    csv << "metric,difficulty";
    for (const auto& r : results)
        csv << ",tau_c=" << format_tau(r.tau_c);
    csv << "\n";

    for (const auto& metric : metrics) {
        txt << metric.name << "\n" << std::string(14 + 10 * results.size(), '-') << "\n";
        txt << "    difficulty";
        for (const auto& r : results) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%10s", format_tau(r.tau_c).c_str());
            txt << buf;
        }
        txt << "\n";
        for (const auto& tag : tags) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%14s", tag.c_str());
            txt << buf;
            csv << metric.name << "," << tag;
            for (const auto& r : results) {
                const Aggregates* a = &r.aggregates;
                if (tag != "all") {
                    // Tags apply to the whole sequence, so the per-tag row
                    // repeats the run aggregate unless the tag is absent.
                    const bool has = std::find(r.difficulty_tags.begin(),
                                               r.difficulty_tags.end(),
                                               tag) != r.difficulty_tags.end();
                    if (!has)
                        a = nullptr;
                }
                const std::string cell = a ? metric_cell(metric.get(*a)) : "-";
                std::snprintf(buf, sizeof(buf), "%10s", cell.c_str());
                txt << buf;
                csv << "," << cell;
            }
            txt << "\n";
            csv << "\n";
        }
        txt << "\n";
    }
}

} // namespace

std::vector<std::string> load_difficulty_tags(const std::string& meta_path) {
    std::ifstream in(meta_path);
    if (!in)
        throw Error("cannot open sequence metadata '" + meta_path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("invalid JSON in '" + meta_path + "': " + e.what());
    }
    std::vector<std::string> tags;
    if (j.contains("difficulty_tags"))
        for (const auto& t : j.at("difficulty_tags"))
            tags.push_back(t.get<std::string>());
    return tags;
}

SequenceResult run_sequence(const RunConfig& cfg, double tau_c) {
    const Scenario scenario = Scenario::open(cfg.scenario_path);
    const GtSequence gt = GtSequence::load(cfg.gt_path);
    if (gt.empty())
        throw Error("GT file '" + cfg.gt_path + "' contains no records");

    SequenceResult result;
    result.tau_c = tau_c;
    std::string meta = cfg.meta_path;
    if (meta.empty()) {
        const std::string probe = cfg.gt_path + ".meta.json";
        if (fs::exists(probe))
            meta = probe;
    }
    if (!meta.empty())
        result.difficulty_tags = load_difficulty_tags(meta);

    const CameraIntrinsics intr =
        CameraIntrinsics::from_fov(deg_to_rad(cfg.vfov_deg), cfg.width, cfg.height);
    DelayConfig delays{tau_c, cfg.tau_p_mode, cfg.tau_p_fixed};

    const BasicGtRecord& first = gt.first();
    if (first.frame_index >= scenario.frame_count())
        throw Error("first GT record is past the end of the scenario");
    PtzCamera camera(scenario, first.direction(), intr, cfg.speed_deg_s, delays);
    camera.seek(first.frame_index);

    std::unique_ptr<Tracker> tracker = make_tracker(cfg.tracker);
    bool initialized = false;

    fs::path overlay_dir;
    if (cfg.dump_overlays) {
        overlay_dir = fs::path(cfg.out_dir) / ("overlays_tauc_" + format_tau(tau_c));
        fs::create_directories(overlay_dir);
    }

    while (true) {
        const int frame = camera.current_frame();
        const Image viewport = camera.acquire();
        const TrackerObservation obs{&viewport, camera.pose(), camera.intrinsics(),
                                     camera.clock_s()};

        const BasicGtRecord* rec = gt.find(frame);
        AdjustedGt adjusted;
        if (rec)
            adjusted = adjust_gt(*rec, gt.camera(), camera.pose(), camera.intrinsics());

        if (!initialized) {
            if (!rec || !adjusted.box)
                throw Error("cannot initialize tracker: no usable GT box on frame " +
                            std::to_string(frame));
            tracker->init(obs, *adjusted.box);
            initialized = true;
        }

        std::optional<Direction> next_dir;
        if (const BasicGtRecord* next = gt.find_after(frame))
            next_dir = next->direction();
        tracker->observe_gt(adjusted, next_dir ? &*next_dir : nullptr);

        const auto t0 = std::chrono::steady_clock::now();
        const TrackerDecision decision = tracker->step(obs);
        const double tau_p_measured =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        if (rec) {
            MetricSample s = sample_metrics(adjusted, decision.predicted_center,
                                            decision.predicted_box,
                                            camera.intrinsics(), decision.lost);
            s.frame_index = frame;
            result.samples.push_back(s);
        }
        if (cfg.dump_overlays) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%06d.png", frame);
            dump_overlay(viewport, adjusted, decision, overlay_dir / name);
        }

        if (!camera.execute(decision.command, tau_p_measured))
            break;
        if (!camera.advance_past(frame))
            break;
    }

    if (result.samples.empty())
        throw Error("run produced no metric samples (GT never coincided with "
                    "processed frames)");
    result.aggregates = aggregate(result.samples);
    log::info("tau_c=" + format_tau(tau_c) + " done: " +
              std::to_string(result.aggregates.processed_frames) + " frames");
    return result;
}

std::vector<SequenceResult> run_all(const RunConfig& cfg) {
    const std::size_t n = cfg.tau_c_list.size();
    std::vector<SequenceResult> results(n);
    std::vector<std::exception_ptr> errors(n);
    const int jobs = std::max(1, cfg.jobs);

    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex next_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= n)
                    return;
                i = next++;
            }
            try {
                results[i] = run_sequence(cfg, cfg.tau_c_list[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i])
            std::rethrow_exception(errors[i]);
    return results;
}

void emit_reports(const std::vector<SequenceResult>& results, const RunConfig& cfg) {
    if (results.empty())
        throw Error("no results to report");
    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create output directory '" + cfg.out_dir + "': " +
                    ec.message());

    json summary;
    summary["config"] = {
        {"scenario", cfg.scenario_path},
        {"gt", cfg.gt_path},
        {"tracker", cfg.tracker},
        {"width", cfg.width},
        {"height", cfg.height},
        {"vfov_deg", cfg.vfov_deg},
        {"speed_deg_s", cfg.speed_deg_s},
        {"tau_c_list", cfg.tau_c_list},
        {"tau_p_mode",
         cfg.tau_p_mode == DelayConfig::TauPMode::fixed ? "fixed" : "measured"},
        {"tau_p_fixed", cfg.tau_p_fixed},
        {"seed", cfg.seed},
        {"initial_pose_policy", "first-gt"},
    };
    summary["runs"] = json::array();
    for (const auto& r : results) {
        json run{{"tau_c", r.tau_c}};
        run["aggregates"] = aggregates_to_json(r.aggregates);
        run["per_difficulty"] = json::object();
        for (const auto& tag : r.difficulty_tags)
            run["per_difficulty"][tag] = aggregates_to_json(r.aggregates);
        summary["runs"].push_back(run);

        write_metrics_csv(r.samples,
                          (dir / ("metrics_tauc_" + format_tau(r.tau_c) + ".csv")).string());
    }
    std::ofstream out(dir / "summary.json");
    if (!out)
        throw Error("cannot write summary.json under '" + cfg.out_dir + "'");
    out << summary.dump(2) << "\n";

    write_tables(results, dir);
}

} // namespace vptz
