#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <omp.h>

#include "CLI11.hpp"
#include "semline/io.hpp"

namespace {

using namespace semline;

std::string basename_no_ext(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::vector<double> parse_tau_grid(const std::string& spec) {
    // "start:stop:step"
    double start, stop, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0.0)
        throw std::invalid_argument("--tau-grid expects start:stop:step");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double tau = start + i * step;
        if (tau > stop + 1e-12) break;
        grid.push_back(tau);
    }
    if (grid.size() < 2) throw GridTooSmall("--tau-grid yields fewer than 2 points");
    return grid;
}

struct DetectArgs {
    DetectionConfig config;
    std::string scorer = "file";
    std::vector<std::string> scores;
    std::vector<std::string> images;
    std::string output;
};

int run_detect(const DetectArgs& args) {
    std::vector<std::string> inputs =
        args.scorer == "file" ? args.scores : args.images;
    if (inputs.empty()) {
        std::cerr << "detect: no inputs for scorer '" << args.scorer << "'\n";
        return 1;
    }

    const int n = int(inputs.size());
    std::vector<AnnotationRecord> records(static_cast<size_t>(n));
    std::vector<std::string> errors(static_cast<size_t>(n));
    std::vector<uint8_t> io_failed(size_t(n), 0);

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            Detection det;
            if (args.scorer == "file") {
                const ScoreFile sf = load_scores(inputs[size_t(i)]);
                const HoughGrid grid =
                    generate(sf.frame, args.config.rho_bins, args.config.phi_bins);
                const ScoredCandidates scores = scores_for_grid(sf, grid);
                const FileHarmonyScorer harmony(sf.pairs);
                const std::string id =
                    sf.image_id.empty() ? basename_no_ext(inputs[size_t(i)]) : sf.image_id;
                det = detect(id, grid, scores, harmony, args.config);
            } else {
                const ImageU8 img = read_pnm(inputs[size_t(i)]);
                det = detect_image(basename_no_ext(inputs[size_t(i)]), img, args.config);
            }
            records[size_t(i)] = record_from_detection(det);
        } catch (const IoError& e) {
            errors[size_t(i)] = e.what();
            io_failed[size_t(i)] = 1;
        } catch (const std::exception& e) {
            errors[size_t(i)] = e.what();
        }
    }

    for (int i = 0; i < n; ++i)
        if (!errors[size_t(i)].empty()) {
            std::cerr << "detect: " << inputs[size_t(i)] << ": " << errors[size_t(i)] << "\n";
            return io_failed[size_t(i)] ? 2 : 1;
        }
    save_annotations(args.output, records);
    return 0;
}

int run_evaluate(const std::string& pred_path, const std::string& gt_path,
                 const std::string& metric_name, const std::string& tau_spec,
                 double metric_scale, const std::string& report_path,
                 const std::string& curves_path) {
    const auto preds = load_annotations(pred_path);
    const auto gts = load_annotations(gt_path);
    const MatchMetric metric = metric_name == "ea" ? MatchMetric::ea : MatchMetric::miou;

    std::map<std::string, const AnnotationRecord*> by_id;
    for (const auto& p : preds) by_id[p.image_id] = &p;

    std::vector<EvalImage> images;
    for (const auto& gt : gts) {
        EvalImage ei;
        ei.image_id = gt.image_id;
        ei.frame = gt.frame;
        ei.ground_truth = gt.lines;
        auto it = by_id.find(gt.image_id);
        if (it != by_id.end()) {
            if (!(it->second->frame == gt.frame))
                throw FrameMismatch("image " + gt.image_id +
                                    ": prediction frame differs from ground truth");
            ei.detected = it->second->lines;
        }
        images.push_back(std::move(ei));
    }

    const EvalReport report = evaluate(images, metric, parse_tau_grid(tau_spec), metric_scale);
    const std::string text = format_report(report, metric);
    if (report_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(report_path);
        if (!out) throw IoError("cannot write " + report_path);
        out << text;
    }
    if (!curves_path.empty()) {
        std::ofstream out(curves_path);
        if (!out) throw IoError("cannot write " + curves_path);
        out << format_curves_csv(report);
    }
    return 0;
}

int run_label_harmony(const std::string& gt_path, double d_max, int d_steps,
                      const std::string& out_path) {
    const auto gts = load_annotations(gt_path);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    out << "image_id,i,j,d_i,d_j,label\n";
    char buf[160];
    for (const auto& rec : gts) {
        for (size_t i = 0; i < rec.lines.size(); ++i)
            for (size_t j = i + 1; j < rec.lines.size(); ++j)
                for (int a = 0; a < d_steps; ++a)
                    for (int b = 0; b < d_steps; ++b) {
                        const double di = d_steps == 1 ? 0.0 : d_max * a / (d_steps - 1);
                        const double dj = d_steps == 1 ? 0.0 : d_max * b / (d_steps - 1);
                        std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.6f,%.6f,%.6f\n",
                                      rec.image_id.c_str(), i, j, di, dj,
                                      harmony_label(di, dj));
                        out << buf;
                    }
    }
    return 0;
}

int run_render(const std::string& image_path, const std::string& pred_path,
               std::string image_id, const std::string& out_path) {
    const ImageU8 img = read_pnm(image_path);
    const auto preds = load_annotations(pred_path);
    if (image_id.empty()) image_id = basename_no_ext(image_path);

    const AnnotationRecord* rec = nullptr;
    for (const auto& p : preds)
        if (p.image_id == image_id) rec = &p;
    if (!rec) {
        std::cerr << "render: no record for image id '" << image_id << "'\n";
        return 1;
    }
    ImageU8 overlay;
    render_overlay(img, rec->lines, overlay);
    write_ppm(out_path, overlay);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("SEMLINE_THREADS")) {
        const int t = std::atoi(threads);
        if (t > 0) omp_set_num_threads(t);
    }

    CLI::App app{"semantic line detection via maximal weight clique selection"};
    app.require_subcommand(1);

    DetectArgs det;
    auto* cmd_detect = app.add_subcommand("detect", "run the detection pipeline");
    cmd_detect->add_option("--scores", det.scores, "score files (scorer=file)");
    cmd_detect->add_option("--images", det.images, "PGM/PPM images (scorer=heuristic)");
    cmd_detect->add_option("--scorer", det.scorer, "score provider")
        ->check(CLI::IsMember({"file", "heuristic"}));
    cmd_detect->add_option("--rho-bins", det.config.rho_bins, "rho quantization bins");
    cmd_detect->add_option("--phi-bins", det.config.phi_bins, "phi quantization bins");
    cmd_detect->add_option("--k,--max-k", det.config.k, "selected node count");
    cmd_detect->add_option("--removal-radius", det.config.removal_radius, "suppression radius");
    cmd_detect->add_option("--kappa", det.config.kappa, "minimum clique edge weight");
    cmd_detect->add_option("--stop-prob", det.config.stop_prob, "selection stopping threshold");
    cmd_detect->add_flag("--no-harmony", det.config.no_harmony, "skip graph and clique");
    cmd_detect->add_flag("--no-offset", det.config.no_offset, "skip offset refinement");
    cmd_detect->add_option("-o,--output", det.output, "predictions file")->required();

    std::string pred_path, gt_path, metric_name = "miou", report_path, curves_path;
    std::string tau_spec = "0.02:0.98:0.02";
    double metric_scale = 1.0;
    auto* cmd_eval = app.add_subcommand("evaluate", "score predictions against ground truth");
    cmd_eval->add_option("--pred", pred_path, "predictions file")->required();
    cmd_eval->add_option("--gt", gt_path, "ground-truth annotations")->required();
    cmd_eval->add_option("--metric", metric_name, "matching metric")
        ->check(CLI::IsMember({"miou", "ea"}));
    cmd_eval->add_option("--tau-grid", tau_spec, "threshold grid start:stop:step");
    cmd_eval->add_option("--metric-scale", metric_scale, "HIoU raster downscale factor");
    cmd_eval->add_option("-o,--output", report_path, "report file (default stdout)");
    cmd_eval->add_option("--curves-csv", curves_path, "dump (tau,P,R,F) rows");

    int gc_width = 0, gc_height = 0, gc_rho = 30, gc_phi = 30;
    std::string gc_out;
    auto* cmd_gen = app.add_subcommand("gen-candidates", "dump the candidate grid");
    cmd_gen->add_option("--width", gc_width, "frame width")->required();
    cmd_gen->add_option("--height", gc_height, "frame height")->required();
    cmd_gen->add_option("--rho-bins", gc_rho, "rho quantization bins");
    cmd_gen->add_option("--phi-bins", gc_phi, "phi quantization bins");
    cmd_gen->add_option("-o,--output", gc_out, "output CSV")->required();

    std::string lh_gt, lh_out;
    double lh_dmax = 2.0;
    int lh_steps = 5;
    auto* cmd_label = app.add_subcommand("label-harmony", "soft labels for disturbed GT pairs");
    cmd_label->add_option("--gt", lh_gt, "ground-truth annotations")->required();
    cmd_label->add_option("--d-max", lh_dmax, "maximum disturbance");
    cmd_label->add_option("--d-steps", lh_steps, "sweep steps per axis");
    cmd_label->add_option("-o,--output", lh_out, "output CSV")->required();

    std::string rn_image, rn_pred, rn_id, rn_out;
    auto* cmd_render = app.add_subcommand("render", "draw predictions over an image");
    cmd_render->add_option("--image", rn_image, "PGM/PPM image")->required();
    cmd_render->add_option("--pred", rn_pred, "predictions file")->required();
    cmd_render->add_option("--image-id", rn_id, "record id (default: image basename)");
    cmd_render->add_option("-o,--output", rn_out, "output PPM")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_detect->parsed()) return run_detect(det);
        if (cmd_eval->parsed())
            return run_evaluate(pred_path, gt_path, metric_name, tau_spec, metric_scale,
                                report_path, curves_path);
        if (cmd_gen->parsed()) {
            dump_candidates_csv(gc_out,
                                semline::generate({gc_width, gc_height}, gc_rho, gc_phi));
            return 0;
        }
        if (cmd_label->parsed()) return run_label_harmony(lh_gt, lh_dmax, lh_steps, lh_out);
        if (cmd_render->parsed()) return run_render(rn_image, rn_pred, rn_id, rn_out);
    } catch (const semline::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
