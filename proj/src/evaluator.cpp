#include "vptz/evaluator.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "vptz/error.hpp"

namespace vptz {

double overlap_ratio(const Rect& a, const Rect& b) {
    const double inter = intersect(a, b).area();
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

MetricSample sample_metrics(const AdjustedGt& gt, const ImagePoint& predicted_center,
                            const Rect& predicted_box, const CameraIntrinsics& intr,
                            bool lost) {
    MetricSample s;
    if (!gt.in_view()) {
        s.cle = kInvalidMetric;
        s.overlap = 0.0;
        s.tce = kInvalidMetric;
        s.tf = 1;
        return s;
    }
    s.tf = 0;
    s.cle = gt.center->distance_to(predicted_center);
    s.tce = gt.center->distance_to({intr.width / 2.0, intr.height / 2.0});
    if (lost || !gt.box) {
        s.overlap = 0.0;
    } else {
        const Rect image_bounds{0.0, 0.0, double(intr.width), double(intr.height)};
        s.overlap = overlap_ratio(intersect(*gt.box, image_bounds), predicted_box);
    }
    return s;
}

Aggregates aggregate(const std::vector<MetricSample>& samples) {
    if (samples.empty())
        throw Error("cannot aggregate zero metric samples");
    Aggregates a;
    a.processed_frames = int(samples.size());
    double sum_cle = 0.0, sum_or = 0.0, sum_tce = 0.0;
    int tf_sum = 0;
    for (const auto& s : samples) {
        sum_or += s.overlap;
        tf_sum += s.tf;
        if (s.valid()) {
            ++a.valid_frames;
            sum_cle += s.cle;
            sum_tce += s.tce;
        }
    }
    a.mean_or = sum_or / a.processed_frames;
    a.tf_ratio = double(tf_sum) / a.processed_frames;
    if (a.valid_frames > 0) {
        a.mean_cle = sum_cle / a.valid_frames;
        a.mean_tce = sum_tce / a.valid_frames;
    }
    return a;
}

void write_metrics_csv(const std::vector<MetricSample>& samples, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write metrics CSV '" + path + "'");
    out << "frame,cle,or,tce,tf\n";
    char buf[160];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g,%.9g,%d\n", s.frame_index,
                      s.cle, s.overlap, s.tce, s.tf);
        out << buf;
    }
    if (!out)
        throw Error("failed writing metrics CSV '" + path + "'");
}

std::vector<MetricSample> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open metrics CSV '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "frame,cle,or,tce,tf")
        throw ParseError(path, 1, "missing metrics CSV header");
    std::vector<MetricSample> samples;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        MetricSample s;
        char comma;
        std::istringstream ls(line);
        if (!(ls >> s.frame_index >> comma >> s.cle >> comma >> s.overlap >> comma >>
              s.tce >> comma >> s.tf))
            throw ParseError(path, line_no, "malformed metrics row '" + line + "'");
        samples.push_back(s);
    }
    return samples;
}

} // namespace vptz
