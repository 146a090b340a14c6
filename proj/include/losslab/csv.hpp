#ifndef LOSSLAB_CSV_HPP
#define LOSSLAB_CSV_HPP

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "losslab/coupling.hpp"
#include "losslab/metrics.hpp"
#include "losslab/replay.hpp"
#include "losslab/sim.hpp"

namespace losslab {

inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline void write_state_distribution_csv(std::ostream& os, const StateDistribution& d) {
    const int K = d.space->params().num_classes();
    os << "state_id";
    for (int k = 0; k < K; ++k) os << ",x1_" << (k + 1);
    for (int k = 0; k < K; ++k) os << ",x2_" << (k + 1);
    os << ",probability\n";
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        const State& x = d.space->state(static_cast<int>(i));
        os << i;
        for (int k = 0; k < K; ++k) os << ',' << x.x1[k];
        for (int k = 0; k < K; ++k) os << ',' << x.x2[k];
        os << ',' << csv_num(d.p[i]) << '\n';
    }
}

inline void write_metrics_csv(std::ostream& os, const StationaryMetrics& m) {
    os << "quantity,class,value\n";
    const std::size_t K = m.mean_per_class.size();
    for (std::size_t k = 0; k < K; ++k)
        os << "mean_customers," << (k + 1) << ',' << csv_num(m.mean_per_class[k]) << '\n';
    os << "mean_customers,total," << csv_num(m.mean_total) << '\n';
    for (std::size_t k = 0; k < K; ++k)
        os << "throughput," << (k + 1) << ',' << csv_num(m.throughput_per_class[k]) << '\n';
    os << "throughput,total," << csv_num(m.throughput_total) << '\n';
    for (std::size_t k = 0; k < K; ++k)
        os << "blocking," << (k + 1) << ',' << csv_num(m.blocking_per_class[k]) << '\n';
    os << "blocking,total," << csv_num(m.blocking_total) << '\n';
}

inline void write_path_csv(std::ostream& os, const EventPath& path, int num_classes) {
    os << "time";
    for (int k = 0; k < num_classes; ++k) os << ",x1_" << (k + 1);
    for (int k = 0; k < num_classes; ++k) os << ",x2_" << (k + 1);
    os << '\n';
    for (const PathPoint& pt : path.points) {
        os << csv_num(pt.time);
        for (int k = 0; k < num_classes; ++k) os << ',' << pt.state.x1[k];
        for (int k = 0; k < num_classes; ++k) os << ',' << pt.state.x2[k];
        os << '\n';
    }
}

inline void write_training_path_csv(std::ostream& os, const TrainingPath& path, int num_classes) {
    os << "time";
    for (int k = 0; k < num_classes; ++k) os << ",x1_" << (k + 1);
    os << ",x_shared";
    for (int k = 0; k < num_classes; ++k) os << ",y1_" << (k + 1);
    os << ",y_shared,violation\n";
    for (const TrainingStep& s : path.steps) {
        os << csv_num(s.time);
        for (int k = 0; k < num_classes; ++k) os << ',' << s.x.layer1[k];
        os << ',' << s.x.shared;
        for (int k = 0; k < num_classes; ++k) os << ',' << s.y.layer1[k];
        os << ',' << s.y.shared << ",0\n";
    }
}

inline void write_perclass_path_csv(std::ostream& os, const PerClassPath& path, int num_classes) {
    os << "time";
    for (int k = 0; k < num_classes; ++k) os << ",x1_" << (k + 1);
    for (int k = 0; k < num_classes; ++k) os << ",x2_" << (k + 1);
    os << ",y,violation\n";
    for (const PerClassStep& s : path.steps) {
        os << csv_num(s.time);
        for (int k = 0; k < num_classes; ++k) os << ',' << s.x.x1[k];
        for (int k = 0; k < num_classes; ++k) os << ',' << s.x.x2[k];
        os << ',' << s.y << ",0\n";
    }
}

/// Parses a schedule CSV with columns (time, class, duration); a header row
/// is optional. Classes are 1-based in the file.
inline ReplaySchedule read_schedule_csv(std::istream& is) {
    ReplaySchedule sched;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string t, c, d;
        if (!std::getline(row, t, ',') || !std::getline(row, c, ',') || !std::getline(row, d))
            throw ScheduleError("schedule rows need time,class,duration");
        char* end = nullptr;
        const double time = std::strtod(t.c_str(), &end);
        if (end == t.c_str()) {
            if (sched.arrivals.empty()) continue; // header row
            throw ScheduleError("cannot parse schedule time '" + t + "'");
        }
        const long cls = std::strtol(c.c_str(), nullptr, 10);
        const double dur = std::strtod(d.c_str(), nullptr);
        sched.arrivals.push_back({time, static_cast<int>(cls) - 1, dur});
    }
    return sched;
}

} // namespace losslab

#endif
