// io.cpp: CSV writers

#include "routersim/io.hpp"

#include "routersim/errors.hpp"

#include <cstdio>

namespace routersim::io {

std::string format_number(double x) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.12e", x);
    return {buf, static_cast<std::size_t>(len)};
}

std::string spectrum_csv(const SpectrumScan& scan) { return spectrum_csv(scan, scan.sweep_values); }

std::string spectrum_csv(const SpectrumScan& scan, std::span<const double> written) {
    if (written.size() != scan.sweep_values.size()) {
        throw ValidationError("sweep", "written sweep values must match the scan length");
    }
    std::string out = "sweep_value,pole_index,varpi_b,Z_re,Z_im\n";
    for (std::size_t i = 0; i < scan.states.size(); ++i) {
        for (std::size_t k = 0; k < scan.states[i].size(); ++k) {
            const BoundState& bs = scan.states[i][k];
            out += format_number(written[i]);
            out += ',';
            out += std::to_string(scan.branches[i][k]);
            out += ',';
            out += format_number(bs.pole);
            out += ',';
            out += format_number(bs.weight.real());
            out += ',';
            out += format_number(bs.weight.imag());
            out += '\n';
        }
    }
    return out;
}

std::string trajectory_csv(std::span<const AmplitudeTrajectory> trajectories) {
    if (trajectories.empty()) {
        return "t,method\n";
    }
    const std::size_t n = trajectories.front().emitters();
    std::string out = "t";
    for (std::size_t j = 1; j <= n; ++j) {
        out += ",re_c" + std::to_string(j) + ",im_c" + std::to_string(j);
    }
    out += ",method\n";
    for (const auto& traj : trajectories) {
        if (traj.emitters() != n) {
            throw ValidationError("trajectory", "all trajectories in one file must have the same emitter count");
        }
        const std::string method(to_string(traj.method));
        for (std::size_t i = 0; i < traj.steps(); ++i) {
            out += format_number(traj.times[i]);
            for (std::size_t j = 0; j < n; ++j) {
                const auto c = traj.amplitudes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                out += ',';
                out += format_number(c.real());
                out += ',';
                out += format_number(c.imag());
            }
            out += ',';
            out += method;
            out += '\n';
        }
    }
    return out;
}

std::string observables_csv(std::span<const ObservableSeries> series) {
    std::string out = "t,value,kind,pair\n";
    for (const auto& s : series) {
        const std::string kind = s.kind_label();
        const std::string pair = s.pair_label();
        for (std::size_t i = 0; i < s.times.size(); ++i) {
            out += format_number(s.times[i]);
            out += ',';
            out += format_number(s.values[i]);
            out += ',';
            out += kind;
            out += ',';
            out += pair;
            out += '\n';
        }
    }
    return out;
}

std::string envelope_csv(std::span<const Envelope> envelopes) {
    std::string out = "sweep_value,min,max,kind\n";
    for (const auto& env : envelopes) {
        const std::string kind = env.label();
        for (const auto& p : env.points) {
            out += format_number(p.sweep_value);
            out += ',';
            out += format_number(p.min);
            out += ',';
            out += format_number(p.max);
            out += ',';
            out += kind;
            out += '\n';
        }
    }
    return out;
}

}  // namespace routersim::io
