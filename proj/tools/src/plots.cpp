// plots.cpp: gnuplot scripts for the figure presets

#include "routersim/scenario.hpp"

#include <cstdio>
#include <sstream>

namespace routersim::scenario {

namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// Column `col` of rows whose kind (column 3) and pair (column 4) match.
std::string series_expr(const std::string& kind, const std::string& pair, int col = 2) {
    return "(strcol(3) eq " + quoted(kind) + " && strcol(4) eq " + quoted(pair) + " ? $" + std::to_string(col) +
           " : NaN)";
}

std::string envelope_expr(const std::string& kind, int col) {
    return "(strcol(4) eq " + quoted(kind) + " ? $" + std::to_string(col) + " : NaN)";
}

std::vector<std::string> matching(const Artifacts& files, const std::string& prefix) {
    std::vector<std::string> out;
    for (const auto& [name, body] : files) {
        if (name.rfind(prefix, 0) == 0 && name.size() > 4 && name.substr(name.size() - 4) == ".csv") {
            out.push_back(name);
        }
    }
    return out;
}

std::string case_title(const std::string& file) {
    const auto at = file.find("w0_");
    return at == std::string::npos ? "" : "w0 = " + file.substr(at + 3, file.size() - at - 7);
}

void header(std::ostringstream& gp, const std::string& id, int panels, double splitting) {
    gp << "# " << id << ": run with `gnuplot " << id << ".gp` inside the output directory\n";
    gp << "set datafile separator ','\n";
    gp << "set terminal pngcairo size " << 520 * panels << ",420\n";
    gp << "set output '" << id << ".png'\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", splitting);
    gp << "DELTA = " << buf << "\n";
    gp << "set key top right\n";
    gp << "set multiplot layout 1," << panels << "\n";
}

void spectrum_panel(std::ostringstream& gp, bool spacing_axis) {
    gp << "set title 'bound-state poles'\n";
    gp << "set xlabel '" << (spacing_axis ? "spacing (nm)" : "w0 / Delta") << "'\n";
    gp << "set ylabel 'varpi_b / Delta'\n";
    gp << "plot 'spectrum.csv' every ::1 using " << (spacing_axis ? "($1*1e9)" : "($1/DELTA)")
       << ":3 with points pt 7 ps 0.4 notitle\n";
}

void trajectory_panel(std::ostringstream& gp, const Artifacts& files, const std::string& title,
                      const std::vector<std::pair<std::string, std::string>>& curves) {
    gp << "set title '" << title << "'\n";
    gp << "set xlabel 't Delta'\n";
    gp << "set ylabel ''\n";
    std::string sep = "plot ";
    for (const std::string& file : matching(files, "observables")) {
        for (const auto& [kind, pair] : curves) {
            const bool steady = kind.find(":steady") != std::string::npos;
            gp << sep << quoted(file) << " every ::1 using 1:" << series_expr(kind, pair) << " with lines"
               << (steady ? " dt 2" : "") << " title '" << case_title(file) << " " << kind << " " << pair << "'";
            sep = ", \\\n     ";
        }
    }
    gp << "\n";
}

void envelope_panel(std::ostringstream& gp, const std::string& title, const std::vector<std::string>& kinds) {
    gp << "set title '" << title << "'\n";
    gp << "set xlabel 'spacing (nm)'\n";
    gp << "set ylabel ''\n";
    std::string sep = "plot ";
    for (const std::string& kind : kinds) {
        gp << sep << "'envelope.csv' every ::1 using ($1*1e9):" << envelope_expr(kind, 2) << ":"
           << envelope_expr(kind, 3) << " with filledcurves fs transparent solid 0.3 title '" << kind << "'";
        sep = ", \\\n     ";
        for (int col : {2, 3}) {
            gp << sep << "'envelope.csv' every ::1 using ($1*1e9):" << envelope_expr(kind + ":nonmarkovian", col)
               << " with points pt 7 notitle";
        }
    }
    gp << "\n";
}

}  // namespace

std::string plot_script(const Scenario& figure, const Artifacts& files) {
    std::ostringstream gp;
    const std::string& id = figure.figure;
    const double splitting = figure.model.si ? figure.model.params.orbital_splitting : 1.0;
    if (id == "fig2") {
        header(gp, id, 2, splitting);
        spectrum_panel(gp, false);
        trajectory_panel(gp, files, "concurrence",
                         {{"concurrence_product:nonmarkovian", "1-2"},
                          {"concurrence_product:steady", "1-2"},
                          {"concurrence_product:markov", "1-2"}});
    } else if (id == "fig3") {
        header(gp, id, 1, splitting);
        trajectory_panel(gp, files, "state-transfer fidelity",
                         {{"fidelity:nonmarkovian", "1-2"}, {"fidelity:steady", "1-2"}, {"fidelity:markov", "1-2"}});
    } else if (id == "fig4") {
        header(gp, id, 3, splitting);
        spectrum_panel(gp, true);
        envelope_panel(gp, "long-time concurrence", {"concurrence_product_1-2"});
        envelope_panel(gp, "long-time fidelity", {"fidelity_1-2"});
    } else if (id == "fig5") {
        header(gp, id, 3, splitting);
        spectrum_panel(gp, false);
        trajectory_panel(gp, files, "concurrence",
                         {{"concurrence_product:nonmarkovian", "1-2"},
                          {"concurrence_product:nonmarkovian", "1-3"},
                          {"concurrence_product:steady", "1-2"},
                          {"concurrence_product:steady", "1-3"}});
        trajectory_panel(gp, files, "state-transfer fidelity",
                         {{"fidelity:nonmarkovian", "1-2"},
                          {"fidelity:nonmarkovian", "1-3"},
                          {"fidelity:steady", "1-2"},
                          {"fidelity:steady", "1-3"}});
    } else {
        header(gp, id, 3, splitting);
        spectrum_panel(gp, true);
        envelope_panel(gp, "long-time concurrence", {"concurrence_product_1-2", "concurrence_product_1-3"});
        envelope_panel(gp, "long-time fidelity", {"fidelity_1-2", "fidelity_1-3"});
    }
    gp << "unset multiplot\n";
    return gp.str();
}

}  // namespace routersim::scenario
