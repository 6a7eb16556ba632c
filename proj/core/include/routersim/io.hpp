// io.hpp: CSV serializations of scans, trajectories, observables and envelopes
//
// Fixed headers, numbers printed as %.12e, '\n' line endings. Output is a pure
// function of the inputs so repeated runs are byte-identical.

#pragma once

#include "routersim/dynamics.hpp"
#include "routersim/observables.hpp"
#include "routersim/spectrum.hpp"

#include <span>
#include <string>

namespace routersim::io {

std::string format_number(double x);

// sweep_value,pole_index,varpi_b,Z_re,Z_im; pole_index is the continued branch id.
std::string spectrum_csv(const SpectrumScan& scan);
// Optional map from the scan's sweep values to the values written (e.g. delay → metres).
std::string spectrum_csv(const SpectrumScan& scan, std::span<const double> written_sweep_values);

// t,re_c1,im_c1,...,re_cN,im_cN,method; all trajectories must share N.
std::string trajectory_csv(std::span<const AmplitudeTrajectory> trajectories);

// t,value,kind,pair
std::string observables_csv(std::span<const ObservableSeries> series);

// sweep_value,min,max,kind
std::string envelope_csv(std::span<const Envelope> envelopes);

}  // namespace routersim::io
