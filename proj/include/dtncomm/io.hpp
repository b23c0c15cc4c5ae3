#pragma once

// File formats: JSON reports and coefficient arrays, CSV curves, signals and
// operators, SVG polylines.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dtncomm/cylinder_operators.hpp"
#include "dtncomm/disc_operators.hpp"
#include "dtncomm/fejer_riesz.hpp"
#include "dtncomm/fourier_ring.hpp"
#include "dtncomm/planar_curve.hpp"
#include "dtncomm/planar_oracle.hpp"

namespace dtncomm {

using json = nlohmann::json;

// Round to the given number of significant digits; non-finite values pass through.
double round_sig(double x, int digits = 15);

// Pretty-printed with a trailing newline.
std::string dump_json(const json& j);

// [[k, re, im], ...] sorted by k
json signal_to_json(const BoundarySignal& s);
BoundarySignal signal_from_json(const json& j, int grid_size);

// [[re, im], ...] in ascending degree
json polynomial_to_json(std::span<const cplx> coeffs);
std::vector<cplx> polynomial_from_json(const json& j);

json operator_to_json(const FrequencyOperator& op);
std::string operator_to_csv(const FrequencyOperator& op);
json operator_to_json(const TwoCircleOperator& op);
std::string operator_to_csv(const TwoCircleOperator& op);

// theta,re,im per line with a header row.
std::string curve_to_csv(const PlanarCurve& c);
PlanarCurve curve_from_csv(const std::string& text);
std::string curve_to_svg(const PlanarCurve& c);

// Values from the last column of a numeric CSV (header and '#' lines skipped).
std::vector<double> samples_from_csv(const std::string& text);
std::string samples_to_csv(std::span<const double> values);

std::string sampled_dtn_csv(const SampledDtN& d);
json sampled_dtn_diagnostics(const SampledDtN& d);
// Writes the CSV at path and the diagnostics at path + ".json".
void write_sampled_dtn(const std::filesystem::path& path, const SampledDtN& d);

std::string read_text(const std::filesystem::path& path);
// Write to a temporary sibling and rename over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace dtncomm
