#ifndef ISOTODA_JSON_IO_HPP
#define ISOTODA_JSON_IO_HPP

#include <string>

#include "isotoda/matrix.hpp"
#include "isotoda/spectrum.hpp"

namespace isotoda::json_io {

// Spectrum JSON: {"lambda": [number, ...]}, strictly increasing, n >= 3.
spectrum::Spectrum parse_spectrum(const std::string& text);

// Matrix JSON: {"a": [number, ...], "b": [[re, im], ...]} with equal
// lengths n >= 3.
matrix::PeriodicJacobi parse_matrix(const std::string& text);

std::string spectrum_to_json(const spectrum::Spectrum& s);
std::string matrix_to_json(const matrix::PeriodicJacobi& L);

// Floating outputs are printed with 12 significant digits so golden files
// stay stable across platforms.
double round12(double x);
std::string fmt12(double x);

} // namespace isotoda::json_io

#endif
