#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mmspectra/mmspace.hpp"
#include "mmspectra/spectrum.hpp"

namespace mmspectra::io {

// {"labels": [...], "dist": [[...]], "mass": [...]}; unreachable distances
// are the string "inf". "labels" is optional; without "mass" the space gets
// uniform probability mass.
MmSpace parse_mmspace_json(const std::string& text);
std::string mmspace_to_json(const MmSpace& space);

// One row per point, columns x1..xD, optional header. A header column named
// "mass" supplies explicit masses, otherwise `policy` applies.
MmSpace parse_point_cloud_csv(const std::string& text, const MassPolicy& policy);
// Coordinates of a point-cloud CSV (mass column dropped).
Matrix parse_point_coordinates_csv(const std::string& text);

struct EdgeList {
  std::vector<GraphEdge> edges;
  std::size_t n_nodes = 0;  // max index + 1
};

// Lines "i j length" with 0-based indices; '#' starts a comment.
EdgeList parse_edge_list(const std::string& text);

enum class Format { kJson, kPointCloud, kEdgeList };

// By extension: .json, .csv, anything else is an edge list.
Format detect_format(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Loads any supported format. `policy` applies to point clouds without a mass
// column and to edge lists.
MmSpace load_space(const std::filesystem::path& path,
                   const MassPolicy& policy = MassPolicy::uniform());

// Regular files under `dir` in a supported format, sorted by name.
std::vector<std::filesystem::path> list_space_files(const std::filesystem::path& dir);

// "node_index,label" rows, optional header.
std::map<std::size_t, int> parse_labels_csv(const std::string& text);

// {"breakpoints": [...], "spectra": [[...], ...]}.
std::string curve_to_json(const SpectralCurve& curve);
SpectralCurve parse_curve_json(const std::string& text);
// interval,rho_lower,rho_upper,index,value (index 1-based).
std::string curve_to_csv(const SpectralCurve& curve);

std::string spectrum_to_json(const Spectrum& spectrum, double rho);
// Comma-separated ascending eigenvalues on one line.
std::string spectrum_to_csv_row(const Spectrum& spectrum);

std::string matrix_to_csv(const Matrix& m, const std::vector<std::string>& header = {});

// Shortest round-trip decimal representation.
std::string format_double(double x);
// 15 significant digits, for CSV tables meant to be read by people.
std::string format_csv_double(double x);

}  // namespace mmspectra::io
