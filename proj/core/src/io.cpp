#include "mmspectra/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mmspectra::io {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool parse_number(const std::string& field, double& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  if (t == "inf" || t == "+inf" || t == "Inf" || t == "infinity") {
    out = kUnreachable;
    return true;
  }
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (!t.empty() && t[0] != '#') out.push_back(t);
  }
  return out;
}

double json_distance(const json& v, std::size_t i, std::size_t j) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "Infinity") return kUnreachable;
  }
  throw InputError("dist[" + std::to_string(i) + "][" + std::to_string(j) +
                   "] must be a number or \"inf\"");
}

json distance_json(double d) {
  if (std::isinf(d) && d > 0) return "inf";
  return d;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table parse_table(const std::string& text) {
  Table t;
  const auto lines = data_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto fields = split(lines[li], ',');
    std::vector<double> row;
    bool numeric = true;
    for (const auto& f : fields) {
      double x;
      if (!parse_number(f, x)) {
        numeric = false;
        break;
      }
      row.push_back(x);
    }
    if (!numeric) {
      if (li == 0) {
        t.header = fields;
        continue;
      }
      throw InputError("CSV line " + std::to_string(li + 1) + " has a non-numeric field");
    }
    if (!t.rows.empty() && row.size() != t.rows.front().size()) {
      throw InputError("CSV line " + std::to_string(li + 1) + " has " + std::to_string(row.size()) +
                       " fields, expected " + std::to_string(t.rows.front().size()));
    }
    t.rows.push_back(std::move(row));
  }
  if (!t.header.empty() && !t.rows.empty() && t.header.size() != t.rows.front().size()) {
    throw InputError("CSV header and rows have different widths");
  }
  return t;
}

}  // namespace

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string format_csv_double(double x) {
  if (!std::isfinite(x)) return format_double(x);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

MmSpace parse_mmspace_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dist") || !doc["dist"].is_array()) {
    throw InputError("mm-space JSON needs a \"dist\" array");
  }
  const auto& rows = doc["dist"];
  const std::size_t k = rows.size();
  if (k == 0) throw InputError("\"dist\" is empty");
  Matrix d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (!rows[i].is_array() || rows[i].size() != k) {
      throw InputError("\"dist\" row " + std::to_string(i) + " must have " + std::to_string(k) + " entries");
    }
    for (std::size_t j = 0; j < k; ++j) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = json_distance(rows[i][j], i, j);
    }
  }
  Vector mass;
  if (doc.contains("mass")) {
    const auto& m = doc["mass"];
    if (!m.is_array() || m.size() != k) throw InputError("\"mass\" must have one entry per node");
    mass.resize(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
      if (!m[i].is_number()) throw InputError("\"mass\" entries must be numbers");
      mass(static_cast<Eigen::Index>(i)) = m[i].get<double>();
    }
  } else {
    mass = Vector::Constant(static_cast<Eigen::Index>(k), 1.0 / static_cast<double>(k));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels") && !doc["labels"].is_null()) {
    for (const auto& l : doc["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return MmSpace(std::move(d), std::move(mass), std::move(labels));
}

std::string mmspace_to_json(const MmSpace& space) {
  json doc;
  const std::size_t k = space.size();
  json dist = json::array();
  for (std::size_t i = 0; i < k; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k; ++j) row.push_back(distance_json(space.dist(i, j)));
    dist.push_back(std::move(row));
  }
  if (space.has_labels()) doc["labels"] = space.labels();
  doc["dist"] = std::move(dist);
  doc["mass"] = std::vector<double>(space.mass().data(), space.mass().data() + k);
  return doc.dump(2);
}

MmSpace parse_point_cloud_csv(const std::string& text, const MassPolicy& policy) {
  const Table t = parse_table(text);
  if (t.rows.empty()) throw InputError("point cloud CSV has no rows");
  std::ptrdiff_t mass_col = -1;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    std::string h = t.header[c];
    std::transform(h.begin(), h.end(), h.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (h == "mass") mass_col = static_cast<std::ptrdiff_t>(c);
  }
  const std::size_t width = t.rows.front().size();
  const std::size_t dims = width - (mass_col >= 0 ? 1 : 0);
  if (dims == 0) throw InputError("point cloud CSV has no coordinate columns");
  Matrix coords(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(dims));
  std::vector<double> masses;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::size_t out_c = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (static_cast<std::ptrdiff_t>(c) == mass_col) {
        masses.push_back(t.rows[r][c]);
      } else {
        coords(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(out_c++)) = t.rows[r][c];
      }
    }
  }
  if (mass_col >= 0) return from_points(coords, MassPolicy::explicit_masses_of(std::move(masses)));
  return from_points(coords, policy);
}

Matrix parse_point_coordinates_csv(const std::string& text) {
  const Table t = parse_table(text);
  if (t.rows.empty()) throw InputError("point cloud CSV has no rows");
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < t.rows.front().size(); ++c) {
    std::string h = c < t.header.size() ? t.header[c] : "";
    std::transform(h.begin(), h.end(), h.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (h != "mass") keep.push_back(c);
  }
  Matrix coords(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < keep.size(); ++c) {
      coords(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t.rows[r][keep[c]];
    }
  }
  return coords;
}

EdgeList parse_edge_list(const std::string& text) {
  EdgeList out;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::istringstream ls(line);
    long long i = -1, j = -1;
    std::string len_text, extra;
    if (!(ls >> i >> j >> len_text) || (ls >> extra)) {
      throw InputError("edge list line " + std::to_string(lineno) + " is not \"i j length\"");
    }
    double len;
    if (i < 0 || j < 0 || !parse_number(len_text, len)) {
      throw InputError("edge list line " + std::to_string(lineno) + " has an invalid index or length");
    }
    out.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), len});
    out.n_nodes = std::max(out.n_nodes, static_cast<std::size_t>(std::max(i, j)) + 1);
  }
  return out;
}

Format detect_format(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (ext == ".json") return Format::kJson;
  if (ext == ".csv") return Format::kPointCloud;
  return Format::kEdgeList;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

MmSpace load_space(const std::filesystem::path& path, const MassPolicy& policy) {
  const std::string text = read_file(path);
  try {
    switch (detect_format(path)) {
      case Format::kJson:
        return parse_mmspace_json(text);
      case Format::kPointCloud:
        return parse_point_cloud_csv(text, policy);
      case Format::kEdgeList: {
        const EdgeList el = parse_edge_list(text);
        return from_graph(el.edges, el.n_nodes, policy);
      }
    }
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  throw InputError("unsupported input " + path.string());
}

std::vector<std::filesystem::path> list_space_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw InputError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".json" || ext == ".csv" || ext == ".edges" || ext == ".txt") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::size_t, int> parse_labels_csv(const std::string& text) {
  const Table t = parse_table(text);
  std::map<std::size_t, int> out;
  for (const auto& row : t.rows) {
    if (row.size() != 2) throw InputError("labels CSV rows must be \"node_index,label\"");
    if (row[0] < 0 || row[0] != std::floor(row[0])) throw InputError("node index must be a non-negative integer");
    if (row[1] != 1.0 && row[1] != -1.0) throw InputError("labels must be +1 or -1");
    out[static_cast<std::size_t>(row[0])] = static_cast<int>(row[1]);
  }
  return out;
}

std::string curve_to_json(const SpectralCurve& curve) {
  json doc;
  doc["breakpoints"] = curve.breakpoints;
  json spectra = json::array();
  for (const auto& s : curve.spectra) {
    spectra.push_back(std::vector<double>(s.values.data(), s.values.data() + s.values.size()));
  }
  doc["spectra"] = std::move(spectra);
  return doc.dump();
}

SpectralCurve parse_curve_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.contains("breakpoints") || !doc.contains("spectra")) {
    throw InputError("curve JSON needs \"breakpoints\" and \"spectra\"");
  }
  SpectralCurve c;
  c.breakpoints = doc["breakpoints"].get<std::vector<double>>();
  for (const auto& row : doc["spectra"]) {
    const auto v = row.get<std::vector<double>>();
    Spectrum s;
    s.values = Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
    c.spectra.push_back(std::move(s));
  }
  if (c.spectra.size() != c.breakpoints.size() + 1) {
    throw InputError("curve JSON must have one more spectrum than breakpoints");
  }
  return c;
}

std::string curve_to_csv(const SpectralCurve& curve) {
  std::ostringstream os;
  os << "interval,rho_lower,rho_upper,index,value\n";
  for (std::size_t m = 0; m < curve.spectra.size(); ++m) {
    const double lo = m == 0 ? 0.0 : curve.breakpoints[m - 1];
    const double hi = m < curve.breakpoints.size() ? curve.breakpoints[m] : kUnreachable;
    const Vector& v = curve.spectra[m].values;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      os << m << ',' << format_double(lo) << ',' << format_double(hi) << ',' << (k + 1) << ','
         << format_csv_double(v(k)) << '\n';
    }
  }
  return os.str();
}

std::string spectrum_to_json(const Spectrum& spectrum, double rho) {
  json doc;
  doc["rho"] = rho;
  doc["values"] = std::vector<double>(spectrum.values.data(), spectrum.values.data() + spectrum.values.size());
  if (spectrum.vectors) {
    json cols = json::array();
    for (Eigen::Index c = 0; c < spectrum.vectors->cols(); ++c) {
      const Vector col = spectrum.vectors->col(c);
      cols.push_back(std::vector<double>(col.data(), col.data() + col.size()));
    }
    doc["vectors"] = std::move(cols);
  }
  return doc.dump(2);
}

std::string spectrum_to_csv_row(const Spectrum& spectrum) {
  std::ostringstream os;
  for (Eigen::Index k = 0; k < spectrum.values.size(); ++k) {
    if (k) os << ',';
    os << format_csv_double(spectrum.values(k));
  }
  os << '\n';
  return os.str();
}

std::string matrix_to_csv(const Matrix& m, const std::vector<std::string>& header) {
  std::ostringstream os;
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  if (!header.empty()) os << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? "," : "") << format_csv_double(m(r, c));
    os << '\n';
  }
  return os.str();
}

}  // namespace mmspectra::io
