#include <kdvist/io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kdvist {

std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

std::string digest_string(const std::string& s) { return hex64(fnv1a64(s.data(), s.size())); }

std::string format_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

json to_json(const Potential& q) {
  json j;
  j["grid_step"] = q.grid_step;
  j["b_max"] = q.b_max;
  j["samples"] = std::vector<Real>(q.samples.begin(), q.samples.end());
  j["preset_tag"] = q.preset_tag;
  return j;
}

Potential potential_from_json(const json& j) {
  Potential q;
  q.grid_step = j.at("grid_step").get<Real>();
  q.b_max = j.at("b_max").get<Real>();
  auto s = j.at("samples").get<std::vector<Real>>();
  q.samples = Eigen::Map<const Vec>(s.data(), static_cast<Index>(s.size()));
  q.preset_tag = j.value("preset_tag", std::string{});
  Real n = q.b_max / q.grid_step;
  if (std::abs(n - std::round(n)) > 1e-9 * n ||
      static_cast<Index>(std::llround(n)) != q.samples.size())
    throw std::invalid_argument("potential_from_json: sample count does not tile [0, b_max]");
  return q;
}

std::string potential_digest(const Potential& q) {
  // digest of the canonical serialized form; formatting is pinned by
  // nlohmann's shortest-round-trip doubles
  return digest_string(to_json(q).dump());
}

json cvec_to_json(const CVec& v) {
  json j = json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back({v[i].real(), v[i].imag()});
  return j;
}

CVec cvec_from_json(const json& j) {
  CVec v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const auto& e : j) v[i++] = Complex(e.at(0).get<Real>(), e.at(1).get<Real>());
  return v;
}

json vec_to_json(const Vec& v) { return json(std::vector<Real>(v.begin(), v.end())); }

Vec vec_from_json(const json& j) {
  auto s = j.get<std::vector<Real>>();
  return Eigen::Map<const Vec>(s.data(), static_cast<Index>(s.size()));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for read: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json read_json_file(const std::string& path) { return json::parse(read_text_file(path)); }

std::string csv_format(const std::vector<std::string>& header,
                       const std::vector<std::vector<Real>>& rows) {
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
    os << "\n";
  }
  return os.str();
}

} // namespace kdvist
