#pragma once

#include <kdvist/potential.hpp>
#include <kdvist/types.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace kdvist {

using json = nlohmann::json;

// --- stable hashing (FNV-1a 64) used for cache keys and run manifests ---
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::string hex64(std::uint64_t v);
std::string digest_string(const std::string& s);

json to_json(const Potential& q);
Potential potential_from_json(const json& j);
std::string potential_digest(const Potential& q);

// complex arrays serialize as [re, im] pairs
json cvec_to_json(const CVec& v);
CVec cvec_from_json(const json& j);
json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j);

// --- small file helpers ---
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

//! CSV writer with fixed formatting so identical data gives identical bytes.
std::string csv_format(const std::vector<std::string>& header,
                       const std::vector<std::vector<Real>>& rows);

std::string format_real(Real v);

} // namespace kdvist
