#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "endoscopy/spectrum.hpp"

namespace endoscopy {

inline constexpr const char* kSchema = "endoscopy-kit/1";

/// JSON document: a header (schema, N, seed, prime range, ramified set,
/// pool config) and one record per parameter whose Satake angles are packed
/// as base64 of little-endian IEEE doubles, so a round trip is bit-exact.
nlohmann::json spectrum_to_json(const SpectrumStore& store);
SpectrumStore spectrum_from_json(const nlohmann::json& doc);

std::string base64_encode_doubles(const std::vector<double>& values);
std::vector<double> base64_decode_doubles(const std::string& text);

void save_spectrum(const SpectrumStore& store, const std::filesystem::path& path);
SpectrumStore load_spectrum(const std::filesystem::path& path);

}  // namespace endoscopy
