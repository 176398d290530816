#pragma once

#include <span>
#include <string>
#include <vector>

#include "fedgolab/ganforge/discriminator.hpp"
#include "fedgolab/ganforge/generator.hpp"
#include "fedgolab/numerics/mlp.hpp"

namespace fedgo::cli {

/// Model files: one header line `FEDGOLAB-MODEL v1`, then a JSON object with
/// layer dims, activation names and base64 little-endian float64 parameter
/// blobs.
inline constexpr const char* kModelHeader = "FEDGOLAB-MODEL v1";

std::string base64_encode(std::span<const unsigned char> bytes);
std::vector<unsigned char> base64_decode(std::string_view text);

std::string encode_doubles(std::span<const double> values);
std::vector<double> decode_doubles(std::string_view text);

void save_classifier(const std::string& path, const numerics::MlpModel& model);
numerics::MlpModel load_classifier(const std::string& path);

void save_discriminator(const std::string& path, const ganforge::Discriminator& disc);
ganforge::Discriminator load_discriminator(const std::string& path);

void save_generator(const std::string& path, const ganforge::Generator& gen);
ganforge::Generator load_generator(const std::string& path);

} // namespace fedgo::cli
