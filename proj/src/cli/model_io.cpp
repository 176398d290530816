#include "fedgolab/cli/model_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fedgolab/common/errors.hpp"

namespace fedgo::cli {

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_symbol(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

} // namespace

std::string base64_encode(std::span<const unsigned char> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const std::uint32_t triple = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kAlphabet[(triple >> 18) & 0x3f]);
    out.push_back(kAlphabet[(triple >> 12) & 0x3f]);
    out.push_back(kAlphabet[(triple >> 6) & 0x3f]);
    out.push_back(kAlphabet[triple & 0x3f]);
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const std::uint32_t triple = bytes[i] << 16;
    out.push_back(kAlphabet[(triple >> 18) & 0x3f]);
    out.push_back(kAlphabet[(triple >> 12) & 0x3f]);
    out.push_back('=');
    out.push_back('=');
  } else if (rest == 2) {
    const std::uint32_t triple = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out.push_back(kAlphabet[(triple >> 18) & 0x3f]);
    out.push_back(kAlphabet[(triple >> 12) & 0x3f]);
    out.push_back(kAlphabet[(triple >> 6) & 0x3f]);
    out.push_back('=');
  }
  return out;
}

std::vector<unsigned char> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw io_error("base64 payload length is not a multiple of 4");
  std::vector<unsigned char> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int vals[4] = {0, 0, 0, 0};
    int pads = 0;
    for (int j = 0; j < 4; ++j) {
      const char c = text[i + j];
      if (c == '=') {
        ++pads;
        vals[j] = 0;
        continue;
      }
      if (pads > 0) throw io_error("base64 padding in the middle of payload");
      vals[j] = decode_symbol(c);
      if (vals[j] < 0) throw io_error("base64 payload has an invalid character");
    }
    const std::uint32_t triple = (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
    out.push_back(static_cast<unsigned char>((triple >> 16) & 0xff));
    if (pads < 2) out.push_back(static_cast<unsigned char>((triple >> 8) & 0xff));
    if (pads < 1) out.push_back(static_cast<unsigned char>(triple & 0xff));
  }
  return out;
}

std::string encode_doubles(std::span<const double> values) {
  std::vector<unsigned char> bytes;
  bytes.reserve(values.size() * 8);
  for (double v : values) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      bytes.push_back(static_cast<unsigned char>((bits >> (8 * b)) & 0xff));
    }
  }
  return base64_encode(bytes);
}

std::vector<double> decode_doubles(std::string_view text) {
  const std::vector<unsigned char> bytes = base64_decode(text);
  if (bytes.size() % 8 != 0) throw io_error("float blob length is not a multiple of 8");
  std::vector<double> out(bytes.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) {
      bits = (bits << 8) | bytes[i * 8 + static_cast<std::size_t>(b)];
    }
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

namespace {

nlohmann::json mlp_to_json(const numerics::MlpModel& model) {
  nlohmann::json j;
  j["layer_dims"] = model.layer_dims;
  std::vector<std::string> acts;
  for (auto a : model.activations) acts.emplace_back(numerics::activation_name(a));
  j["activations"] = acts;
  nlohmann::json params = nlohmann::json::array();
  for (const auto& layer : model.params) {
    nlohmann::json p;
    p["weight"] = encode_doubles(layer.weight.data);
    p["bias"] = encode_doubles(layer.bias);
    params.push_back(std::move(p));
  }
  j["params"] = std::move(params);
  return j;
}

numerics::MlpModel mlp_from_json(const nlohmann::json& j) {
  numerics::MlpModel model;
  model.layer_dims = j.at("layer_dims").get<std::vector<std::size_t>>();
  for (const auto& name : j.at("activations")) {
    model.activations.push_back(numerics::activation_from_name(name.get<std::string>()));
  }
  for (std::size_t l = 0; l + 1 < model.layer_dims.size(); ++l) {
    const auto& p = j.at("params").at(l);
    numerics::LayerParams layer;
    layer.weight = numerics::DenseMatrix(model.layer_dims[l], model.layer_dims[l + 1]);
    layer.weight.data = decode_doubles(p.at("weight").get<std::string>());
    layer.bias = decode_doubles(p.at("bias").get<std::string>());
    model.params.push_back(std::move(layer));
  }
  model.validate();
  return model;
}

void write_model_file(const std::string& path, const nlohmann::json& body) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << kModelHeader << '\n' << body.dump() << '\n';
  if (!out) throw io_error("write failed: " + path);
}

nlohmann::json read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open: " + path);
  std::string header;
  if (!std::getline(in, header) || header != kModelHeader) {
    throw io_error(path + ": missing '" + std::string(kModelHeader) + "' header");
  }
  nlohmann::json body;
  try {
    in >> body;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path + ": bad model payload: " + e.what());
  }
  return body;
}

} // namespace

void save_classifier(const std::string& path, const numerics::MlpModel& model) {
  nlohmann::json j = mlp_to_json(model);
  j["kind"] = "classifier";
  write_model_file(path, j);
}

numerics::MlpModel load_classifier(const std::string& path) {
  const nlohmann::json j = read_model_file(path);
  if (j.at("kind") != "classifier") throw io_error(path + ": not a classifier model file");
  return mlp_from_json(j);
}

void save_discriminator(const std::string& path, const ganforge::Discriminator& disc) {
  nlohmann::json j = mlp_to_json(disc.body);
  j["kind"] = "discriminator";
  j["head"] = ganforge::head_kind_name(disc.head);
  j["byzantine"] = disc.byzantine;
  write_model_file(path, j);
}

ganforge::Discriminator load_discriminator(const std::string& path) {
  const nlohmann::json j = read_model_file(path);
  if (j.at("kind") != "discriminator") throw io_error(path + ": not a discriminator model file");
  ganforge::Discriminator disc;
  disc.body = mlp_from_json(j);
  disc.head = ganforge::head_kind_from_name(j.at("head").get<std::string>());
  disc.byzantine = j.value("byzantine", false);
  disc.validate();
  return disc;
}

void save_generator(const std::string& path, const ganforge::Generator& gen) {
  nlohmann::json j;
  if (gen.kind == ganforge::Generator::Kind::MlpBody) {
    j = mlp_to_json(gen.body);
    j["kind"] = "generator_mlp";
    j["noise_dim"] = gen.noise_dim;
  } else {
    j["kind"] = "generator_fixed";
    j["rows"] = gen.pool.points.rows;
    j["cols"] = gen.pool.points.cols;
    j["points"] = encode_doubles(gen.pool.points.data);
  }
  write_model_file(path, j);
}

ganforge::Generator load_generator(const std::string& path) {
  const nlohmann::json j = read_model_file(path);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "generator_mlp") {
    return ganforge::Generator::mlp(j.at("noise_dim").get<std::size_t>(), mlp_from_json(j));
  }
  if (kind == "generator_fixed") {
    synthdata::UnlabeledDataset pool;
    pool.points =
        numerics::DenseMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    pool.points.data = decode_doubles(j.at("points").get<std::string>());
    if (pool.points.data.size() != pool.points.rows * pool.points.cols) {
      throw io_error(path + ": point blob size does not match rows*cols");
    }
    return ganforge::Generator::fixed_sampler(std::move(pool));
  }
  throw io_error(path + ": not a generator model file");
}

} // namespace fedgo::cli
