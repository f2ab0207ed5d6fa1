#include "glam/net/checkpoint.hpp"

#include <bit>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

namespace fs = std::filesystem;
using nlohmann::json;

namespace glam::net {

namespace {

json config_to_json(const NetworkConfig& c) {
  return json{{"num_classes", c.num_classes},
              {"in_channels", c.in_channels},
              {"base_channels", c.base_channels},
              {"depth", c.depth},
              {"decoder_channels", c.decoder_channels},
              {"head_hidden", c.head_hidden},
              {"init", c.init},
              {"seed", c.seed}};
}

NetworkConfig config_from_json(const json& j) {
  NetworkConfig c;
  c.num_classes = j.at("num_classes").get<int>();
  c.in_channels = j.at("in_channels").get<int>();
  c.base_channels = j.at("base_channels").get<int>();
  c.depth = j.at("depth").get<int>();
  c.decoder_channels = j.at("decoder_channels").get<int>();
  c.head_hidden = j.at("head_hidden").get<int>();
  c.init = j.at("init").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

void save_checkpoint(const std::string& dir, const ParamStore<float>& params,
                     const CheckpointInfo& info) {
  fs::create_directories(dir);
  json manifest;
  manifest["version"] = info.version;
  manifest["format"] = {{"dtype", "float32"}, {"byte_order", "little"}};
  manifest["config"] = config_to_json(info.config);
  manifest["class_order"] = info.class_order;
  manifest["epoch"] = info.epoch;
  json val = json::object();
  for (const auto& [key, scores] : info.validation) {
    val[key] = {{"mean", scores.mean}, {"per_class", scores.per_class}};
  }
  manifest["validation"] = val;

  json arrays = json::array();
  std::size_t offset = 0;
  for (const auto& e : params.entries()) {
    arrays.push_back({{"name", e.name},
                      {"rows", e.value.rows()},
                      {"cols", e.value.cols()},
                      {"offset", offset},
                      {"count", e.value.size()}});
    offset += std::size_t(e.value.size()) * sizeof(float);
  }
  manifest["arrays"] = arrays;

  {
    std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write checkpoint manifest: " + dir);
    out << manifest.dump(2) << "\n";
  }
  std::ofstream bin(fs::path(dir) / "params.bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot write checkpoint arrays: " + dir);
  for (const auto& e : params.entries()) {
    bin.write(reinterpret_cast<const char*>(e.value.data()),
              std::streamsize(e.value.size()) * sizeof(float));
  }
  if (!bin) throw std::runtime_error("short write to checkpoint arrays: " + dir);
}

LoadedCheckpoint load_checkpoint(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "manifest.json", std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint manifest: " + dir);
  json manifest = json::parse(in);

  LoadedCheckpoint out;
  out.info.version = manifest.at("version").get<int>();
  if (manifest.at("format").at("dtype").get<std::string>() != "float32" ||
      manifest.at("format").at("byte_order").get<std::string>() != "little") {
    throw std::runtime_error("unsupported checkpoint format in " + dir);
  }
  out.info.config = config_from_json(manifest.at("config"));
  out.info.class_order =
      manifest.at("class_order").get<std::vector<std::string>>();
  out.info.epoch = manifest.at("epoch").get<int>();
  for (const auto& [key, j] : manifest.at("validation").items()) {
    ValidationScores s;
    s.mean = j.at("mean").get<double>();
    s.per_class = j.at("per_class").get<std::vector<double>>();
    out.info.validation.emplace(key, std::move(s));
  }

  std::ifstream bin(fs::path(dir) / "params.bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot read checkpoint arrays: " + dir);
  for (const auto& j : manifest.at("arrays")) {
    const auto name = j.at("name").get<std::string>();
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const int id = out.params.add(name, rows, cols);
    auto& value = out.params.value(id);
    bin.seekg(std::streamoff(j.at("offset").get<std::size_t>()));
    bin.read(reinterpret_cast<char*>(value.data()),
             std::streamsize(value.size()) * sizeof(float));
    if (!bin) {
      throw std::runtime_error("truncated checkpoint array '" + name + "' in " +
                               dir);
    }
  }
  return out;
}

Network<float> network_from_checkpoint(const LoadedCheckpoint& loaded) {
  Network<float> net(loaded.info.config);
  auto& store = net.params();
  if (store.size() != loaded.params.size()) {
    throw std::runtime_error("checkpoint array count does not match config");
  }
  for (const auto& e : loaded.params.entries()) {
    auto& dst = store.at(e.name);
    if (dst.rows() != e.value.rows() || dst.cols() != e.value.cols()) {
      throw std::runtime_error("checkpoint array shape mismatch: " + e.name);
    }
    dst = e.value;
  }
  return net;
}

}  // namespace glam::net
