#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qrk/linalg.hpp"
#include "qrk/system_model.hpp"

namespace qrk {

namespace {

constexpr char kMagic[8] = {'Q', 'R', 'K', 'I', 'N', 'S', 'T', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

void write_raw(std::ofstream& os, const void* data, std::size_t bytes) {
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
}

void read_raw(std::ifstream& is, void* data, std::size_t bytes) {
  is.read(static_cast<char*>(data), static_cast<std::streamsize>(bytes));
  if (!is) {
    throw std::runtime_error("instance file truncated");
  }
}

}  // namespace

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path,
                   const std::string& extra_metadata_json) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  const std::int64_t m = instance.rows();
  const std::int64_t n = instance.cols();
  write_raw(os, kMagic, sizeof(kMagic));
  write_raw(os, &kFormatVersion, sizeof(kFormatVersion));
  const std::uint32_t reserved = 0;
  write_raw(os, &reserved, sizeof(reserved));
  write_raw(os, &m, sizeof(m));
  write_raw(os, &n, sizeof(n));
  write_raw(os, &instance.seed, sizeof(instance.seed));
  write_raw(os, &instance.x_star_stddev, sizeof(instance.x_star_stddev));
  write_raw(os, instance.x_star.data(), sizeof(double) * static_cast<std::size_t>(n));
  write_raw(os, instance.b.data(), sizeof(double) * static_cast<std::size_t>(m));
  write_raw(os, instance.a.data(), sizeof(double) * static_cast<std::size_t>(m * n));
  if (!os) {
    throw std::runtime_error("write failed for " + path.string());
  }
  os.close();

  nlohmann::json meta = nlohmann::json::parse(extra_metadata_json);
  meta["m"] = m;
  meta["n"] = n;
  meta["seed"] = instance.seed;
  meta["distribution"] = "gaussian_row_normalized";
  meta["x_star_stddev"] = instance.x_star_stddev;
  meta["format_version"] = kFormatVersion;
  std::filesystem::path json_path = path;
  json_path.replace_extension(".json");
  std::ofstream js(json_path, std::ios::trunc);
  if (!js) {
    throw std::runtime_error("cannot open " + json_path.string() + " for writing");
  }
  js << meta.dump(2) << "\n";
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::runtime_error("cannot open " + path.string());
  }
  char magic[8] = {};
  read_raw(is, magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error(path.string() + " is not an instance file");
  }
  std::uint32_t version = 0;
  std::uint32_t reserved = 0;
  read_raw(is, &version, sizeof(version));
  read_raw(is, &reserved, sizeof(reserved));
  if (version != kFormatVersion) {
    throw std::runtime_error("unsupported instance format version");
  }
  std::int64_t m = 0;
  std::int64_t n = 0;
  ProblemInstance instance;
  read_raw(is, &m, sizeof(m));
  read_raw(is, &n, sizeof(n));
  if (m < 1 || n < 1) {
    throw std::runtime_error("corrupt instance header");
  }
  read_raw(is, &instance.seed, sizeof(instance.seed));
  read_raw(is, &instance.x_star_stddev, sizeof(instance.x_star_stddev));
  instance.x_star.resize(n);
  instance.b.resize(m);
  instance.a.resize(m, n);
  read_raw(is, instance.x_star.data(), sizeof(double) * static_cast<std::size_t>(n));
  read_raw(is, instance.b.data(), sizeof(double) * static_cast<std::size_t>(m));
  read_raw(is, instance.a.data(), sizeof(double) * static_cast<std::size_t>(m * n));
  instance.spectrum = spectral_summary(instance.a);
  return instance;
}

}  // namespace qrk
