#include "sqg/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sqg {

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'S', 'Q', 'G', 'F'};

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const SpectralField& f) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  os.write(kMagic, 4);
  put_u32(os, kCheckpointVersion);
  put_u32(os, static_cast<std::uint32_t>(f.grid().n));
  put_f64(os, f.grid().box_len);
  for (const cplx& c : f.coeffs()) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
  if (!os) throw std::runtime_error("short write to checkpoint: " + path);
}

SpectralField read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("bad checkpoint magic in " + path);
  const std::uint32_t version = get_u32(is);
  if (version != kCheckpointVersion)
    throw std::runtime_error("unsupported checkpoint version " +
                             std::to_string(version) + " in " + path);
  const std::uint32_t n = get_u32(is);
  const double box_len = get_f64(is);
  if (!is) throw std::runtime_error("truncated checkpoint header: " + path);
  SpectralField f(Grid{static_cast<int>(n), box_len});
  for (cplx& c : f.coeffs()) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    c = cplx{re, im};
  }
  if (!is) throw std::runtime_error("truncated checkpoint payload: " + path);
  return f;
}

void write_resume_context(const std::string& path, const ResumeContext& ctx) {
  nlohmann::json j;
  j["t"] = ctx.t;
  j["step"] = ctx.step;
  j["dissipation_integral"] = ctx.dissipation_integral;
  j["sup_h3_g_sq"] = ctx.sup_h3_g_sq;
  j["scheme"] = ctx.scheme;
  j["seed"] = ctx.seed;
  j["tail_rows"] = ctx.tail_rows;
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open resume context for writing: " + path);
  os << j.dump(2) << '\n';
}

ResumeContext read_resume_context(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open resume context: " + path);
  nlohmann::json j;
  is >> j;
  ResumeContext ctx;
  ctx.t = j.at("t").get<double>();
  ctx.step = j.at("step").get<std::uint64_t>();
  ctx.dissipation_integral = j.at("dissipation_integral").get<double>();
  ctx.sup_h3_g_sq = j.at("sup_h3_g_sq").get<double>();
  ctx.scheme = j.at("scheme").get<std::string>();
  ctx.seed = j.at("seed").get<std::uint64_t>();
  ctx.tail_rows = j.at("tail_rows").get<std::vector<std::string>>();
  return ctx;
}

}  // namespace sqg
