#include "clayer/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace clayer {

namespace {

constexpr char kMagic[8] = {'C', 'L', 'A', 'Y', 'E', 'R', '1', '\0'};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error("checkpoint " + path + ": " + what);
}

void put_bytes(std::ofstream& out, const void* p, std::size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void get_bytes(std::ifstream& in, const std::string& path, void* p,
               std::size_t n) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) fail(path, "truncated file");
}

}  // namespace

void write_checkpoint(const std::string& path, const Grid& g,
                      const Params& prm, const State& st) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(path, "cannot open for writing");

  put_bytes(out, kMagic, sizeof(kMagic));
  std::int32_t nx = g.nx, ny = g.ny;
  put_bytes(out, &nx, sizeof(nx));
  put_bytes(out, &ny, sizeof(ny));
  put_bytes(out, &g.Lx, sizeof(double));
  const double pvals[6] = {prm.H, prm.J, prm.kappa, prm.Pr_m, prm.tau0, prm.s};
  put_bytes(out, pvals, sizeof(pvals));
  put_bytes(out, &st.t, sizeof(double));

  for (const SpecField* f : {&st.u, &st.ut, &st.b1, &st.b1t}) {
    put_bytes(out, f->c.data(), f->c.size() * sizeof(std::complex<double>));
  }
  if (!out) fail(path, "write failure");
}

CheckpointData read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");

  char magic[8];
  get_bytes(in, path, magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    fail(path, "bad magic, not a state snapshot");
  }

  std::int32_t nx = 0, ny = 0;
  double Lx = 0.0;
  get_bytes(in, path, &nx, sizeof(nx));
  get_bytes(in, path, &ny, sizeof(ny));
  get_bytes(in, path, &Lx, sizeof(Lx));
  if (nx < 4 || nx % 2 != 0 || ny < 3 || !(Lx > 0.0)) {
    fail(path, "invalid grid header");
  }

  double pvals[6];
  get_bytes(in, path, pvals, sizeof(pvals));
  Params prm;
  prm.H = pvals[0];
  prm.J = pvals[1];
  prm.kappa = pvals[2];
  prm.Pr_m = pvals[3];
  prm.tau0 = pvals[4];
  prm.s = pvals[5];
  try {
    prm.validate();
  } catch (const std::invalid_argument& ex) {
    fail(path, std::string("invalid stored parameters: ") + ex.what());
  }

  Grid g(nx, ny, Lx);
  CheckpointData ck(g, prm);
  get_bytes(in, path, &ck.state.t, sizeof(double));
  for (SpecField* f : {&ck.state.u, &ck.state.ut, &ck.state.b1,
                       &ck.state.b1t}) {
    get_bytes(in, path, f->c.data(),
              f->c.size() * sizeof(std::complex<double>));
  }
  char extra;
  in.read(&extra, 1);
  if (in.gcount() != 0) fail(path, "trailing bytes after the state");
  if (!ck.state.all_finite()) fail(path, "stored fields contain NaN or Inf");
  return ck;
}

}  // namespace clayer
