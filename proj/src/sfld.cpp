#include "ewild/sfld.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ewild {

static_assert(std::endian::native == std::endian::little,
              "SFLD writer assumes a little-endian host");

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

double get_f64(std::istream& is) {
  double v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_sfld(const std::string& path, const FieldBase& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_sfld: cannot open " + path);
  os.write("SFLD", 4);
  put_u32(os, 1);
  const Grid& g = f.grid();
  put_u32(os, static_cast<std::uint32_t>(g.dim()));
  put_u32(os, static_cast<std::uint32_t>(f.components()));
  for (int a = 0; a < g.dim(); ++a) put_u32(os, static_cast<std::uint32_t>(g.points(a)));
  for (int a = 0; a < g.dim(); ++a) {
    put_f64(os, g.box().lower[a]);
    put_f64(os, g.box().upper[a]);
  }
  os.write(reinterpret_cast<const char*>(f.raw().data()),
           static_cast<std::streamsize>(f.raw().size() * sizeof(double)));
  if (!os) throw std::runtime_error("write_sfld: write failed for " + path);
}

SfldData read_sfld(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_sfld: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "SFLD", 4) != 0)
    throw std::runtime_error("read_sfld: bad magic in " + path);
  const std::uint32_t version = get_u32(is);
  if (version != 1) throw std::runtime_error("read_sfld: unsupported version");
  const int dim = static_cast<int>(get_u32(is));
  const int ncomp = static_cast<int>(get_u32(is));
  if (dim < 2 || dim > 3 || ncomp < 1 || ncomp > 16)
    throw std::runtime_error("read_sfld: malformed header in " + path);
  std::array<int, 3> dims{1, 1, 1};
  for (int a = 0; a < dim; ++a) dims[a] = static_cast<int>(get_u32(is));
  Box box;
  box.dim = dim;
  for (int a = 0; a < dim; ++a) {
    box.lower[a] = get_f64(is);
    box.upper[a] = get_f64(is);
  }
  SfldData out;
  out.grid = Grid::make(box, dims);
  out.components = ncomp;
  out.values.resize(out.grid.size() * ncomp);
  is.read(reinterpret_cast<char*>(out.values.data()),
          static_cast<std::streamsize>(out.values.size() * sizeof(double)));
  if (!is) throw std::runtime_error("read_sfld: truncated data in " + path);
  return out;
}

namespace {

template <class F>
F as_field(SfldData&& d, int expected_comp, const char* what) {
  if (d.components != expected_comp)
    throw std::runtime_error(std::string("read_sfld: component count mismatch for ") + what);
  F f(d.grid);
  f.raw() = std::move(d.values);
  return f;
}

}  // namespace

ScalarField read_sfld_scalar(const std::string& path) {
  return as_field<ScalarField>(read_sfld(path), 1, "scalar");
}

VectorField read_sfld_vector(const std::string& path) {
  SfldData d = read_sfld(path);
  return as_field<VectorField>(std::move(d), d.grid.dim(), "vector");
}

SymTensorField read_sfld_symtensor(const std::string& path, bool traceless) {
  SfldData d = read_sfld(path);
  const int nc = sym_components(d.grid.dim());
  SymTensorField f = as_field<SymTensorField>(std::move(d), nc, "symtensor");
  f.set_traceless(traceless);
  return f;
}

}  // namespace ewild
