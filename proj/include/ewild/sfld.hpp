#pragma once

#include <string>

#include "ewild/field.hpp"

namespace ewild {

// Field file format "SFLD v1":
//   bytes "SFLD", u32 version=1, u32 dim, u32 component count,
//   per-axis u32 point counts, per-axis f64 lower/upper,
//   then components concatenated, each row-major f64, little-endian.
// Round-trips bit-exactly.

void write_sfld(const std::string& path, const FieldBase& f);

struct SfldData {
  Grid grid;
  int components = 0;
  std::vector<double> values;  // component-major, as in FieldBase
};

SfldData read_sfld(const std::string& path);

ScalarField read_sfld_scalar(const std::string& path);
VectorField read_sfld_vector(const std::string& path);
SymTensorField read_sfld_symtensor(const std::string& path, bool traceless = false);

}  // namespace ewild
