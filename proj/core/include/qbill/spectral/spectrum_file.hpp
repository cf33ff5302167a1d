#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbill/spectral/eigen_solution.hpp"

namespace qbill::spectral {

// QBS1 spectrum file, little-endian:
//   "QBS1" | version u32 | inv_kappa f64 | cutoff u32 | parity i8 (0 = merged)
//   | num_states u32 | basis_dim u32 | flags u32 (bit0: coefficients present)
//   | energies f64[num_states] | parities i8[num_states]
//   | [coefficients f64[num_states][basis_dim], row-major]
inline constexpr std::uint32_t kSpectrumVersion = 1;

std::vector<std::uint8_t> encode_spectrum(const EigenSolution& s);
EigenSolution decode_spectrum(const std::vector<std::uint8_t>& bytes);

void write_spectrum(const std::string& path, const EigenSolution& s);
EigenSolution read_spectrum(const std::string& path);

}  // namespace qbill::spectral
