#include "qbill/spectral/spectrum_file.hpp"

#include "qbill/error.hpp"
#include "qbill/io/atomic_file.hpp"
#include "qbill/io/binary.hpp"

namespace qbill::spectral {

std::vector<std::uint8_t> encode_spectrum(const EigenSolution& s) {
    io::ByteWriter w;
    w.magic("QBS1");
    w.u32(kSpectrumVersion);
    w.f64(s.mass.inv_kappa());
    w.u32(static_cast<std::uint32_t>(s.cutoff));
    w.i8(static_cast<std::int8_t>(s.parity_block));
    w.u32(static_cast<std::uint32_t>(s.size()));
    w.u32(static_cast<std::uint32_t>(s.basis_dim()));
    w.u32(s.has_coefficients() ? 1u : 0u);
    for (double e : s.energies) {
        w.f64(e);
    }
    for (int p : s.parities) {
        w.i8(static_cast<std::int8_t>(p));
    }
    if (s.has_coefficients()) {
        w.bytes().reserve(w.bytes().size() + 8 * static_cast<std::size_t>(s.coefficients.size()));
        for (Eigen::Index r = 0; r < s.coefficients.rows(); ++r) {
            for (Eigen::Index c = 0; c < s.coefficients.cols(); ++c) {
                w.f64(s.coefficients(r, c));
            }
        }
    }
    return std::move(w.bytes());
}

EigenSolution decode_spectrum(const std::vector<std::uint8_t>& bytes) {
    io::ByteReader r(bytes, "spectrum file");
    r.expect_magic("QBS1");
    const auto version = r.u32();
    if (version != kSpectrumVersion) {
        throw FormatError("spectrum file: unsupported version " + std::to_string(version));
    }
    EigenSolution s;
    s.mass = MassRatio::from_inverse(r.f64());
    s.cutoff = static_cast<int>(r.u32());
    s.parity_block = r.i8();
    const auto num_states = r.u32();
    const auto basis_dim = r.u32();
    const auto flags = r.u32();
    if (s.cutoff < 3 || basis_dim != basis_dimension(s.cutoff)) {
        throw FormatError("spectrum file: basis dimension does not match the cutoff");
    }
    s.energies.resize(num_states);
    for (auto& e : s.energies) {
        e = r.f64();
    }
    s.parities.resize(num_states);
    for (auto& p : s.parities) {
        p = r.i8();
        if (p != 1 && p != -1) {
            throw FormatError("spectrum file: parity entries must be +1 or -1");
        }
    }
    if (flags & 1u) {
        s.coefficients.resize(num_states, basis_dim);
        for (Eigen::Index i = 0; i < s.coefficients.rows(); ++i) {
            for (Eigen::Index j = 0; j < s.coefficients.cols(); ++j) {
                s.coefficients(i, j) = r.f64();
            }
        }
    }
    if (!r.at_end()) {
        throw FormatError("spectrum file: trailing bytes after payload");
    }
    return s;
}

void write_spectrum(const std::string& path, const EigenSolution& s) {
    io::write_atomic(path, encode_spectrum(s));
}

EigenSolution read_spectrum(const std::string& path) {
    return decode_spectrum(io::read_file(path));
}

}  // namespace qbill::spectral
