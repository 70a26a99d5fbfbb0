#pragma once

#include <cstdint>
#include <vector>

#include "dssi/optics.hpp"
#include "dssi/tensor.hpp"

// Reproducible instances for tests, benchmarks and demos. None of this is a
// physical optics model; the PSFs are arbitrary band-dependent blur codes.
namespace dssi::synthetic {

/// Uniform [0, 1) cube.
SpectralCube random_cube(std::size_t height, std::size_t width, std::size_t bands, std::uint64_t seed);
CodedImage random_image(std::size_t height, std::size_t width, std::uint64_t seed);

/// Strictly positive random kernels, each normalized to unit sum.
std::vector<Kernel> random_psfs(std::size_t bands, std::size_t size, std::uint64_t seed);
/// Uniform [0, 1) response entries.
SpectralResponse random_response(std::size_t bands, std::uint64_t seed);
OpticalSystem random_system(std::size_t bands, std::size_t kernel_size, std::uint64_t seed);

/// Elongated two-lobe kernels whose orientation rotates with band index, a
/// rough stand-in for a rotating diffractive PSF.
std::vector<Kernel> rotating_psfs(std::size_t bands, std::size_t size);
/// Three overlapping Gaussian color-matching curves over the bands.
SpectralResponse gaussian_response(std::size_t bands);
/// Band-center wavelengths in nm, evenly spread over 400..700.
std::vector<double> band_wavelengths(std::size_t bands);
OpticalSystem demo_system(std::size_t bands, std::size_t kernel_size);

/// Piecewise-smooth scene: a few rectangles and discs with smooth spectra
/// over a gently varying background, values in [0, 1].
SpectralCube demo_scene(std::size_t height, std::size_t width, std::size_t bands, std::uint64_t seed);

}  // namespace dssi::synthetic
