#pragma once

#include <utility>

#include "qjm/effect.hpp"

namespace qjm {

/// Sharpness data of a simple observable. The sharpness is the spectral width
/// of A minus the spectral width of AA' (A' the complement effect), and the
/// unsharpness is 1 - sharpness^2.
struct SharpnessReport {
  double width;          ///< spectral width of A: |a|
  double product_width;  ///< spectral width of AA': |a| * |1 - alpha|
  double sharpness;      ///< |a| * (1 - |1 - alpha|), in [0, 1]
  double unsharpness;    ///< 1 - sharpness^2
};

/// Spectral width, max minus min of the spectrum: |a|.
double spectral_width(const Effect& e);

/// Spectral width of AA'. A and A' commute, so the spectrum of AA' is
/// {lambda (1 - lambda)} over the eigenvalues of A, giving |a| * |1 - alpha|.
double product_width(const Effect& e);

SharpnessReport sharpness(const SimpleObservable& o);

/// Distance between two simple qubit observables,
/// |a - b| / 2 + |alpha - beta| / 2. This is the worst-case difference of
/// outcome probabilities over all states, and a metric.
double distance(const SimpleObservable& o1, const SimpleObservable& o2);

/// Distance from O to the nearest sharp observable together with the unique
/// minimizing axis a/|a|. Requires a nonzero Bloch vector; for trivial
/// observables every axis is minimizing and DegenerateAxis is thrown.
std::pair<double, UnitVector3> distance_to_nearest_sharp(
    const SimpleObservable& o);

}  // namespace qjm
