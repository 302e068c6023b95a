#pragma once

#include "vrsgd/data.hpp"

#include <string_view>

namespace vrsgd::bench {

enum class SynthKind { ridge, logistic, sigmoid, sparse, eigen };

SynthKind synth_kind_from_string(std::string_view s);

/// Seeded synthetic instances in LIBSVM-compatible form.
///  ridge     unit rows, targets from a noisy linear model
///  logistic  unit rows, +-1 labels from a noisy linear model
///  sigmoid   as logistic with 10% flipped labels
///  sparse    about density * d nonzeros per unit row, +-1 labels
///  eigen     rows with a prescribed spectrum, top eigenvalues 1 and 0.97, zero labels
Dataset<double> generate_synthetic(SynthKind kind, Index n, Index d, std::uint64_t seed, double density = 0.002);

}  // namespace vrsgd::bench
