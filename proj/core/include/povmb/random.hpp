// Copyright 2026 The povmb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "povmb/channel.hpp"
#include "povmb/matrix.hpp"
#include "povmb/povm.hpp"

namespace povmb {

using Rng = std::mt19937_64;

std::vector<cplx> random_vector(Rng& rng, std::size_t d);  // unit norm
ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(Rng& rng, std::size_t d);
// Haar-distributed via QR of a Ginibre matrix with the R-diagonal phases removed.
ComplexMatrix random_unitary(Rng& rng, std::size_t d);
// Induced-measure density matrix with the given rank (0 = full).
ComplexMatrix random_state(Rng& rng, std::size_t d, std::size_t rank = 0);
// Projections onto consecutive blocks of columns of a random unitary.
DiscretePOVM random_pvm(Rng& rng, std::size_t d, const std::vector<std::size_t>& ranks);
DiscretePOVM random_rank1_pvm(Rng& rng, std::size_t d);
// S^{-1/2} A_x S^{-1/2} with A_x Wishart and S = sum A_x.
DiscretePOVM random_povm(Rng& rng, std::size_t d, std::size_t outcomes);
JointPOVM random_joint(Rng& rng, std::size_t d, const std::vector<Label>& x_labels,
                       const std::vector<Label>& y_labels);
// Kraus operators read off a random isometry.
Channel random_channel(Rng& rng, std::size_t din, std::size_t dout, std::size_t kraus = 0);
std::vector<double> random_probabilities(Rng& rng, std::size_t n);
MarkovKernel random_kernel(Rng& rng, const std::vector<Label>& source,
                           const std::vector<Label>& target);

}  // namespace povmb
