// Copyright 2026 The gdpurify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GDPURIFY_WALSH_H
#define GDPURIFY_WALSH_H

#include <bit>
#include <cstddef>
#include <span>

#include "gdpurify/graph.h"

namespace gdpurify {

/// Unnormalized Walsh-Hadamard transform acting only on the index bits set in
/// `mask`; the remaining bits are spectators. Applying it twice multiplies every
/// entry by 2^popcount(mask).
inline void walsh_transform_bits(std::span<double> data, Syndrome mask) {
    const std::size_t size = data.size();
    for (Syndrome bits = mask; bits != 0; bits &= bits - 1) {
        const std::size_t h = std::size_t{1} << std::countr_zero(bits);
        for (std::size_t block = 0; block < size; block += 2 * h) {
            double *lo = data.data() + block;
            double *hi = lo + h;
            for (std::size_t j = 0; j < h; j++) {
                double x = lo[j];
                double y = hi[j];
                lo[j] = x + y;
                hi[j] = x - y;
            }
        }
    }
}

}  // namespace gdpurify

#endif
