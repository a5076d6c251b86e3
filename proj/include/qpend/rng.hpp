// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <cstdint>
#include <random>

namespace qpend {

// SplitMix64 mixing step. Used to whiten seeds and to derive independent
// per-shot streams from a master seed; identical output on every platform.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stream seed for one shot: mixes the master seed and the shot index so
// adjacent shots get decorrelated generators. Shots can then be produced in
// any order (thread pool) while the per-shot results stay byte-identical.
inline std::uint64_t shot_stream_seed(std::uint64_t master_seed,
                                      std::uint64_t shot_index) {
  return splitmix64(splitmix64(master_seed) ^
                    (shot_index + 0x632BE59BD9B4E019ull));
}

// Source of measurement randomness. Each uniform() consumes exactly one
// mt19937_64 word; every measurement in turn consumes exactly one uniform
// draw, so outcome sequences are reproducible from the stream seed alone.
class ShotRng {
 public:
  explicit ShotRng(std::uint64_t stream_seed) : gen_(stream_seed) {}

  // Uniform double in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qpend
