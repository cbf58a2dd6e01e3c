#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "blockcoh/block_structure.hpp"

namespace blockcoh {

inline constexpr std::uint64_t kDefaultSeed = 0x5eedb10c5ULL;

// Deterministic random source. mt19937_64 output is fully specified by the
// standard; doubles and gaussians are derived from raw 64-bit draws (not
// std::*_distribution) so that streams are reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : gen_(seed) {}

    double uniform();                       // [0, 1)
    double gaussian();                      // standard normal, Box-Muller
    Cx cgaussian();                         // complex normal, E|z|^2 = 1
    int uniform_int(int lo, int hi);        // inclusive range

    Vector unit_vector(int d);              // Haar on the sphere
    std::vector<double> simplex(int n);     // flat Dirichlet
    Matrix ginibre(int rows, int cols);     // i.i.d. complex gaussian entries
    Matrix haar_unitary(int n);             // QR with phase correction
    Matrix density(int d);                  // Ginibre-induced random state
    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace blockcoh
