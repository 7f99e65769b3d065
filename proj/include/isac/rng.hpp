#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace isac {

// SplitMix64 finalizer, used for stream derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded random stream. Consumers derive independent substreams from
// (seed, tags...) so that results never depend on evaluation order or on
// how many threads touched the generator.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  static RngStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = splitmix64(seed ^ 0x5bf03635c2a7a0a5ULL);
    for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
    return RngStream(h);
  }

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  double normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(gen_);
  }
  long long poisson(double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<long long>(mean)(gen_);
  }
  std::uint64_t next_u64() { return gen_(); }

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace isac
