#include "gasr/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gasr {

namespace {

constexpr std::uint64_t kMulHi = 0x2360ed051fc65da4ULL;
constexpr std::uint64_t kMulLo = 0x4385df649fccf645ULL;

inline unsigned __int128 pcg_multiplier() {
  return (static_cast<unsigned __int128>(kMulHi) << 64) | kMulLo;
}

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotr64(std::uint64_t v, unsigned rot) {
  return (v >> rot) | (v << ((-rot) & 63));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  const unsigned __int128 initstate =
      (static_cast<unsigned __int128>(splitmix64(s)) << 64) | splitmix64(s);
  std::uint64_t t = stream ^ 0xda3e39cb94b95bdbULL;
  const unsigned __int128 initseq =
      (static_cast<unsigned __int128>(splitmix64(t)) << 64) | splitmix64(t);

  inc_ = (initseq << 1) | 1;
  state_ = inc_ + initstate;
  state_ = state_ * pcg_multiplier() + inc_;
}

std::uint64_t RngStream::next_u64() {
  const unsigned __int128 old = state_;
  state_ = old * pcg_multiplier() + inc_;
  const unsigned rot = static_cast<unsigned>(old >> 122);
  const std::uint64_t xored =
      static_cast<std::uint64_t>(old >> 64) ^ static_cast<std::uint64_t>(old);
  return rotr64(xored, rot);
}

double RngStream::uniform01() {
  // 53-bit mantissa, offset by half an ulp so 0 and 1 are excluded.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * f;
  has_cached_normal_ = true;
  return u * f;
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
  return -std::log(uniform01()) / rate;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v >= threshold) return v % bound;
  }
}

}  // namespace gasr
