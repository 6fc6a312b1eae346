#include "betafreq/rng.hpp"

#include <cmath>

namespace betafreq {

namespace {

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b,
                             std::uint64_t* hi) {
#if defined(__SIZEOF_INT128__)
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  *hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
#else
  // Portable 64x64 -> 128 split multiply.
  const std::uint64_t a_lo = a & 0xffffffffull, a_hi = a >> 32;
  const std::uint64_t b_lo = b & 0xffffffffull, b_hi = b >> 32;
  const std::uint64_t t = a_hi * b_lo + ((a_lo * b_lo) >> 32);
  const std::uint64_t u = a_lo * b_hi + (t & 0xffffffffull);
  *hi = a_hi * b_hi + (t >> 32) + (u >> 32);
  return a * b;
#endif
}

}  // namespace

void Philox::refill() {
  constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ull;
  constexpr std::uint64_t M1 = 0xCA5A826395121157ull;
  constexpr std::uint64_t W0 = 0x9E3779B97F4A7C15ull;
  constexpr std::uint64_t W1 = 0xBB67AE8584CAA73Bull;

  std::uint64_t c0 = ctr_lo_, c1 = ctr_hi_, c2 = 0, c3 = 0;
  std::uint64_t k0 = key0_, k1 = key1_;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 += W0;
      k1 += W1;
    }
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(M0, c0, &hi0);
    const std::uint64_t lo1 = mulhilo(M1, c2, &hi1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
  }
  block_ = {c0, c1, c2, c3};
  block_pos_ = 0;
  if (++ctr_lo_ == 0) ++ctr_hi_;
}

std::uint64_t Philox::next_u64() {
  if (block_pos_ == 4) refill();
  return block_[block_pos_++];
}

double Philox::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_normal_;
  }
  const double u1 = next_open();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  spare_normal_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace betafreq
