#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace rtm {

// Philox-4x32-10 counter-based generator. Streams are indexed explicitly, so
// per-trial generators are independent and reproducible no matter how trials
// are scheduled across threads.
class PhiloxRng {
 public:
  PhiloxRng(std::uint64_t seed, std::uint64_t stream) {
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    ctr_[0] = 0;
    ctr_[1] = 0;
    ctr_[2] = static_cast<std::uint32_t>(stream);
    ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
    pos_ = 4;
  }

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // Uniform on (0, 1]; never returns 0 so logs are safe.
  double uniform_open01() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard complex Gaussian with E|z|^2 = 1 (each real part has variance
  // 1/2), via the polar transform.
  std::complex<double> complex_gaussian() {
    const double u = uniform_open01();
    const double v = uniform_open01();
    const double r = std::sqrt(-std::log(u));
    constexpr double two_pi = 6.28318530717958647692;
    return {r * std::cos(two_pi * v), r * std::sin(two_pi * v)};
  }

 private:
  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
  }

  void refill() {
    std::uint32_t c0 = ctr_[0], c1 = ctr_[1], c2 = ctr_[2], c3 = ctr_[3];
    std::uint32_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c0, hi0, lo0);
      mulhilo(0xCD9E8D57u, c2, hi1, lo1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    buf_[0] = c0;
    buf_[1] = c1;
    buf_[2] = c2;
    buf_[3] = c3;
    if (++ctr_[0] == 0) ++ctr_[1];  // 2^64 blocks per stream
    pos_ = 0;
  }

  std::uint32_t key_[2];
  std::uint32_t ctr_[4];
  std::uint32_t buf_[4];
  int pos_;
};

}  // namespace rtm
