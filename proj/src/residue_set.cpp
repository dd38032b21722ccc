#include "zsum/residue_set.hpp"

#include <algorithm>

namespace zsum {

namespace {

// dst |= src << s (bit positions), truncated to dst's width
void shl_or(std::span<const std::uint64_t> src, std::uint64_t s, std::span<std::uint64_t> dst) {
  const std::size_t w = dst.size();
  const std::size_t ws = static_cast<std::size_t>(s / 64);
  const unsigned bs = static_cast<unsigned>(s % 64);
  for (std::size_t i = w; i-- > ws;) {
    const std::size_t j = i - ws;
    std::uint64_t v = src[j] << bs;
    if (bs != 0 && j > 0) v |= src[j - 1] >> (64 - bs);
    dst[i] |= v;
  }
}

// dst |= src >> s
void shr_or(std::span<const std::uint64_t> src, std::uint64_t s, std::span<std::uint64_t> dst) {
  const std::size_t w = dst.size();
  const std::size_t ws = static_cast<std::size_t>(s / 64);
  const unsigned bs = static_cast<unsigned>(s % 64);
  for (std::size_t i = 0; i + ws < w; ++i) {
    const std::size_t j = i + ws;
    std::uint64_t v = src[j] >> bs;
    if (bs != 0 && j + 1 < w) v |= src[j + 1] << (64 - bs);
    dst[i] |= v;
  }
}

}  // namespace

bool ResidueSet::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

ResidueSet ResidueSet::with_shifted(std::uint64_t shift) const {
  ResidueSet out = *this;
  rotate_or(words_, shift, n_, out.words_);
  return out;
}

void ResidueSet::rotate_or(std::span<const std::uint64_t> src, std::uint64_t shift, std::uint64_t n,
                           std::span<std::uint64_t> dst) {
  shift %= n;
  if (shift == 0) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
    return;
  }
  if (dst.size() == 1) {
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    dst[0] |= ((src[0] << shift) & mask) | (src[0] >> (n - shift));
    return;
  }
  // Work on a scratch copy so src and dst may alias.
  std::vector<std::uint64_t> tmp(dst.size(), 0);
  shl_or(src, shift, tmp);
  if (const std::uint64_t tail = n % 64; tail != 0) tmp.back() &= (std::uint64_t{1} << tail) - 1;
  shr_or(src, n - shift, tmp);
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= tmp[i];
}

}  // namespace zsum
