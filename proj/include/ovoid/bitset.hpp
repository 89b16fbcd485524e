#ifndef OVOID_BITSET_HPP
#define OVOID_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ovoid {

// Fixed-size bitset sized at runtime. Only the operations the search and
// adjacency kernels need.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void set_all() noexcept {
    for (auto& w : words_) w = ~std::uint64_t{0};
    trim();
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool intersects(const Bitset& o) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  Bitset& subtract(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  bool operator==(const Bitset& o) const = default;

  // Calls f(i) for every set bit, ascending.
  template <typename Fn>
  void for_each(Fn&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        const int b = std::countr_zero(w);
        f(k * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_indices() const {
    std::vector<std::uint32_t> out;
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  void trim() noexcept {
    if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ovoid

#endif  // OVOID_BITSET_HPP
