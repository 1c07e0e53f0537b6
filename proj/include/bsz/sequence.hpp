#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bsz/errors.hpp"
#include "bsz/fixed.hpp"

namespace bsz {

// Finite table a(1..N). Indexing is 1-based through at(); values() exposes
// the underlying storage where element 0 holds a(1).
template <class T>
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<T> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  const T& at(std::size_t n) const {
    if (n == 0 || n > values_.size())
      throw DomainError("index " + std::to_string(n) + " outside 1.." + std::to_string(values_.size()));
    return values_[n - 1];
  }

  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }
  // a(1..n) as a span; requires n <= size().
  std::span<const T> prefix(std::size_t n) const {
    if (n > values_.size()) throw DomainError("prefix longer than sequence");
    return std::span<const T>(values_).first(n);
  }

 private:
  std::vector<T> values_;
};

using IntegerSequence = Sequence<i128>;
using CountSequence = Sequence<std::uint64_t>;
using RealSequence = Sequence<double>;

}  // namespace bsz
