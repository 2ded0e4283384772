#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sok {

struct Letter {
  std::uint32_t generator = 0;
  std::int8_t sign = 1;  // +1 or -1

  Letter inverse() const { return {generator, static_cast<std::int8_t>(-sign)}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Cancels adjacent inverse pairs until none remain.
Word free_reduce(std::span<const Letter> w);
bool is_freely_reduced(std::span<const Letter> w);

Word inverse(std::span<const Letter> w);
Word concat(std::span<const Letter> a, std::span<const Letter> b);
Word power(std::span<const Letter> w, int exponent);

/// Exponent sum of every generator, length = generator_count.
std::vector<std::int64_t> exponent_vector(std::span<const Letter> w,
                                          std::size_t generator_count);

/// Whitespace separated tokens `name` or `name^-1` (also `name^k` for any
/// nonzero integer k, expanded into |k| letters). Throws Error(ParseError) on
/// unknown names.
Word parse_word(std::string_view text, std::span<const std::string> names);
std::string format_word(std::span<const Letter> w, std::span<const std::string> names);

/// Replaces every letter g^{±1} by images[g]^{±1}.
Word substitute(std::span<const Letter> w, std::span<const Word> images);

}  // namespace sok
