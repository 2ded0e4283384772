#include "sok/group/word.hpp"

#include "sok/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace sok {

Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().generator == l.generator &&
        out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

bool is_freely_reduced(std::span<const Letter> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i].generator == w[i - 1].generator && w[i].sign == -w[i - 1].sign) {
      return false;
    }
  }
  return true;
}

Word inverse(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(std::span<const Letter> w, int exponent) {
  Word base = exponent < 0 ? inverse(w) : Word(w.begin(), w.end());
  Word out;
  for (int i = 0; i < std::abs(exponent); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

std::vector<std::int64_t> exponent_vector(std::span<const Letter> w,
                                          std::size_t generator_count) {
  std::vector<std::int64_t> v(generator_count, 0);
  for (const auto& l : w) v.at(l.generator) += l.sign;
  return v;
}

Word parse_word(std::string_view text, std::span<const std::string> names) {
  Word out;
  std::istringstream is{std::string(text)};
  std::string token;
  while (is >> token) {
    std::string name = token;
    long exponent = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      std::string_view ex = std::string_view(token).substr(caret + 1);
      auto [ptr, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), exponent);
      if (ec != std::errc() || ptr != ex.data() + ex.size() || exponent == 0) {
        throw Error(ErrorCode::ParseError, "bad exponent in token '" + token + "'");
      }
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      throw Error(ErrorCode::ParseError, "unknown generator '" + name + "'");
    }
    Letter l{static_cast<std::uint32_t>(it - names.begin()),
             static_cast<std::int8_t>(exponent > 0 ? 1 : -1)};
    for (long i = 0; i < std::abs(exponent); ++i) out.push_back(l);
  }
  return out;
}

std::string format_word(std::span<const Letter> w, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += names[w[i].generator];
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

Word substitute(std::span<const Letter> w, std::span<const Word> images) {
  Word out;
  for (const auto& l : w) {
    const Word& img = images[l.generator];
    if (l.sign > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      Word inv = inverse(img);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return out;
}

}  // namespace sok
