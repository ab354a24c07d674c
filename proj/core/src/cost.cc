// Copyright 2026 The galloc Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "galloc/cost.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "galloc/errors.h"

namespace galloc {
namespace {

constexpr int kMaxScale = 18;

std::int64_t CheckedMul(std::int64_t a, std::int64_t b) {
  std::int64_t result;
  if (__builtin_mul_overflow(a, b, &result)) {
    throw Error("cost arithmetic overflow");
  }
  return result;
}

std::int64_t CheckedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t result;
  if (__builtin_add_overflow(a, b, &result)) {
    throw Error("cost arithmetic overflow");
  }
  return result;
}

std::int64_t Pow10(int n) {
  std::int64_t result = 1;
  for (int i = 0; i < n; ++i) result = CheckedMul(result, 10);
  return result;
}

// Drops trailing zeros of the fraction.
Decimal Normalize(Decimal d) {
  while (d.scale > 0 && d.mantissa % 10 == 0) {
    d.mantissa /= 10;
    --d.scale;
  }
  return d;
}

}  // namespace

Decimal Decimal::Parse(std::string_view text) {
  const std::string original(text);
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  int scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw Error("malformed number " + original);
  int exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, exponent);
    if (ec != std::errc() || ptr != end) {
      throw Error("malformed number " + original);
    }
    pos = text.size();
  }
  if (pos != text.size()) throw Error("malformed number " + original);
  // Strip leading zeros so long zero-padded inputs do not overflow.
  const size_t first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  scale -= exponent;
  while (scale < 0) {
    digits.push_back('0');
    ++scale;
  }
  std::int64_t mantissa = 0;
  for (char ch : digits) {
    mantissa = CheckedAdd(CheckedMul(mantissa, 10), ch - '0');
  }
  Decimal d{negative ? -mantissa : mantissa, scale};
  d = Normalize(d);
  if (d.scale > kMaxScale) throw Error("too many decimals in " + original);
  return d;
}

Decimal Decimal::FromDouble(double value) {
  if (!std::isfinite(value)) throw Error("cost must be finite");
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error("cannot format cost");
  return Parse(std::string_view(buffer, ptr - buffer));
}

std::int64_t Decimal::ScaledTo(int target_scale) const {
  if (target_scale < scale) throw Error("cannot reduce decimal scale");
  return CheckedMul(mantissa, Pow10(target_scale - scale));
}

std::string Decimal::ToString() const {
  const Decimal d = Normalize(*this);
  std::string digits = std::to_string(d.mantissa < 0 ? -d.mantissa : d.mantissa);
  if (d.scale > 0) {
    if (static_cast<int>(digits.size()) <= d.scale) {
      digits.insert(0, d.scale - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - d.scale, ".");
  }
  return (d.mantissa < 0 ? "-" : "") + digits;
}

bool Decimal::operator==(const Decimal& other) const {
  const Decimal a = Normalize(*this);
  const Decimal b = Normalize(other);
  return a.mantissa == b.mantissa && a.scale == b.scale;
}

int CostVector::common_scale() const {
  int scale = 0;
  for (const Decimal& d : costs) scale = std::max(scale, d.scale);
  return scale;
}

std::vector<std::int64_t> CostVector::Scaled() const {
  const int scale = common_scale();
  std::vector<std::int64_t> result;
  result.reserve(costs.size());
  for (const Decimal& d : costs) result.push_back(d.ScaledTo(scale));
  return result;
}

Decimal TotalCost(const CostVector& costs, const Assignment& x) {
  const std::vector<std::int64_t> scaled = costs.Scaled();
  std::int64_t total = 0;
  for (EdgeIndex e = 0; e < x.size(); ++e) {
    total = CheckedAdd(total, CheckedMul(scaled[e], x[e]));
  }
  return Normalize({total, costs.common_scale()});
}

}  // namespace galloc
