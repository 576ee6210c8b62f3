#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace derange {

// Exact nonnegative counts (n!, derangement numbers, Stirling numbers, ...).
// Signed intermediates are allowed in alternating sums; final results are
// asserted nonnegative at the call sites that require it.
using BigCount = mpz_class;

BigCount factorial(std::uint32_t n);
BigCount binomial(std::uint32_t n, std::uint32_t k);

// Product (n-1)(n-3)...: 1 for n <= 1.
BigCount double_factorial_odd(std::uint32_t n);

// num/den as a double for 0 <= num <= den, den > 0, via integer division
// carrying 64 fraction bits before rounding. Never converts num or den to
// floating point directly, so it stays exact-to-rounding even when the
// operands have thousands of digits.
double ratio_to_double(const BigCount& num, const BigCount& den);

std::string to_decimal(const BigCount& v);

}  // namespace derange
