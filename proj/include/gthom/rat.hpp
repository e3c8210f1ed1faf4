#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace gthom {

// Exact rational scalar used for map coordinates and slopes.
using Rat = mpq_class;

Rat rat_pow(long base, long k);  // base^k, k may be negative

bool is_integer(const Rat& q);
mpz_class floor_rat(const Rat& q);
mpz_class ceil_rat(const Rat& q);

// q lies in Z[1/n], i.e. its reduced denominator has no prime factor
// outside those of n.
bool in_z_over_n(const Rat& q, int n);

// q == n^k for some integer k; returns k.
std::optional<long> log_base_n(const Rat& q, int n);

// q is a multiplicative unit of Z[1/n] (numerator and denominator are
// products of primes dividing n).
bool is_unit_of_z_over_n(const Rat& q, int n);

std::vector<long> prime_divisors(long n);

// Decimal rendering at a fixed number of significant digits, computed with
// integer arithmetic only (deterministic; used for SVG coordinates).
std::string decimal_string(const Rat& q, int significant_digits);

}  // namespace gthom
