#ifndef MA2D3_SCHEDULE_HPP
#define MA2D3_SCHEDULE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace ma2d3 {

// Fibonacci numbers with F0 = F1 = 1. Guarded against 64-bit overflow.
int64_t fibonacci(int k);

// Exact rational on 128-bit integers; large enough for every exponent
// comparison in the frequency analysis (products stay far below 2^127).
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(__int128 n, __int128 d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num, den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  long long as_int64() const;
  std::string str() const;
};

// Exponent of the form p + q*N/2 with N a symbolic integer; becomes an exact
// rational once N is substituted.
struct HalfInt {
  long long p = 0;
  long long q = 0;

  HalfInt() = default;
  HalfInt(long long p_, long long q_) : p(p_), q(q_) {}
  Rational value(int N) const { return Rational(p) + Rational(q) * Rational(N, 2); }
  HalfInt operator+(const HalfInt& o) const { return {p + o.p, q + o.q}; }
  HalfInt operator-(const HalfInt& o) const { return {p - o.p, q - o.q}; }
  HalfInt operator*(long long s) const { return {p * s, q * s}; }
  bool operator==(const HalfInt& o) const = default;
  std::string str() const;
};

struct ScheduleEntry {
  HalfInt lam;  // exponent of lambda_k over mu0, base sigma
  HalfInt mu;
};

// Frequencies lambda_k = mu0 * sigma^e. Entries are for k = 1..K; index 0 of
// the accessors returns mu_0 (exponent zero).
struct FrequencySchedule {
  double mu0 = 1.0;
  double sigma = 2.0;
  int N = 0, K = 0;
  std::vector<ScheduleEntry> entries;

  HalfInt lambda_exp(int k) const;
  HalfInt mu_exp(int k) const;
  double lambda_value(int k) const;
  double mu_value(int k) const;
  double max_frequency() const { return mu_value(K); }
};

FrequencySchedule make_schedule(double mu0, double sigma, int N, int K);

struct Condition {
  std::string name;
  int k = 0;
  bool exact = false;      // margin carried exactly in log_sigma units
  bool equality_expected = false;  // Fibonacci schedules satisfy it with margin 0
  Rational margin_exact;   // valid when exact
  double margin_log = 0;   // log_sigma margin (real conditions)
  bool pass = false;
};

struct ConditionReport {
  std::vector<Condition> conditions;
  bool pass = false;
  double min_sigma0 = 0;  // largest sigma0 for which the gamma conditions hold
};

// Every inequality of the frequency-progression conditions, by exact exponent
// comparison. mu0 and sigma0 enter the gamma conditions as log_sigma offsets
// with tolerance 1e-12.
ConditionReport verify_conditions(const FrequencySchedule& s, double gamma, double sigma0);

struct ExponentSummary {
  int N = 0, K = 0;
  Rational r;             // blow-up/decay quotient r_{K,N}
  Rational alpha;         // 1/(1+2r)
  Rational gamma_max;     // 2/((F_{K+2}-3)(2+N))
  Rational lambda_exponent;  // exponent of Lambda = prod mu_k lambda_k^N
  long long decay_exponent = 0;      // 2(F_K-1)N
  Rational growth_exponent;          // (F_{K+1}-2)+(F_{K+1}-1)N/2
};

ExponentSummary exponent_summary(int N, int K);

// alpha in the N->infinity then K->infinity limits: (F_{K+1}-1)/(4(F_K-1))
// and the golden-ratio limit 1 - 1/sqrt(5).
Rational r_limit_in_n(int K);

}  // namespace ma2d3

#endif
