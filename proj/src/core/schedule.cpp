#include "core/schedule.hpp"

#include <cmath>
#include <limits>

namespace ma2d3 {

int64_t fibonacci(int k) {
  require(k >= 0 && k <= 90, errc::config, "fibonacci index outside the 64-bit safe range [0,90]");
  int64_t a = 1, b = 1;  // F0, F1
  for (int i = 0; i < k; ++i) {
    int64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

}  // namespace

Rational::Rational(__int128 n, __int128 d) : num(n), den(d) {
  require(den != 0, errc::internal, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  num /= g;
  den /= g;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
Rational Rational::operator/(const Rational& o) const {
  require(o.num != 0, errc::internal, "rational division by zero");
  return Rational(num * o.den, den * o.num);
}
bool Rational::operator<(const Rational& o) const { return num * o.den < o.num * den; }

long long Rational::as_int64() const {
  require(den == 1, errc::internal, "rational is not an integer");
  return static_cast<long long>(num);
}

namespace {

std::string i128_str(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.insert(s.begin(), '-');
  return s;
}

}  // namespace

std::string Rational::str() const {
  if (den == 1) return i128_str(num);
  return i128_str(num) + "/" + i128_str(den);
}

std::string HalfInt::str() const {
  std::string s = std::to_string(p);
  if (q != 0) s += (q > 0 ? "+" : "-") + std::to_string(q > 0 ? q : -q) + "N/2";
  return s;
}

HalfInt FrequencySchedule::lambda_exp(int k) const {
  require(k >= 0 && k <= K, errc::config, "schedule index out of range");
  if (k == 0) return {0, 0};
  return entries[k - 1].lam;
}

HalfInt FrequencySchedule::mu_exp(int k) const {
  require(k >= 0 && k <= K, errc::config, "schedule index out of range");
  if (k == 0) return {0, 0};
  return entries[k - 1].mu;
}

double FrequencySchedule::lambda_value(int k) const {
  return mu0 * std::pow(sigma, lambda_exp(k).value(N).value());
}

double FrequencySchedule::mu_value(int k) const {
  return mu0 * std::pow(sigma, mu_exp(k).value(N).value());
}

FrequencySchedule make_schedule(double mu0, double sigma, int N, int K) {
  require(N >= 1, errc::config, "schedule needs N >= 1");
  require(K >= 4, errc::config, "the Fibonacci schedule needs K >= 4");
  require(sigma > 1, errc::config, "schedule needs sigma > 1");
  require(mu0 > 0, errc::config, "schedule needs mu0 > 0");
  FrequencySchedule s;
  s.mu0 = mu0;
  s.sigma = sigma;
  s.N = N;
  s.K = K;
  for (int k = 1; k <= K - 1; ++k) {
    ScheduleEntry e;
    e.lam = {fibonacci(k + 2) - 2, fibonacci(k + 2) - 3};
    e.mu = {fibonacci(k + 2) - 2, fibonacci(k + 3) - 3};
    s.entries.push_back(e);
  }
  ScheduleEntry last;
  last.lam = {2 * fibonacci(K) - 2, fibonacci(K + 2) - 3};
  last.mu = {2 * fibonacci(K) - 2, 3 * fibonacci(K) - 3};
  s.entries.push_back(last);
  return s;
}

namespace {

constexpr double kLogTol = 1e-12;  // comparison tolerance in log_sigma units

Condition exact_condition(const std::string& name, int k, HalfInt lhs, HalfInt rhs, int N,
                          bool equality_expected = false) {
  Condition c;
  c.name = name;
  c.k = k;
  c.exact = true;
  c.equality_expected = equality_expected;
  c.margin_exact = lhs.value(N) - rhs.value(N);
  c.pass = !(c.margin_exact < Rational(0));
  c.margin_log = c.margin_exact.value();
  return c;
}

}  // namespace

ConditionReport verify_conditions(const FrequencySchedule& s, double gamma, double sigma0) {
  require(gamma > 0 && gamma < 1, errc::config, "gamma must lie in (0,1)");
  require(sigma0 >= 1, errc::config, "sigma0 must be >= 1");
  ConditionReport rep;
  int N = s.N, K = s.K;
  double m0 = std::log(s.mu0) / std::log(s.sigma);   // log_sigma mu0
  double s0 = std::log(sigma0) / std::log(s.sigma);  // log_sigma sigma0

  double worst_gap = std::numeric_limits<double>::infinity();

  // lambda_{k+1}^{1-gamma} >= mu_k sigma0 for k = 0..K-1
  for (int k = 0; k <= K - 1; ++k) {
    Condition c;
    c.name = "lambda^{1-gamma} >= mu*sigma0";
    c.k = k;
    c.exact = false;
    double e_lam = s.lambda_exp(k + 1).value(N).value();
    double e_mu = s.mu_exp(k).value(N).value();
    c.margin_log = (1.0 - gamma) * (m0 + e_lam) - (m0 + e_mu) - s0;
    c.pass = c.margin_log >= -kLogTol;
    worst_gap = std::min(worst_gap, (1.0 - gamma) * (m0 + e_lam) - (m0 + e_mu));
    rep.conditions.push_back(c);
  }

  // mu_1/lambda_1 >= (lambda_1/mu_0)^N
  rep.conditions.push_back(exact_condition(
      "mu1/lambda1 >= (lambda1/mu0)^N", 1, s.mu_exp(1) - s.lambda_exp(1),
      (s.lambda_exp(1) - s.mu_exp(0)) * N, N, true));

  // middle conditions, k = 2..K-1
  for (int k = 2; k <= K - 1; ++k) {
    HalfInt lhs = s.mu_exp(k) - s.lambda_exp(k);
    HalfInt q1 = s.lambda_exp(k) - s.mu_exp(k - 1);
    HalfInt q2 = s.lambda_exp(k - 1) - s.mu_exp(k - 2);
    HalfInt q3 = s.mu_exp(k - 1) - s.lambda_exp(k - 1);
    // (q1+q2)*N/2 has exact half-integer form only for even N*(...) -- carry
    // both sides doubled to stay integral: compare 2*lhs vs (q1+q2)*N etc.
    rep.conditions.push_back(exact_condition("mu_k/lambda_k >= (quot products)^{N/2}", k,
                                             lhs * 2, (q1 + q2) * N, N, true));
    rep.conditions.push_back(exact_condition("mu_k/lambda_k >= quots^N/(mu/lambda)", k,
                                             lhs * 2, (q1 * (2 * N)) + (q2 * N) - (q3 * 2), N,
                                             true));
  }

  // final conditions at k = K
  {
    HalfInt lhs = s.mu_exp(K) - s.lambda_exp(K);
    HalfInt q1 = s.lambda_exp(K) - s.mu_exp(K - 1);
    HalfInt q2 = s.lambda_exp(K - 1) - s.mu_exp(K - 2);
    HalfInt q3 = s.mu_exp(K - 1) - s.lambda_exp(K - 1);
    rep.conditions.push_back(exact_condition("mu_K/lambda_K >= (lambda_K/mu_{K-1})^{N/2}", K,
                                             lhs * 2, q1 * N, N, true));
    rep.conditions.push_back(exact_condition("mu_K/lambda_K >= quots^N/(mu/lambda)", K,
                                             lhs * 2, (q1 * (2 * N)) + (q2 * N) - (q3 * 2), N,
                                             true));
  }

  // monotone progression mu_{k-1} <= lambda_k <= mu_k
  for (int k = 1; k <= K; ++k) {
    rep.conditions.push_back(
        exact_condition("mu_{k-1} <= lambda_k", k, s.lambda_exp(k) - s.mu_exp(k - 1), {0, 0}, N));
    rep.conditions.push_back(
        exact_condition("lambda_k <= mu_k", k, s.mu_exp(k) - s.lambda_exp(k), {0, 0}, N));
  }

  // gamma smallness: gamma <= 1/((F_{K+2}-3)(1+N/2))
  {
    Condition c;
    c.name = "gamma <= gamma_max(N,K)";
    c.k = K;
    c.exact = false;
    double gmax = 2.0 / (static_cast<double>(fibonacci(K + 2) - 3) * (2.0 + N));
    c.margin_log = gmax - gamma;
    c.pass = gamma <= gmax + kLogTol;
    rep.conditions.push_back(c);
  }

  // sigma/(mu0 sigma)^gamma >= sigma0, in log_sigma units
  {
    Condition c;
    c.name = "sigma/(mu0*sigma)^gamma >= sigma0";
    c.k = 0;
    c.exact = false;
    c.margin_log = 1.0 - gamma * (m0 + 1.0) - s0;
    c.pass = c.margin_log >= -kLogTol;
    worst_gap = std::min(worst_gap, 1.0 - gamma * (m0 + 1.0));
    rep.conditions.push_back(c);
  }

  rep.pass = true;
  for (const auto& c : rep.conditions) rep.pass = rep.pass && c.pass;
  // largest sigma0 compatible with the gamma conditions for this schedule
  rep.min_sigma0 = std::pow(s.sigma, worst_gap);
  return rep;
}

ExponentSummary exponent_summary(int N, int K) {
  require(N >= 4 && K >= 4, errc::config, "exponent summary needs N, K >= 4");
  ExponentSummary e;
  e.N = N;
  e.K = K;
  long long fk = fibonacci(K), fk1 = fibonacci(K + 1), fk2 = fibonacci(K + 2);
  // r = ((F_{K+1}-2) + (F_{K+1}-1) N/2) / (2N(F_K-1))
  Rational growth = Rational(fk1 - 2) + Rational(fk1 - 1) * Rational(N, 2);
  Rational decay = Rational(2) * Rational(fk - 1) * Rational(N);
  e.r = growth / decay;
  e.alpha = Rational(1) / (Rational(1) + Rational(2) * e.r);
  e.gamma_max = Rational(2) / (Rational(fk2 - 3) * Rational(2 + N));
  e.growth_exponent = growth;
  e.decay_exponent = decay.as_int64();

  FrequencySchedule s = make_schedule(1.0, 2.0, N, K);
  HalfInt lam_sum{0, 0}, mu_sum{0, 0};
  for (int k = 1; k <= K; ++k) {
    lam_sum = lam_sum + s.lambda_exp(k);
    mu_sum = mu_sum + s.mu_exp(k);
  }
  e.lambda_exponent = mu_sum.value(N) + Rational(N) * lam_sum.value(N);
  return e;
}

Rational r_limit_in_n(int K) {
  return Rational(fibonacci(K + 1) - 1) / (Rational(4) * Rational(fibonacci(K) - 1));
}

}  // namespace ma2d3
