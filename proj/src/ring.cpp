#include "exseq/ring.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "exseq/error.hpp"

namespace exseq {

bool is_prime(long p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<long> prime_factors(const mpz_class& x) {
  std::vector<long> out;
  mpz_class v = abs(x);
  if (v <= 1) return out;
  for (long d = 2; mpz_class(d) * d <= v; ++d) {
    if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) {
      out.push_back(d);
      while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) v /= d;
    }
  }
  if (v > 1) {
    if (!v.fits_slong_p()) throw Error(ErrorKind::InvalidPrime, "prime factor too large: " + v.get_str());
    out.push_back(v.get_si());
  }
  return out;
}

CoefficientRing CoefficientRing::rationals() { return {RingKind::Rationals, 0, {}}; }

CoefficientRing CoefficientRing::prime_field(long p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
  return {RingKind::PrimeField, p, {}};
}

CoefficientRing CoefficientRing::integers() { return {RingKind::Integers, 0, {}}; }

CoefficientRing CoefficientRing::localized(std::vector<long> primes) {
  for (long p : primes) {
    if (!is_prime(p)) {
      throw Error(ErrorKind::InvalidLocalizationSet, std::to_string(p) + " is not prime");
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  if (primes.empty()) return integers();
  return {RingKind::IntegersLocalized, 0, std::move(primes)};
}

std::string CoefficientRing::descriptor() const {
  switch (kind_) {
    case RingKind::Rationals: return "Q";
    case RingKind::Integers: return "Z";
    case RingKind::PrimeField: return "Fp:" + std::to_string(p_);
    case RingKind::IntegersLocalized: {
      std::string s = "Z[";
      for (size_t i = 0; i < inverted_.size(); ++i) {
        if (i) s += ",";
        s += "1/" + std::to_string(inverted_[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

mpz_class CoefficientRing::reduce(const mpz_class& x) const {
  if (kind_ != RingKind::PrimeField) return x;
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p_));
  return r;
}

bool CoefficientRing::is_zero(const mpz_class& x) const {
  if (kind_ == RingKind::PrimeField) {
    return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p_)) != 0;
  }
  return sgn(x) == 0;
}

mpz_class CoefficientRing::non_unit_part(const mpz_class& x) const {
  if (is_zero(x)) return 0;
  switch (kind_) {
    case RingKind::Rationals:
    case RingKind::PrimeField: return 1;
    case RingKind::Integers: return abs(x);
    case RingKind::IntegersLocalized: {
      mpz_class v = abs(x);
      for (long p : inverted_) {
        while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) v /= p;
      }
      return v;
    }
  }
  return abs(x);
}

bool CoefficientRing::is_unit(const mpz_class& x) const { return non_unit_part(x) == 1; }

namespace {

long parse_long(std::string_view s, ErrorKind kind) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(kind, "cannot parse integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

CoefficientRing make_ring(std::string_view d) {
  if (d == "Q") return CoefficientRing::rationals();
  if (d == "Z") return CoefficientRing::integers();
  if (d.starts_with("Fp:")) return CoefficientRing::prime_field(parse_long(d.substr(3), ErrorKind::InvalidPrime));
  if (d.starts_with("Z[") && d.ends_with("]")) {
    std::string_view body = d.substr(2, d.size() - 3);
    std::vector<long> primes;
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view item = body.substr(0, comma);
      if (!item.starts_with("1/")) {
        throw Error(ErrorKind::InvalidLocalizationSet, "expected 1/p in '" + std::string(d) + "'");
      }
      primes.push_back(parse_long(item.substr(2), ErrorKind::InvalidLocalizationSet));
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    if (primes.empty()) throw Error(ErrorKind::InvalidLocalizationSet, "empty localization set");
    return CoefficientRing::localized(std::move(primes));
  }
  throw Error(ErrorKind::ParseError, "unknown ring descriptor '" + std::string(d) + "'");
}

int base_dimension(const CoefficientRing& ring) { return ring.is_field() ? 0 : 1; }

bool is_invertible(const CoefficientRing& ring, long p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
  switch (ring.kind()) {
    case RingKind::Rationals: return true;
    case RingKind::PrimeField: return p != ring.characteristic();
    case RingKind::Integers: return false;
    case RingKind::IntegersLocalized: {
      const auto& s = ring.inverted_primes();
      return std::binary_search(s.begin(), s.end(), p);
    }
  }
  return false;
}

std::string FinitelyGeneratedRModule::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << "R^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) out << " + ";
    out << "R/" << t.get_str();
    first = false;
  }
  return out.str();
}

}  // namespace exseq
