#include "exseq/polynomial.hpp"

#include <cctype>
#include <memory>
#include <mutex>
#include <numeric>

#include "exseq/error.hpp"

namespace exseq {

namespace {

struct MonomialTable {
  std::vector<Exponent> list;
  std::map<Exponent, size_t> index;
};

void enumerate(int n, int remaining, Exponent& cur, int pos, std::vector<Exponent>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    cur[pos] = a;
    enumerate(n, remaining - a, cur, pos + 1, out);
  }
}

const MonomialTable& table(int n, int total) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, total}];
  if (!slot) {
    slot = std::make_unique<MonomialTable>();
    if (total >= 0) {
      if (n == 0) {
        if (total == 0) slot->list.push_back({});
      } else {
        Exponent cur(n, 0);
        enumerate(n, total, cur, 0, slot->list);
      }
    }
    for (size_t i = 0; i < slot->list.size(); ++i) slot->index[slot->list[i]] = i;
  }
  return *slot;
}

}  // namespace

const std::vector<Exponent>& monomials(int n, int total) { return table(n, total).list; }

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

size_t monomial_index(const Exponent& e) {
  const auto& t = table(static_cast<int>(e.size()), total_degree(e));
  return t.index.at(e);
}

Poly Poly::constant(int nvars, const mpz_class& c) {
  Poly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index, const mpz_class& c) {
  Exponent e(nvars, 0);
  e.at(index) = 1;
  return monomial(e, c);
}

Poly Poly::monomial(const Exponent& e, const mpz_class& c) {
  Poly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Poly Poly::linear_form(const std::vector<long>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Poly p(n);
  for (int j = 0; j < n; ++j) {
    if (coeffs[j] != 0) p.add_term([&] { Exponent e(n, 0); e[j] = 1; return e; }(), coeffs[j]);
  }
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) != d) return false;
  }
  return true;
}

void Poly::add_term(const Exponent& e, const mpz_class& c) {
  if (static_cast<int>(e.size()) != n_) throw Error(ErrorKind::DimensionMismatch, "exponent length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& rhs) const {
  Poly out = *this;
  if (out.n_ == 0 && out.terms_.empty()) out.n_ = rhs.n_;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly Poly::operator-(const Poly& rhs) const { return *this + (-rhs); }

Poly Poly::operator*(const Poly& rhs) const {
  Poly out(std::max(n_, rhs.n_));
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : rhs.terms_) {
      Exponent e(e1.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

Poly Poly::operator*(const mpz_class& c) const {
  Poly out(n_);
  if (sgn(c) == 0) return out;
  out.terms_ = terms_;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

Poly Poly::with_variable_inserted(int at) const {
  Poly out(n_ + 1);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f.insert(f.begin() + at, 0);
    out.add_term(f, c);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += it->second.get_str();
    for (size_t j = 0; j < it->first.size(); ++j) {
      int a = it->first[j];
      if (a == 0) continue;
      s += "*t" + std::to_string(j + 1);
      if (a > 1) s += "^" + std::to_string(a);
    }
  }
  return s;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, int n) : s_(text), n_(n) {}

  Poly parse() {
    Poly out(n_);
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool negate = false;
    for (;;) {
      skip_ws();
      while (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        if (s_[pos_] == '-') negate = !negate;
        ++pos_;
        skip_ws();
      }
      Poly term = parse_term();
      out = out + (negate ? -term : term);
      negate = false;
      skip_ws();
      if (pos_ == s_.size()) break;
      if (s_[pos_] == '+') {
        ++pos_;
      } else if (s_[pos_] == '-') {
        // sign handled at the top of the loop
      } else {
        fail("unexpected character");
      }
    }
    return out;
  }

 private:
  Poly parse_term() {
    mpz_class coef = 1;
    Exponent e(n_, 0);
    bool any = false;
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        coef *= mpz_class(read_digits());
        any = true;
      } else if (pos_ < s_.size() && s_[pos_] == 't') {
        ++pos_;
        int var = std::stoi(read_digits());
        if (var < 1 || var > n_) fail("variable index out of range");
        int power = 1;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip_ws();
          power = std::stoi(read_digits());
        }
        e[var - 1] += power;
        any = true;
      } else {
        fail("expected coefficient or variable");
      }
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return Poly::monomial(e, coef);
  }

  std::string read_digits() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  int n_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, int nvars) { return PolyParser(text, nvars).parse(); }

}  // namespace exseq
