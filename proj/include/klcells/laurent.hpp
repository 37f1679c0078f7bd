// Exact arithmetic in Z[v,v^-1] with checked 64-bit coefficients.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace klcells {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("laurent: coefficient overflow in add");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("laurent: coefficient overflow in mul");
  return r;
}

/// Sparse Laurent polynomial over Z, canonical form: no zero coefficients,
/// terms sorted by ascending exponent.
class Laurent {
 public:
  Laurent() = default;

  static Laurent zero() { return Laurent{}; }
  static Laurent one() { return monomial(1, 0); }

  static Laurent monomial(std::int64_t coeff, int exp) {
    Laurent p;
    if (coeff != 0) p.terms_.emplace_back(exp, coeff);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  // max exponent; callers must check is_zero() first
  int degree() const { return terms_.back().first; }
  int valuation() const { return terms_.front().first; }

  std::int64_t coeff(int exp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const Term& t, int e) { return t.first < e; });
    return (it != terms_.end() && it->first == exp) ? it->second : 0;
  }

  const std::vector<std::pair<int, std::int64_t>>& terms() const { return terms_; }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  Laurent operator+(const Laurent& o) const {
    Laurent r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        std::int64_t c = checked_add(terms_[i].second, o.terms_[j].second);
        if (c != 0) r.terms_.emplace_back(terms_[i].first, c);
        ++i, ++j;
      }
    }
    return r;
  }

  Laurent operator-(const Laurent& o) const { return *this + (-o); }

  Laurent operator*(const Laurent& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::map<int, std::int64_t> acc;
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        std::int64_t& slot = acc[ea + eb];
        slot = checked_add(slot, checked_mul(ca, cb));
      }
    Laurent r;
    for (const auto& [e, c] : acc)
      if (c != 0) r.terms_.emplace_back(e, c);
    return r;
  }

  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  /// The bar involution v -> v^-1.
  Laurent bar() const {
    Laurent r;
    r.terms_.assign(terms_.rbegin(), terms_.rend());
    for (auto& t : r.terms_) t.first = -t.first;
    return r;
  }

  /// Membership in A_{<0} = v^-1 Z[v^-1].
  bool in_strictly_negative() const { return is_zero() || degree() <= -1; }

  /// Membership in A_{<=0} = Z[v^-1].
  bool in_nonpositive() const { return is_zero() || degree() <= 0; }

  /// Terms with exponent <= -1.
  Laurent neg_part() const {
    Laurent r;
    for (const auto& t : terms_)
      if (t.first <= -1) r.terms_.push_back(t);
    return r;
  }

  /// Terms with exponent >= 0.
  Laurent nonneg_part() const {
    Laurent r;
    for (const auto& t : terms_)
      if (t.first >= 0) r.terms_.push_back(t);
    return r;
  }

  /// Textual form like "3v^2 - v^-4 + 1", highest exponent first.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      auto [e, c] = *it;
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += (c < 0) ? " - " : " + ";
      }
      std::int64_t ac = c < 0 ? -c : c;
      if (ac != 1 || e == 0) s += std::to_string(ac);
      if (e != 0) {
        s += "v";
        if (e != 1) s += "^" + std::to_string(e);
      }
    }
    return s;
  }

  static Laurent parse(const std::string& text) {
    Laurent r;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
      int sign = 1;
      skip_ws();
      if (text[i] == '+' || text[i] == '-') {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
        skip_ws();
      } else if (!first) {
        throw std::invalid_argument("laurent parse: expected '+' or '-' in \"" + text + "\"");
      }
      first = false;
      std::int64_t coeff = 1;
      bool saw_digits = false;
      if (i < text.size() && std::isdigit((unsigned char)text[i])) {
        coeff = 0;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) {
          coeff = checked_add(checked_mul(coeff, 10), text[i] - '0');
          ++i;
        }
        saw_digits = true;
      }
      int exp = 0;
      if (i < text.size() && text[i] == 'v') {
        ++i;
        exp = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          int esign = 1;
          if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            if (text[i] == '-') esign = -1;
            ++i;
          }
          if (i >= text.size() || !std::isdigit((unsigned char)text[i]))
            throw std::invalid_argument("laurent parse: bad exponent in \"" + text + "\"");
          exp = 0;
          while (i < text.size() && std::isdigit((unsigned char)text[i]))
            exp = exp * 10 + (text[i++] - '0');
          exp *= esign;
        }
      } else if (!saw_digits) {
        throw std::invalid_argument("laurent parse: expected term in \"" + text + "\"");
      }
      r += monomial(sign * coeff, exp);
      skip_ws();
    }
    return r;
  }

 private:
  using Term = std::pair<int, std::int64_t>;
  std::vector<Term> terms_;
};

}  // namespace klcells
