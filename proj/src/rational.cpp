#include "sobolev/rational.hpp"

#include <cctype>

namespace sobolev {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

[[noreturn]] void bad(const std::string& text) {
  throw std::invalid_argument("not a rational literal: '" + text + "'");
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) bad(text);

  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    pos = 1;
  }
  std::string body = s.substr(pos);
  if (body.empty()) bad(text);

  // num/den form: both sides plain unsigned integers.
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rat q(n, d);
    q.canonicalize();
    return negative ? Rat(-q) : q;
  }

  // Decimal form: digits[.digits][e|E[+|-]digits], at least one digit overall.
  std::string mantissa;
  long frac_digits = 0;
  long exponent = 0;
  std::size_t i = 0;
  while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
    mantissa.push_back(body[i++]);
  }
  if (i < body.size() && body[i] == '.') {
    ++i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      mantissa.push_back(body[i++]);
      ++frac_digits;
    }
  }
  if (mantissa.empty()) bad(text);
  if (i < body.size() && (body[i] == 'e' || body[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
      exp_neg = (body[i] == '-');
      ++i;
    }
    std::string exp_digits;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      exp_digits.push_back(body[i++]);
    }
    if (exp_digits.empty() || exp_digits.size() > 6) bad(text);
    exponent = std::stol(exp_digits);
    if (exp_neg) exponent = -exponent;
  }
  if (i != body.size()) bad(text);

  // value = mantissa * 10^(exponent - frac_digits), exactly.
  mpz_class m(mantissa);
  Rat q(m);
  long shift = exponent - frac_digits;
  if (shift != 0) {
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift > 0) {
      q *= Rat(pow10);
    } else {
      q /= Rat(pow10);
    }
  }
  q.canonicalize();
  return negative ? Rat(-q) : q;
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string ext_to_string(const ExtRat& e) {
  return e.infinite ? "inf" : rat_to_string(e.value);
}

}  // namespace sobolev
