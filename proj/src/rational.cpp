#include "reliamis/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace reliamis {

namespace {

BigInt pow10(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rat> parse_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) return std::nullopt;

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
      neg = num[0] == '-';
      num = num.substr(1);
    }
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt n(num), d(den);
    if (d == 0) return std::nullopt;
    Rat r(n, d);
    if (neg) r = -r;
    return r;
  }

  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string int_part, frac_part, exp_part;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
    int_part += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      frac_part += s[i++];
  }
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::string e;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) e += s[i++];
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      e += s[i++];
    if (e.empty() || (e.size() == 1 && !std::isdigit(static_cast<unsigned char>(e[0]))))
      return std::nullopt;
    exp10 = std::strtol(e.c_str(), nullptr, 10);
    exp_part = e;
  }
  if (i != s.size()) return std::nullopt;
  if (int_part.empty() && frac_part.empty()) return std::nullopt;

  BigInt digits(int_part.empty() ? std::string("0") : int_part);
  digits = digits * pow10(static_cast<unsigned>(frac_part.size()));
  if (!frac_part.empty()) digits += BigInt(frac_part);

  Rat r(digits, pow10(static_cast<unsigned>(frac_part.size())));
  if (exp10 > 0)
    r *= Rat(pow10(static_cast<unsigned>(exp10)), 1);
  else if (exp10 < 0)
    r /= Rat(pow10(static_cast<unsigned>(-exp10)), 1);
  if (neg) r = -r;
  return r;
}

bool has_finite_decimal(const Rat& r) {
  BigInt d = denominator(r);
  if (d < 0) d = -d;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

std::string render_exact(const Rat& r) {
  if (!has_finite_decimal(r)) {
    return numerator(r).str() + "/" + denominator(r).str();
  }
  // Scale to an integer over a power of ten, then place the point.
  BigInt d = denominator(r);
  unsigned twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  unsigned places = twos > fives ? twos : fives;
  BigInt scaled = numerator(r) * pow10(places) / denominator(r);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = scaled.str();
  std::string out;
  if (places == 0) {
    out = digits;
  } else {
    while (digits.size() <= places) digits.insert(digits.begin(), '0');
    out = digits.substr(0, digits.size() - places) + "." +
          digits.substr(digits.size() - places);
    while (!out.empty() && out.back() == '0') out.pop_back();
    if (!out.empty() && out.back() == '.') out.pop_back();
  }
  if (out.empty()) out = "0";
  return neg && out != "0" ? "-" + out : out;
}

std::string render_decimal(const Rat& r, unsigned places) {
  bool neg = r < 0;
  Rat a = neg ? Rat(-r) : r;
  BigInt scale = pow10(places);
  Rat scaled = a * Rat(scale, 1);
  BigInt n = numerator(scaled) / denominator(scaled);  // floor for nonnegative
  Rat frac = scaled - Rat(n, 1);
  if (frac > Rat(1, 2)) {
    n += 1;
  } else if (frac == Rat(1, 2)) {
    if (n % 2 != 0) n += 1;  // ties to even
  }
  std::string digits = n.str();
  while (digits.size() <= places) digits.insert(digits.begin(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0) {
    std::string tail = digits.substr(digits.size() - places);
    while (!tail.empty() && tail.back() == '0') tail.pop_back();
    if (!tail.empty()) out += "." + tail;
  }
  if (out.empty()) out = "0";
  return neg && out != "0" ? "-" + out : out;
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace reliamis
