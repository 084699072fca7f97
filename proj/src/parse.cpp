#include "padic_tate/parse.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "padic_tate/errors.hpp"

namespace padic_tate {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Field& field, long prec)
      : text_(text), field_(field), prec_(prec) {}

  Element parse() {
    skip_ws();
    Element acc = Element::zero(field_, prec_);
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = get() == '-';
    }
    acc = term(negate);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      acc = acc + term(op == '-');
    }
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError,
                msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return at_end() ? '\0' : text_[pos_++]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool lookahead_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t after = pos_ + w.size();
    return after >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[after]));
  }

  mpz_class integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  long exponent() {
    skip_ws();
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = get() == '-';
    const mpz_class v = integer();
    if (!v.fits_slong_p()) fail("exponent out of range");
    return neg ? -v.get_si() : v.get_si();
  }

  // Optional "^" exponent, defaulting to 1.
  long optional_power() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    return exponent();
  }

  // Reads an atom into (coefficient *= int^int) or (pi/t powers).
  void atom(mpq_class& coeff, long& pi_power, long& t_power) {
    if (lookahead_word("pi")) {
      pos_ += 2;
      pi_power += optional_power();
      return;
    }
    if (lookahead_word("t")) {
      pos_ += 1;
      if (field_->ramified_layout()) fail("'t' is only defined for unramified extensions");
      t_power += optional_power();
      return;
    }
    const mpz_class base = integer();
    skip_ws();
    if (get() != '^') fail("expected '^' in integer power");
    const long k = exponent();
    if (base == 0 && k <= 0) fail("zero to a non-positive power");
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    if (k < 0) {
      coeff /= mpq_class(pw);
    } else {
      coeff *= mpq_class(pw);
    }
  }

  Element term(bool negate) {
    skip_ws();
    mpq_class coeff = 1;
    long pi_power = 0;
    long t_power = 0;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      // rational, or the base of an int^int atom
      const std::size_t save = pos_;
      const mpz_class num = integer();
      skip_ws();
      if (peek() == '^') {
        pos_ = save;
        atom(coeff, pi_power, t_power);
      } else {
        mpz_class den = 1;
        if (peek() == '/') {
          ++pos_;
          den = integer();
          if (den == 0) fail("zero denominator");
        }
        coeff = mpq_class(num, den);
        coeff.canonicalize();
        skip_ws();
        if (peek() == '*') {
          ++pos_;
          atom(coeff, pi_power, t_power);
        }
      }
    } else {
      atom(coeff, pi_power, t_power);
    }
    if (negate) coeff = -coeff;
    return evaluate(coeff, pi_power, t_power);
  }

  Element evaluate(const mpq_class& coeff, long pi_power, long t_power) const {
    if (coeff == 0) return Element::zero(field_, prec_);
    const auto& F = *field_;
    const long e = F.ramified_layout() ? F.e() : 1;
    mpz_class den = coeff.get_den();
    long den_v = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(F.p()))) {
      den /= F.p();
      ++den_v;
    }
    if (den_v * e > prec_) {
      throw Error(ErrorKind::DenominatorNotInvertible,
                  "denominator divisible by p^" + std::to_string(den_v) +
                      ", beyond the precision budget " + std::to_string(prec_));
    }
    // coeff * pi^k is exact at abs precision prec when coeff is built at prec - k.
    Element value = Element::from_rational(field_, coeff.get_num(), coeff.get_den(), prec_ - pi_power)
                        .mul_pi_power(pi_power);
    if (t_power != 0) {
      const long margin = prec_ + std::abs(value.shift()) + 1;
      value = (value * Element::generator(field_, margin).pow(t_power)).with_prec(prec_);
    }
    return value;
  }

  std::string_view text_;
  const Field& field_;
  long prec_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(std::string_view text, const Field& field, long prec) {
  return Parser(text, field, prec).parse();
}

}  // namespace padic_tate
