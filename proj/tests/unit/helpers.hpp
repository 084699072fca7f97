#pragma once

#include <doctest.h>

#include "padic_tate/element.hpp"
#include "padic_tate/errors.hpp"

namespace testing_support {

inline padic_tate::Element Z(const padic_tate::Field& F, long n, long prec) {
  return padic_tate::Element::from_integer(F, n, prec);
}

template <class Fn>
padic_tate::ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const padic_tate::Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return padic_tate::ErrorKind::InvalidArgument;
}

/// True when the known digits of x prove v(x) >= bound (in pi-units).
inline bool proves_at_least(const padic_tate::Element& x, long bound) {
  return x.is_zero() ? x.abs_prec() >= bound : x.shift() >= bound;
}

}  // namespace testing_support
