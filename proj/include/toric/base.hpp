#pragma once

// Exact arithmetic substrate and shared error type. Everything downstream
// computes over arbitrary-precision integers and reduced rationals; there is
// no floating point anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  ZeroVector,
  NotPointed,
  NotAFace,
  NonPrimitiveRay,
  DuplicateRay,
  UnknownCone,
  OutsideSupport,
  NotRCartier,
  NotLogCanonical,
  SupportMismatch,
  BadWall,
  NotDContraction,
  NotApplicable,
  ParseError,
  Unsupported,
  BadArgument,
};

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& what) { throw Error(c, what); }

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::NotAFace: return "NotAFace";
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::DuplicateRay: return "DuplicateRay";
    case ErrorCode::UnknownCone: return "UnknownCone";
    case ErrorCode::OutsideSupport: return "OutsideSupport";
    case ErrorCode::NotRCartier: return "NotRCartier";
    case ErrorCode::NotLogCanonical: return "NotLogCanonical";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::BadWall: return "BadWall";
    case ErrorCode::NotDContraction: return "NotDContraction";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

// Reduced rational with positive denominator from an integer pair.
inline Rational make_rational(Integer num, Integer den) {
  if (den == 0) fail(ErrorCode::BadArgument, "rational with zero denominator");
  if (den < 0) { num = -num; den = -den; }
  return Rational(num) / Rational(den);
}

inline Integer rational_floor(const Rational& r) {
  Integer num = numerator(r), den = denominator(r);
  Integer q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

inline Integer rational_ceil(const Rational& r) {
  Integer num = numerator(r), den = denominator(r);
  Integer q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

// Canonical "p/q" form, q > 0 and gcd(p, q) = 1; integers render as "p/1".
inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    return make_rational(num, den);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad rational literal: " + s);
  }
}

// FNV-1a, used for stable instance fingerprints across runs and platforms.
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string fnv1a_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace toric
