#include "pisot/rational.hpp"

#include <cctype>

#include "pisot/errors.hpp"

namespace pisot {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::InternalError: return "InternalError";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::DependentUnits: return "DependentUnits";
    case ErrorCode::BadTorsion: return "BadTorsion";
    case ErrorCode::WrongRank: return "WrongRank";
    case ErrorCode::RankZero: return "RankZero";
    case ErrorCode::CertificateMismatch: return "CertificateMismatch";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::UnboundedRegion: return "UnboundedRegion";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NoFallbackProvided: return "NoFallbackProvided";
    case ErrorCode::PrecisionCeiling: return "PrecisionCeiling";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) {
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
  }
  Integer z;
  z.set_str(std::string(s.front() == '+' ? s.substr(1) : s), 10);
  return z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(parse_integer(text, text));
  } else {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
      throw Error(ErrorCode::ParseError, "signed denominator in '" + std::string(text) + "'");
    }
    Integer den = parse_integer(den_text, text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    q = Rational(num, den);
    q.canonicalize();
  }
  return q;
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

long bit_size(const Rational& q) {
  if (q == 0) return 0;
  auto num = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  auto den = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  return num > den ? num : den;
}

}  // namespace pisot
