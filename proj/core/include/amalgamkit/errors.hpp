#pragma once

#include <stdexcept>
#include <string>

namespace amk {

// Every failure the library raises carries one of these codes so callers
// (and tests) can dispatch on the kind without parsing message text.
enum class Errc {
  ReducibleModulus,
  DegreeOutOfRange,
  DivisionByZero,
  ZeroPolynomial,
  FieldMismatch,
  ShapeMismatch,
  NonSquare,
  Singular,
  OrderExceedsBound,
  NotFixedPointFree,
  WrongOrder,
  NotInvariant,
  NotScalarizable,
  SyntaxError,
  EmptyWord,
  UnboundName,
  DuplicateName,
  UndefinedReference,
  DegreeMismatch,
  NotClosed,
  BadCycleType,
  NotInvolution,
  BadHeader,
  EntryOutOfRange,
  TruncatedPayload,
  UnsupportedField,
  DigestMismatch,
  OfflineCacheMiss,
  TransportError,
  UnknownLabel,
  EvenOrder,
  EnablerFails,
  VerificationFails,
  ZeroVector,
  BoundExceeded,
  BadConfig,
};

const char* errc_name(Errc c);

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg);
};

[[noreturn]] void fail(Errc c, const std::string& msg);

}  // namespace amk
