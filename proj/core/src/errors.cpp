#include "amalgamkit/errors.hpp"

namespace amk {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonSquare: return "NonSquare";
    case Errc::Singular: return "Singular";
    case Errc::OrderExceedsBound: return "OrderExceedsBound";
    case Errc::NotFixedPointFree: return "NotFixedPointFree";
    case Errc::WrongOrder: return "WrongOrder";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NotScalarizable: return "NotScalarizable";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::EmptyWord: return "EmptyWord";
    case Errc::UnboundName: return "UnboundName";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::UndefinedReference: return "UndefinedReference";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::NotClosed: return "NotClosed";
    case Errc::BadCycleType: return "BadCycleType";
    case Errc::NotInvolution: return "NotInvolution";
    case Errc::BadHeader: return "BadHeader";
    case Errc::EntryOutOfRange: return "EntryOutOfRange";
    case Errc::TruncatedPayload: return "TruncatedPayload";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::DigestMismatch: return "DigestMismatch";
    case Errc::OfflineCacheMiss: return "OfflineCacheMiss";
    case Errc::TransportError: return "TransportError";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::EvenOrder: return "EvenOrder";
    case Errc::EnablerFails: return "EnablerFails";
    case Errc::VerificationFails: return "VerificationFails";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

Error::Error(Errc c, const std::string& msg)
    : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c) {}

void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace amk
