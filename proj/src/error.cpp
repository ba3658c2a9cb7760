#include "sofic/error.hpp"

namespace sofic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::SymbolNotInAlphabet: return "SymbolNotInAlphabet";
    case ErrorCode::FreshSymbolCollision: return "FreshSymbolCollision";
    case ErrorCode::NotInLanguage: return "NotInLanguage";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::UnknownVertexId: return "UnknownVertexId";
    case ErrorCode::NotSft: return "NotSft";
    case ErrorCode::NotWellDefined: return "NotWellDefined";
    case ErrorCode::UniversalPointMissing: return "UniversalPointMissing";
    case ErrorCode::NotModular: return "NotModular";
    case ErrorCode::AlphabetsOverlap: return "AlphabetsOverlap";
    case ErrorCode::MissingWeight: return "MissingWeight";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotNonnegative: return "NotNonnegative";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NoClosedForm: return "NoClosedForm";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code),
      detail_(detail) {}

}  // namespace sofic
