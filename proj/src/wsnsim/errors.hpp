#ifndef WSNSIM_ERRORS_HPP
#define WSNSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wsnsim {

enum class ErrorCode {
  TopologyDisconnected,
  NoPathFound,
  FieldOutOfRange,
  TruncatedHeader,
  InvalidPriority,
  ZeroSchedulingRate,
  InstanceTooLarge,
  AlphaOutOfRange,
  NotAdjacent,
  UnknownKey,
  InvalidValue,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TopologyDisconnected: return "TopologyDisconnected";
    case ErrorCode::NoPathFound: return "NoPathFound";
    case ErrorCode::FieldOutOfRange: return "FieldOutOfRange";
    case ErrorCode::TruncatedHeader: return "TruncatedHeader";
    case ErrorCode::InvalidPriority: return "InvalidPriority";
    case ErrorCode::ZeroSchedulingRate: return "ZeroSchedulingRate";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace wsnsim

#endif  // WSNSIM_ERRORS_HPP
