#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hykg {

enum class Errc {
  InvalidArgument,
  DegenerateParams,
  OutOfRange,
  SingularPotential,
  NoRealK,
  DegenerateSigma,
  ImperfectSquare,
  NoValidBranch,
  NotRepresentable,
  DegenerateAC,
  DomainError,
  ComplexRoots,
  TailNotConverged,
  NoRoot,
  ConfigError,
  IoError,
  LevelMissing,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DegenerateParams: return "DegenerateParams";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::SingularPotential: return "SingularPotential";
    case Errc::NoRealK: return "NoRealK";
    case Errc::DegenerateSigma: return "DegenerateSigma";
    case Errc::ImperfectSquare: return "ImperfectSquare";
    case Errc::NoValidBranch: return "NoValidBranch";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::DegenerateAC: return "DegenerateAC";
    case Errc::DomainError: return "DomainError";
    case Errc::ComplexRoots: return "ComplexRoots";
    case Errc::TailNotConverged: return "TailNotConverged";
    case Errc::NoRoot: return "NoRoot";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
    case Errc::LevelMissing: return "LevelMissing";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hykg
