#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hykg {

enum class Engine { Eq45Verbatim, ImplicitLambda, MechanicalNU, Oracle };

inline constexpr Engine kAllEngines[] = {Engine::Eq45Verbatim, Engine::ImplicitLambda,
                                         Engine::MechanicalNU, Engine::Oracle};

constexpr std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Eq45Verbatim: return "Eq45Verbatim";
    case Engine::ImplicitLambda: return "ImplicitLambda";
    case Engine::MechanicalNU: return "MechanicalNU";
    case Engine::Oracle: return "Oracle";
  }
  return "?";
}

inline std::optional<Engine> engine_from_string(std::string_view s) {
  for (Engine e : kAllEngines) {
    if (s == to_string(e)) return e;
  }
  if (s == "eq45") return Engine::Eq45Verbatim;
  if (s == "implicit") return Engine::ImplicitLambda;
  if (s == "mechanical") return Engine::MechanicalNU;
  if (s == "oracle") return Engine::Oracle;
  return std::nullopt;
}

enum class LevelFlag : std::uint32_t {
  Eps2Negative = 1u << 0,
  BranchGap = 1u << 1,
  NoRoot = 1u << 2,
  DuplicateMerged = 1u << 3,
  NegativeUnderSqrt = 1u << 4,
  OrderViolation = 1u << 5,
  NodeMismatch = 1u << 6,
};

inline constexpr LevelFlag kAllLevelFlags[] = {
    LevelFlag::Eps2Negative,      LevelFlag::BranchGap,      LevelFlag::NoRoot,
    LevelFlag::DuplicateMerged,   LevelFlag::NegativeUnderSqrt, LevelFlag::OrderViolation,
    LevelFlag::NodeMismatch};

constexpr std::string_view to_string(LevelFlag f) {
  switch (f) {
    case LevelFlag::Eps2Negative: return "Eps2Negative";
    case LevelFlag::BranchGap: return "BranchGap";
    case LevelFlag::NoRoot: return "NoRoot";
    case LevelFlag::DuplicateMerged: return "DuplicateMerged";
    case LevelFlag::NegativeUnderSqrt: return "NegativeUnderSqrt";
    case LevelFlag::OrderViolation: return "OrderViolation";
    case LevelFlag::NodeMismatch: return "NodeMismatch";
  }
  return "?";
}

/// Small bit set of LevelFlag values.
class Flags {
 public:
  constexpr Flags() = default;
  constexpr void set(LevelFlag f) { bits_ |= static_cast<std::uint32_t>(f); }
  constexpr bool has(LevelFlag f) const { return (bits_ & static_cast<std::uint32_t>(f)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr void merge(Flags o) { bits_ |= o.bits_; }
  constexpr std::uint32_t bits() const { return bits_; }
  friend constexpr bool operator==(Flags, Flags) = default;

  /// Names joined by '|', in declaration order.
  std::string str() const {
    std::string s;
    for (LevelFlag f : kAllLevelFlags) {
      if (has(f)) {
        if (!s.empty()) s += '|';
        s += to_string(f);
      }
    }
    return s;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> v;
    for (LevelFlag f : kAllLevelFlags) {
      if (has(f)) v.emplace_back(to_string(f));
    }
    return v;
  }

 private:
  std::uint32_t bits_ = 0;
};

struct EnergyLevel {
  int n = 0;
  double E = 0.0;
  double Ebar = 0.0;  // E^2 - M^2
  Engine engine = Engine::Oracle;
  double residual = 0.0;
  Flags flags;
  int branch_sign = 0;  // +1/-1 for the closed-form sign that produced the root, 0 otherwise
};

/// Everything an engine reports for one radial quantum number.
struct LevelSearch {
  std::vector<EnergyLevel> levels;  // sorted by E
  Flags flags;                      // NoRoot / BranchGap / NegativeUnderSqrt for the search itself
};

}  // namespace hykg
