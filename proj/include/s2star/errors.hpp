#pragma once

#include <stdexcept>
#include <string>

namespace s2star {

/// Typed mathematical failure. Every throwing operation documents which
/// code it uses; the CLI maps these to exit code 1.
class MathError : public std::runtime_error {
public:
  enum class Code {
    DivisionByZero,
    EvalAtPole,
    NotRegularAtZero,
    NotInCartanPart,
    NotInNilpotentPart,
    SingularBlock,
    NotNilpotent,
    NotTraceFree,
    NotInvariant,
    NoPreimageWithinBound,
    NoPreimageWithinDegree,
    HbarAtPole,
    NoOrientationValid,
    BothOrientationsValid,
    ChartConversionFailed,
    DiscTouchesNaturals,
    NotConstant,
    Inconclusive,
    InvalidArgument,
  };

  MathError(Code code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  Code code() const { return code_; }

  const char *code_name() const {
    switch (code_) {
    case Code::DivisionByZero: return "DivisionByZero";
    case Code::EvalAtPole: return "EvalAtPole";
    case Code::NotRegularAtZero: return "NotRegularAtZero";
    case Code::NotInCartanPart: return "NotInCartanPart";
    case Code::NotInNilpotentPart: return "NotInNilpotentPart";
    case Code::SingularBlock: return "SingularBlock";
    case Code::NotNilpotent: return "NotNilpotent";
    case Code::NotTraceFree: return "NotTraceFree";
    case Code::NotInvariant: return "NotInvariant";
    case Code::NoPreimageWithinBound: return "NoPreimageWithinBound";
    case Code::NoPreimageWithinDegree: return "NoPreimageWithinDegree";
    case Code::HbarAtPole: return "HbarAtPole";
    case Code::NoOrientationValid: return "NoOrientationValid";
    case Code::BothOrientationsValid: return "BothOrientationsValid";
    case Code::ChartConversionFailed: return "ChartConversionFailed";
    case Code::DiscTouchesNaturals: return "DiscTouchesNaturals";
    case Code::NotConstant: return "NotConstant";
    case Code::Inconclusive: return "Inconclusive";
    case Code::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
  }

private:
  Code code_;
};

/// Parse failure with byte position and the tokens that would have been
/// accepted there. CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t position, std::string expected, const std::string &what)
      : std::runtime_error(what), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string &expected() const { return expected_; }

private:
  std::size_t position_;
  std::string expected_;
};

} // namespace s2star
