#ifndef FPT_ERRORS_HPP
#define FPT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpt {

/// Input text failed to parse. `position` is the zero-based offset of the
/// offending character in the input.
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// An identifier in a polynomial expression is not among the declared variables.
class UnknownVariableError : public SyntaxError {
public:
  UnknownVariableError(const std::string& name, std::size_t position)
      : SyntaxError("unknown variable '" + name + "'", position), name_(name) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

/// An exponent in a polynomial expression is negative.
class NegativeExponentError : public SyntaxError {
public:
  explicit NegativeExponentError(std::size_t position)
      : SyntaxError("negative exponent", position) {}
};

/// A computation exceeded a configured size or visit budget. Budgets exist so
/// that oversized inputs fail loudly instead of returning truncated answers.
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation requiring an ideal primary to the homogeneous maximal ideal
/// was given one that is not. `variable` names a variable with no pure power
/// among the generators.
class NotMPrimaryError : public std::invalid_argument {
public:
  explicit NotMPrimaryError(const std::string& variable)
      : std::invalid_argument("ideal is not primary to the maximal ideal: no pure power of '" +
                              variable + "' among the generators"),
        variable_(variable) {}

  const std::string& variable() const noexcept { return variable_; }

private:
  std::string variable_;
};

/// Every requested Frobenius level reported the non-F-pure marker, so no
/// threshold interval exists.
class AllLevelsNotFPureError : public std::runtime_error {
public:
  AllLevelsNotFPureError() : std::runtime_error("pair is not F-pure at any computed level") {}
};

/// A proven internal invariant failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace fpt

#endif  // FPT_ERRORS_HPP
