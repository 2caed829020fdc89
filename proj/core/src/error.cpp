#include "clf/error.hpp"

namespace clf {

ParseError::ParseError(const std::string& what, std::size_t line)
    : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace clf
