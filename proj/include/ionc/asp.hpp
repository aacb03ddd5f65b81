#pragma once

// ASP-Core-2 export of an instance together with the enumeration program,
// and parsing of answer sets printed by an external ASP system.

#include <string>
#include <string_view>

#include "ionc/solver.hpp"

namespace ionc {

enum class EmitMode {
  StrictListing,  // the enumeration program only
  Augmented,      // plus constraints binding input bidirected facts
};

/// The reference enumeration program, verbatim, one statement per line.
std::string_view listing_rules();

/// The two constraints appended in Augmented mode.
std::string_view augmented_rules();

std::string emit_program(const Instance& inst, EmitMode mode = EmitMode::Augmented);

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Reads `Answer: k` blocks of `edge(i,j)` atoms. UNSATISFIABLE yields an
/// empty Unsatisfiable set; an interrupted or unknown result yields TimedOut;
/// a `Models : k+` summary yields CappedAtLimit.
SolutionSet parse_answer_sets(std::string_view text, std::size_t n);

}  // namespace ionc
