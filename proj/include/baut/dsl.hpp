#pragma once

/* Line-oriented model text:
 *
 *   # full-line comment
 *   generator NAME DEGREE        declares a generator (DEGREE >= 1)
 *   d NAME = EXPR                differential (omitted means d NAME = 0)
 *   d NAME = 0                   explicit zero differential
 *   extend NAME DEGREE           declares the base generator of an extension
 *   d NAME += EXPR               perturbation; every term must contain the base
 *
 *   EXPR   := ['-'] TERM (('+'|'-') TERM)*     (leading '-' starts a rational)
 *   TERM   := [RATIONAL '*'] FACTOR ('*' FACTOR)*
 *   FACTOR := NAME ['^' INT]                   ('^' on even generators only)
 *   RATIONAL := INT | INT '/' INT              (exact)
 *
 * Products are normalized with Koszul signs; a repeated odd generator makes
 * the term vanish. */

#include <optional>
#include <string>

#include "baut/model.hpp"

namespace baut {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct ParsedModel {
  MinimalModel model;  // the fibre model; extension base not included
  std::optional<KSExtensionSpec> extension;
};

ParsedModel parse_model(const std::string& text);

/* Canonical text form: generators, extend, differentials, perturbations, all
 * in declaration order with canonically ordered terms. parse_model is a left
 * inverse: parsing the printed form reproduces the same canonical print. */
std::string print_model(const ParsedModel& pm);
std::string print_model(const MinimalModel& m);

}  // namespace baut
