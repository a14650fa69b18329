#include "qmet/rational.hpp"

#include <cctype>

#include "qmet/error.hpp"

namespace qmet {

ExtRat parse_extrat(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "infinity") return ExtRat::infinity();
  return ExtRat(parse_rat(s));
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
      throw ParseError("bad rational literal: " + s);
  }
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw ParseError("bad rational literal: " + s);
  }
}

}  // namespace qmet
