#pragma once

#include <string_view>

#include "pcurv/poly.hpp"

namespace pcurv {

/// Parse polynomial text over `ring`.
///
///     expr   := ['-'] term (('+'|'-') term)*
///     term   := factor ('*' factor)*
///     factor := INT | VAR | VAR '^' UINT | '(' expr ')' ['^' UINT]
///
/// Integer literals are reduced mod p. Whitespace is ignored. Throws
/// ParseError (with the byte offset) on malformed text or unknown names.
Poly parse_poly(std::string_view src, const RingPtr& ring);

}  // namespace pcurv
