#pragma once

#include "sentimin/textprep.hpp"

namespace sentimin {

// Rule-based Indonesian affix stripper. Applies, in order: inflectional
// particles (-lah -kah -pun -tah), possessive pronouns (-nya -ku -mu),
// derivational suffixes (-kan -an -i), then derivational prefixes
// (meny- meng- peny- peng- mem- men- pem- pen- ber- ter- me- pe- di- ke- se-,
// longest first, at most two removals). Each suffix category fires at most
// once; a rule only fires if the remainder keeps at least 3 code points.
// Dictionary-free, deterministic, never lengthens and never empties a token.
Token stem(const Token& token);

} // namespace sentimin
