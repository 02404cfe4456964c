#pragma once

// JSON interchange for codes and transitivity certificates.
//
// A code file stores (q, form, member coordinates) only — never vertex
// indices — so it is independent of any model ordering: parsing rebuilds the
// canonical model from (q, gram) and resolves each member by its coordinates.
// Every field element is written as its little-endian coordinate array over
// the prime field; serialisation is canonical (normalised representatives,
// sorted members, sorted keys), so write-parse-write is byte-identical.
// All files carry "format": 1.

#include <string>

#include "gq/codegraph.hpp"
#include "gq/groupaction.hpp"

namespace gq {

// indent >= 0 pretty-prints with that many spaces; indent < 0 is compact
// single-line output (used when streaming one code per line).
std::string code_to_json(const Code& code, int indent = 2);

// Accepts any representatives of the member subspaces (scaling, basis
// choice); throws Error with a location for malformed text and a description
// for structurally invalid content (unknown format, bad field size, a line
// that is not totally isotropic, duplicate members, no members).
Code code_from_json(const std::string& text);

// Certificate files store the generator list either as (matrix, frob) pairs
// or as explicit vertex permutations (needed for dualities), plus the claimed
// cell sizes, orbit counts, level and verdict.
std::string certificate_to_json(const NTCertificate& cert, int indent = 2);

// Rebinds a parsed certificate to the given code's graph (matrix generators
// are induced, permutation generators are checked against the graph).  The
// claimed numbers are restored as stored; replay_certificate re-verifies.
NTCertificate certificate_from_json(const std::string& text, const Code& code);

} // namespace gq
