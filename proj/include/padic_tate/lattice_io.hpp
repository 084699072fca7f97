#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "padic_tate/lattice.hpp"

namespace padic_tate {

/// {"rows": r, "cols": c, "entries": [[...], ...]}; entries are JSON integers
/// or decimal strings (for values beyond 64 bits).
IntMatrix matrix_from_json(std::string_view text);
std::string matrix_to_json(const IntMatrix& M);

/// {"n": n, "mult": matrix, "ell": matrix}; a missing part is the zero lattice.
SubgroupLattice lattice_from_json(std::string_view text);
std::string lattice_to_json(const SubgroupLattice& T);
/// A JSON array of lattice records.
std::vector<SubgroupLattice> lattice_list_from_json(std::string_view text);

}  // namespace padic_tate
