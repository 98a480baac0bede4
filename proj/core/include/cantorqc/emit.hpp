#ifndef CANTORQC_EMIT_HPP
#define CANTORQC_EMIT_HPP

#include "cantorqc/cantor_levels.hpp"
#include "cantorqc/dilatation.hpp"
#include "cantorqc/julia.hpp"
#include "cantorqc/pants.hpp"

#include <string>

namespace cantorqc {

/// 17-significant-digit decimal, the canonical numeric interchange format.
std::string format_g17(double v);

std::string csv_levels(const CantorLevels& levels);
std::string csv_pants(const PantsDecomposition& pants);
std::string csv_ledger(const DilatationLedger& ledger);
std::string csv_census(const ExhaustionCensus& census);

/// SVG output starts with a version comment line; everything after it is
/// deterministic for identical inputs.
std::string svg_levels(const CantorLevels& levels);
std::string svg_pants(const CantorLevels& levels,
                      const PantsDecomposition& pants);

void write_text_file(const std::string& path, const std::string& content);

} // namespace cantorqc

#endif
