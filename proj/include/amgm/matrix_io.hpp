#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "amgm/matrix.hpp"

namespace amgm {

/// 17 significant digits with a '.' decimal point and no locale dependence.
/// Round-trips every finite double.
std::string format_double(double v);

/// Locale-independent parse of a full token; throws DomainError on junk.
double parse_double(std::string_view token);

/// Text format: a line holding d, then d lines of d values separated by single spaces.
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

std::string matrix_to_string(const Matrix& m);
Matrix matrix_from_string(const std::string& text);

/// A line holding the member count, followed by each member in matrix text format.
void write_family(std::ostream& os, const std::vector<Matrix>& members);
std::vector<Matrix> read_family(std::istream& is);

}  // namespace amgm
