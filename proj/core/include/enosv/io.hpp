#ifndef ENOSV_IO_HPP_
#define ENOSV_IO_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "enosv/euler.hpp"

namespace enosv {

/// One row of a solution profile: a control volume and its averages.
struct ProfileRow {
  double x_left = 0.0;
  double x_right = 0.0;
  ConservedState u;
};

/// Shortest round-trip-safe text: 17 significant digits.
std::string format_double(double v);

inline constexpr const char* kProfileHeader =
    "index,x_left,x_right,rho,momentum,energy,density,velocity,pressure";

/// Header plus one line per row. Primitive columns are derived with `gamma`.
void write_profile_csv(std::ostream& out, std::span<const ProfileRow> rows,
                       double gamma);
void write_profile_csv(const std::string& path, std::span<const ProfileRow> rows,
                       double gamma);

/// Reads the conserved columns back. Throws ConfigError on malformed input.
std::vector<ProfileRow> read_profile_csv(std::istream& in);
std::vector<ProfileRow> read_profile_csv(const std::string& path);

}  // namespace enosv

#endif  // ENOSV_IO_HPP_
