#include "enosv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "enosv/error.hpp"

namespace enosv {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_profile_csv(std::ostream& out, std::span<const ProfileRow> rows,
                       double gamma) {
  out << kProfileHeader << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ProfileRow& r = rows[i];
    out << i << ',' << format_double(r.x_left) << ',' << format_double(r.x_right) << ','
        << format_double(r.u.rho) << ',' << format_double(r.u.momentum) << ','
        << format_double(r.u.energy) << ',' << format_double(r.u.rho) << ','
        << format_double(r.u.momentum / r.u.rho) << ','
        << format_double(pressure(r.u, gamma)) << '\n';
  }
}

void write_profile_csv(const std::string& path, std::span<const ProfileRow> rows,
                       double gamma) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  write_profile_csv(out, rows, gamma);
}

std::vector<ProfileRow> read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kProfileHeader) {
    throw ConfigError("profile CSV: unexpected header");
  }
  std::vector<ProfileRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(ss, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("profile CSV: bad number '" + cell + "'");
      }
    }
    if (values.size() != 9) throw ConfigError("profile CSV: expected 9 columns");
    rows.push_back({values[1], values[2], {values[3], values[4], values[5]}});
  }
  return rows;
}

std::vector<ProfileRow> read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  return read_profile_csv(in);
}

}  // namespace enosv
