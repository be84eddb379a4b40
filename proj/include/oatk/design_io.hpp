#pragma once

#include <iosfwd>
#include <string>

#include "oatk/core.hpp"

namespace oatk {

struct ParseError : Error {
  using Error::Error;
};

/// Text format: first line "N k s t", then N lines of k space-separated
/// levels. Set files hold a "# designs: n" header and blank-line-separated
/// designs. Write-then-read is the identity.
void write_design(std::ostream& os, const Design& d);
Design read_design(std::istream& is);

void save_design(const std::string& path, const Design& d);
Design load_design(const std::string& path);

void write_design_set(std::ostream& os, const std::vector<Design>& ds);
std::vector<Design> read_design_set(std::istream& is);

void save_design_set(const std::string& path, const std::vector<Design>& ds);
std::vector<Design> load_design_set(const std::string& path);

}  // namespace oatk
