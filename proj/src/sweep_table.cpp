#include "ebound/sweep_table.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ebound {

namespace {

std::string field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::optional<double> parse_field(const std::string& text, std::size_t line_no) {
  if (text.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE)
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void push_distinct(std::vector<double>& axis, double v) {
  if (std::find(axis.begin(), axis.end(), v) == axis.end()) axis.push_back(v);
}

}  // namespace

double bound_ratio(double upper, double lower) {
  const double u = upper <= kRatioZeroFloor ? 0.0 : upper;
  const double l = lower <= kRatioZeroFloor ? 0.0 : lower;
  if (l == 0.0) return u == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return u / l;
}

SweepTable SweepTable::grid(std::string axis1_name, std::vector<double> axis1, std::string axis2_name,
                            std::vector<double> axis2) {
  SweepTable t;
  t.axis1_name = std::move(axis1_name);
  t.axis2_name = std::move(axis2_name);
  t.axis1 = std::move(axis1);
  t.axis2 = std::move(axis2);
  t.rows.resize(t.axis1.size() * t.axis2.size());
  for (std::size_t i = 0; i < t.axis1.size(); ++i)
    for (std::size_t j = 0; j < t.axis2.size(); ++j) {
      t.at(i, j).axis1 = t.axis1[i];
      t.at(i, j).axis2 = t.axis2[j];
    }
  return t;
}

std::optional<std::size_t> SweepTable::argmax_finite_ratio() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].ratio;
    if (!r || !std::isfinite(*r)) continue;
    if (!best || *r > *rows[*best].ratio) best = i;
  }
  return best;
}

double SweepTable::max_finite_ratio() const {
  const auto i = argmax_finite_ratio();
  return i ? *rows[*i].ratio : std::numeric_limits<double>::quiet_NaN();
}

std::size_t SweepTable::count_infinite_ratios() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) {
    return r.ratio && std::isinf(*r.ratio);
  }));
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0" in files
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const SweepTable& table) {
  out << "# axis1: " << table.axis1_name << '\n';
  out << "# axis2: " << table.axis2_name << '\n';
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  out << kSweepHeader << '\n';
  for (const SweepRow& r : table.rows) {
    out << format_number(r.axis1) << ',' << format_number(r.axis2) << ',' << field(r.lower) << ','
        << field(r.upper) << ',' << field(r.ratio) << ',' << field(r.sigma_su_star) << ','
        << field(r.gamma_star) << ',' << field(r.alpha_star) << ',' << field(r.beta_star) << '\n';
  }
}

SweepTable read_csv(std::istream& in) {
  SweepTable t;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header_seen) throw std::runtime_error("metadata after header at line " + std::to_string(line_no));
      const std::string body = trim(line.substr(1));
      const auto colon = body.find(':');
      const std::string key = trim(body.substr(0, colon));
      const std::string value = colon == std::string::npos ? std::string() : trim(body.substr(colon + 1));
      if (key == "axis1") t.axis1_name = value;
      else if (key == "axis2") t.axis2_name = value;
      else t.metadata.emplace_back(key, value);
      continue;
    }
    if (!header_seen) {
      if (line != kSweepHeader) throw std::runtime_error("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    const auto cells = split_commas(line);
    if (cells.size() != 9)
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 9 fields");
    SweepRow r;
    const auto a1 = parse_field(cells[0], line_no);
    const auto a2 = parse_field(cells[1], line_no);
    if (!a1 || !a2) throw std::runtime_error("line " + std::to_string(line_no) + ": missing axis value");
    r.axis1 = *a1;
    r.axis2 = *a2;
    r.lower = parse_field(cells[2], line_no);
    r.upper = parse_field(cells[3], line_no);
    r.ratio = parse_field(cells[4], line_no);
    r.sigma_su_star = parse_field(cells[5], line_no);
    r.gamma_star = parse_field(cells[6], line_no);
    r.alpha_star = parse_field(cells[7], line_no);
    r.beta_star = parse_field(cells[8], line_no);
    push_distinct(t.axis1, r.axis1);
    push_distinct(t.axis2, r.axis2);
    t.rows.push_back(r);
  }
  if (!header_seen) throw std::runtime_error("CSV header missing");
  if (t.rows.size() != t.axis1.size() * t.axis2.size())
    throw std::runtime_error("CSV rows do not form a rectangular grid");
  return t;
}

}  // namespace ebound
