#include "cdscale/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cdscale/errors.hpp"

namespace cdscale::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_kernel_csv(std::ostream& os, const KernelGrid& grid) {
  os << "a_re,a_im,b_re,b_im,re,im\n";
  for (std::size_t i = 0; i < grid.a_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.b_values.size(); ++j) {
      const cplx a = grid.a_values[i], b = grid.b_values[j], v = grid.values[i][j];
      os << format_double(a.real()) << ',' << format_double(a.imag()) << ',' << format_double(b.real()) << ','
         << format_double(b.imag()) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
  }
  return v;
}

}  // namespace

CoefficientModel read_table_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<double> a, b;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto cells = split_commas(t);
    if (!header) {
      if (cells != std::vector<std::string>{"j", "a", "b"}) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header 'j,a,b'");
      }
      header = true;
      continue;
    }
    if (cells.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields, got " + std::to_string(cells.size()));
    }
    const double j = parse_number(cells[0], line_no);
    if (j != static_cast<double>(a.size())) {
      throw ParseError("line " + std::to_string(line_no) + ": index must be " + std::to_string(a.size()));
    }
    const double av = parse_number(cells[1], line_no);
    const double bv = parse_number(cells[2], line_no);
    if (!(av > 0.0) || !std::isfinite(av) || !std::isfinite(bv)) {
      throw ParseError("line " + std::to_string(line_no) + ": need finite a > 0 and finite b");
    }
    a.push_back(av);
    b.push_back(bv);
  }
  if (!header) throw ParseError("line 1: missing header 'j,a,b'");
  if (a.empty()) throw ParseError("table has no rows");
  return CoefficientModel::table(std::move(a), std::move(b));
}

CoefficientModel read_table_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file " + path);
  return read_table_csv(in);
}

void write_table_csv(std::ostream& os, const std::vector<double>& a, const std::vector<double>& b) {
  os << "j,a,b\n";
  for (std::size_t j = 0; j < a.size() && j < b.size(); ++j) {
    os << j << ',' << format_double(a[j]) << ',' << format_double(b[j]) << '\n';
  }
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Mat2& m) {
  if (m.m11.imag() == 0.0 && m.m12.imag() == 0.0 && m.m21.imag() == 0.0 && m.m22.imag() == 0.0) {
    return json::array({json::array({m.m11.real(), m.m12.real()}), json::array({m.m21.real(), m.m22.real()})});
  }
  return json::array({json::array({to_json(m.m11), to_json(m.m12)}), json::array({to_json(m.m21), to_json(m.m22)})});
}

namespace {

cplx entry_from_json(const json& e) {
  if (e.is_number()) return e.get<double>();
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ParseError("matrix entry must be a number or [re, im]");
}

}  // namespace

Mat2 mat2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2) {
    throw ParseError("matrix must be [[m11, m12], [m21, m22]]");
  }
  return {entry_from_json(j[0][0]), entry_from_json(j[0][1]), entry_from_json(j[1][0]), entry_from_json(j[1][1])};
}

json model_to_json(const CoefficientModel& model) {
  json out;
  out["name"] = model.name();
  std::visit(
      [&out](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ConstantCoeffs>) {
          out["a"] = c.a;
          out["b"] = c.b;
        } else if constexpr (std::is_same_v<T, PeriodicCoeffs> || std::is_same_v<T, TableCoeffs>) {
          out["a"] = c.a;
          out["b"] = c.b;
        } else if constexpr (std::is_same_v<T, AlternatingVCoeffs>) {
          out["V"] = c.V;
        } else {
          out["description"] = c.description;
        }
      },
      model.kind());
  return out;
}

json system_to_json(const CanonicalSystem& system) {
  return std::visit(
      [](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantH>) {
          return {{"type", "constant"}, {"H", to_json(k.H)}};
        } else if constexpr (std::is_same_v<T, PiecewiseConstantH>) {
          json mats = json::array();
          for (const auto& m : k.matrices) mats.push_back(to_json(m));
          return {{"type", "piecewise"}, {"breakpoints", k.breakpoints}, {"matrices", mats}};
        } else if constexpr (std::is_same_v<T, CoshSinhH>) {
          return {{"type", "coshsinh"}, {"V", k.V}};
        } else {
          throw Error("callable Hamiltonian '" + k.description + "' cannot be serialised");
        }
      },
      system.kind());
}

CanonicalSystem system_from_json(const json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") return CanonicalSystem::constant(mat2_from_json(j.at("H")));
    if (type == "coshsinh") return CanonicalSystem::cosh_sinh(j.at("V").get<double>());
    if (type == "piecewise") {
      std::vector<Mat2> mats;
      for (const auto& m : j.at("matrices")) mats.push_back(mat2_from_json(m));
      return CanonicalSystem::piecewise(j.at("breakpoints").get<std::vector<double>>(), std::move(mats));
    }
    throw ParseError("unknown system type '" + type + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed system JSON: ") + e.what());
  }
}

CanonicalSystem read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open system file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return system_from_json(j);
}

json diagnostics_to_json(const DiagnosticsReport& report) {
  json decay = json::array();
  for (const auto& d : report.decay_profile) decay.push_back({{"L", d.L}, {"value", d.value}});
  json out{{"n", report.n},
           {"avg_norm", report.avg_norm},
           {"max_over_n", report.max_over_n},
           {"decay_profile", decay},
           {"cesaro_H", to_json(report.cesaro_H)},
           {"poly_growth", report.poly_growth},
           {"poly_growth_note", "heuristic proxy for bounded solutions"}};
  out["matrix_conv"] = report.matrix_conv ? json(*report.matrix_conv) : json(nullptr);
  return out;
}

json equivalence_to_json(const EquivalenceReport& report) {
  return {{"n_list", report.n_list},
          {"kernel_stat", report.kernel_stat},
          {"trajectory_stat", report.trajectory_stat},
          {"kernel_decreasing", report.kernel_decreasing},
          {"trajectory_decreasing", report.trajectory_decreasing}};
}

void write_equivalence_csv(std::ostream& os, const EquivalenceReport& report) {
  os << "n,kernel_stat,trajectory_stat\n";
  for (std::size_t i = 0; i < report.n_list.size(); ++i) {
    os << report.n_list[i] << ',' << format_double(report.kernel_stat[i]) << ','
       << format_double(report.trajectory_stat[i]) << '\n';
  }
}

std::string format_check(const CheckResult& c) {
  return std::string(c.passed ? "PASS " : "FAIL ") + c.name + " measured=" + format_double(c.measured) +
         " tol=" + format_double(c.tolerance);
}

bool RunManifest::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

json RunManifest::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"tolerance", c.tolerance}});
  }
  json out{{"command", command}, {"model", model},      {"n_list", n_list}, {"x0", x0},
           {"grids", grids},     {"tolerances", tolerances}, {"checks", cs}, {"all_passed", all_passed()},
           {"tool_version", kToolVersion}};
  for (const auto& [k, v] : extra.items()) out[k] = v;
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text << '\n';
  if (!out) throw Error("write failed for " + path);
}

}  // namespace cdscale::io
