#include "vbgk/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "vbgk/errors.hpp"

namespace vbgk {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(const std::string& text, int line) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ParseError("line " + std::to_string(line) + ": '" + text +
                         "' is not a real number",
                     line);
  return v;
}

int to_int(const std::string& text, int line) {
  int v = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ParseError("line " + std::to_string(line) + ": '" + text +
                         "' is not an integer",
                     line);
  return v;
}

double positive_real(const std::string& text, int line) {
  const double v = to_real(text, line);
  if (!(v > 0.0) || !std::isfinite(v))
    throw ParseError("line " + std::to_string(line) + ": value must be positive", line);
  return v;
}

[[noreturn]] void bad_choice(const std::string& key, const std::string& value,
                             int line) {
  throw ParseError("line " + std::to_string(line) + ": invalid value '" +
                       value + "' for " + key,
                   line);
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"epsilon", [](RunConfig& c, const std::string& v, int l) { c.epsilon = to_real(v, l); }},
      {"tau", [](RunConfig& c, const std::string& v, int l) { c.tau = to_real(v, l); }},
      {"lambda", [](RunConfig& c, const std::string& v, int l) { c.lambda = to_real(v, l); }},
      {"nu", [](RunConfig& c, const std::string& v, int l) { c.nu = to_real(v, l); }},
      {"rho_bar", [](RunConfig& c, const std::string& v, int l) { c.rho_bar = to_real(v, l); }},
      {"n",
       [](RunConfig& c, const std::string& v, int l) {
         c.n = to_int(v, l);
         if (c.n < 8 || c.n % 2 != 0)
           throw ParseError("line " + std::to_string(l) +
                                ": n must be an even integer >= 8", l);
       }},
      {"dt_policy",
       [](RunConfig& c, const std::string& v, int l) {
         if (v == "auto") c.solver.dt_policy = DtPolicy::automatic;
         else if (v == "fixed") c.solver.dt_policy = DtPolicy::fixed;
         else bad_choice("dt_policy", v, l);
       }},
      {"dt", [](RunConfig& c, const std::string& v, int l) { c.solver.fixed_dt = positive_real(v, l); }},
      {"c_relax", [](RunConfig& c, const std::string& v, int l) { c.solver.c_relax = positive_real(v, l); }},
      {"c_transp", [](RunConfig& c, const std::string& v, int l) { c.solver.c_transp = positive_real(v, l); }},
      {"transport_mode",
       [](RunConfig& c, const std::string& v, int l) {
         if (v == "spectral") c.solver.transport_mode = TransportMode::spectral;
         else if (v == "upwind") c.solver.transport_mode = TransportMode::upwind;
         else bad_choice("transport_mode", v, l);
       }},
      {"t_end",
       [](RunConfig& c, const std::string& v, int l) {
         c.solver.t_end = to_real(v, l);
         if (!(c.solver.t_end >= 0.0) || !std::isfinite(c.solver.t_end))
           throw ParseError("line " + std::to_string(l) + ": t_end must be >= 0", l);
       }},
      {"record_every",
       [](RunConfig& c, const std::string& v, int l) {
         c.solver.record_every = to_int(v, l);
         if (c.solver.record_every < 1)
           throw ParseError("line " + std::to_string(l) + ": record_every must be >= 1", l);
       }},
      {"snapshot_times",
       [](RunConfig& c, const std::string& v, int l) {
         try {
           c.solver.checkpoints = parse_real_list(v);
         } catch (const ParseError& e) {
           throw ParseError("line " + std::to_string(l) + ": " + e.what(), l);
         }
       }},
      {"initial_data",
       [](RunConfig& c, const std::string& v, int l) {
         if (v == "taylor_green") c.initial_data = InitialData::taylor_green;
         else if (v == "zero") c.initial_data = InitialData::zero;
         else if (v == "file") c.initial_data = InitialData::file;
         else bad_choice("initial_data", v, l);
       }},
      {"initial_file", [](RunConfig& c, const std::string& v, int) { c.initial_file = v; }},
      {"s", [](RunConfig& c, const std::string& v, int l) { c.s = to_real(v, l); }},
      {"s_prime", [](RunConfig& c, const std::string& v, int l) { c.s_prime = to_real(v, l); }},
      {"output_dir", [](RunConfig& c, const std::string& v, int) { c.output_dir = v; }},
      {"box_rho_min", [](RunConfig& c, const std::string& v, int l) { c.box_rho_min = to_real(v, l); }},
      {"box_rho_max", [](RunConfig& c, const std::string& v, int l) { c.box_rho_max = to_real(v, l); }},
      {"box_u_max", [](RunConfig& c, const std::string& v, int l) { c.box_u_max = to_real(v, l); }},
      {"subcharacteristic",
       [](RunConfig& c, const std::string& v, int l) {
         if (v == "report") c.subcharacteristic = SubcharacteristicMode::report;
         else if (v == "enforce") c.subcharacteristic = SubcharacteristicMode::enforce;
         else bad_choice("subcharacteristic", v, l);
       }},
      {"bound_M", [](RunConfig& c, const std::string& v, int l) { c.bound_M = to_real(v, l); }},
      {"ns_max_dt", [](RunConfig& c, const std::string& v, int l) { c.ns_max_dt = positive_real(v, l); }},
      {"epsilons",
       [](RunConfig& c, const std::string& v, int l) {
         try {
           c.epsilons = parse_real_list(v);
         } catch (const ParseError& e) {
           throw ParseError("line " + std::to_string(l) + ": " + e.what(), l);
         }
       }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line) +
                           ": expected 'key = value', got '" + text + "'",
                       line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty())
      throw ParseError("line " + std::to_string(line) + ": missing key", line);
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'",
                       line);
    if (!seen.insert(key).second)
      throw ParseError("line " + std::to_string(line) + ": duplicate key '" + key + "'",
                       line);
    if (value.empty())
      throw ParseError("line " + std::to_string(line) + ": empty value for '" + key + "'",
                       line);
    it->second(cfg, value, line);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'", 0);
  return parse_config(in);
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw ParseError("'" + item + "' in list is not a real number", 0);
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty list", 0);
  return out;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace vbgk
