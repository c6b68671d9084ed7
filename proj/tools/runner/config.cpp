#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace darkchain::runner {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("config: " + key + " = '" + raw + "' is not a valid number");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const std::map<std::string, std::string>& Config::known_keys() {
  static const std::map<std::string, std::string> keys{
      {"chain.n", "6"},
      {"chain.spacing", "0.02"},
      {"chain.dipole_angle", "90"},

      {"protocol.drive", "tailored"},
      {"protocol.mode", "0"},
      {"protocol.eta", "0.53"},
      {"protocol.duration", "1.58"},
      {"protocol.detuning", "auto"},
      {"protocol.gradient", "0"},
      {"protocol.target_n", "1"},
      {"protocol.target_index", "0"},
      {"protocol.dissipative", "true"},
      {"protocol.tail", "10"},
      {"protocol.samples", "400"},
      {"protocol.tail_samples", "200"},

      {"fig1e.eta_a", "0.53"},
      {"fig1e.duration_a", "1.58"},
      {"fig1e.eta_b", "2.44"},
      {"fig1e.duration_b", "3.44"},

      {"optimize.detuning_below", "60"},
      {"optimize.detuning_above", "20"},
      {"optimize.detuning_grid", "1601"},
      {"optimize.duration_lo", "1"},
      {"optimize.duration_factor", "2"},
      {"optimize.duration_profile", "2001"},

      {"scan.lo", "0.5"},
      {"scan.hi", "6"},
      {"scan.points", "111"},
      {"scan.duration", "16.19"},

      {"spectrum.blocks", "1"},

      {"entropy.n_min", "2"},
      {"entropy.n_max", "8"},
      {"entropy.spacing", "0.1"},

      {"depth.k_max", "0"},
      {"depth.points", "101"},
      {"depth.restarts", "20"},

      {"disorder.n_min", "2"},
      {"disorder.n_max", "10"},
      {"disorder.spacing", "0.4"},
      {"disorder.strengths", "0, 0.2, 0.4"},
      {"disorder.samples", "100"},
      {"disorder.trace_n", "6"},
      {"disorder.horizon", "100"},
      {"disorder.trace_points", "401"},
      {"disorder.early_end", "2"},
      {"disorder.late_start", "10"},

      {"output.path", ""},
      {"output.delimiter", ","},
      {"output.precision", "10"},

      {"check.tolerance_scale", "1"},

      {"run.seed", "1"},
      {"run.threads", "1"},
  };
  return keys;
}

Config Config::resolve(const std::map<std::string, std::string>& recipe_defaults,
                       const std::optional<std::string>& ini_path, const std::vector<std::string>& overrides) {
  Config c;
  c.values_ = known_keys();
  for (const auto& [k, v] : recipe_defaults) c.set(k, v);
  if (ini_path) {
    std::ifstream in(*ini_path);
    if (!in) throw ConfigError("config: cannot open " + *ini_path);
    boost::property_tree::ptree tree;
    try {
      boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
      if (body.empty() && !body.data().empty()) throw ConfigError("config: key '" + section + "' outside a section");
      for (const auto& [key, value] : body) c.set(section + "." + key, value.data());
    }
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("config: override '" + o + "' is not key=value");
    c.set(trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  if (!known_keys().contains(key)) throw ConfigError("config: unknown key '" + key + "'");
  values_[key] = trim(value);
}

const std::string& Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: unknown key '" + key + "'");
  return it->second;
}

double Config::real(const std::string& key) const { return parse_number<double>(key, text(key)); }
int Config::integer(const std::string& key) const { return parse_number<int>(key, text(key)); }
std::uint64_t Config::u64(const std::string& key) const { return parse_number<std::uint64_t>(key, text(key)); }

bool Config::flag(const std::string& key) const {
  const std::string& v = text(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: " + key + " = '" + v + "' is not a boolean");
}

std::vector<double> Config::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : split_list(text(key))) out.push_back(parse_number<double>(key, s));
  if (out.empty()) throw ConfigError("config: " + key + " is empty");
  return out;
}

std::vector<int> Config::integers(const std::string& key) const {
  std::vector<int> out;
  for (const auto& s : split_list(text(key))) out.push_back(parse_number<int>(key, s));
  if (out.empty()) throw ConfigError("config: " + key + " is empty");
  return out;
}

std::vector<std::pair<std::string, std::string>> Config::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& kv : values_)
    if (kv.first != "run.threads" && kv.first != "output.path") out.push_back(kv);
  return out;
}

std::uint64_t Config::hash() const {
  std::string bytes;
  for (const auto& [k, v] : echo()) bytes += k + "=" + v + "\n";
  return fnv1a64(bytes);
}

}  // namespace darkchain::runner
