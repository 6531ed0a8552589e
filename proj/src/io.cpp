#include "trajint/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace trajint {

namespace {

std::string strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

std::size_t index_from_json(const Json& v, const std::string& field) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw InputError(field + ": expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

NodePath path_from_json(const Json& v, const std::string& field) {
  try {
    if (v.is_string()) return NodePath::parse(v.get<std::string>());
    if (v.is_array()) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < v.size(); ++i) idx.push_back(index_from_json(v[i], field + "[" + std::to_string(i) + "]"));
      return NodePath(std::move(idx));
    }
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
  throw InputError(field + ": expected a node path string or index list");
}

template <class T>
TreeSpec<T> spec_from_json(const Json& v, const std::string& where) {
  TreeSpec<T> spec;
  spec.value = scalar_from_json<T>(require(v, "value", where), where + ".value");
  const auto it = v.find("children");
  if (it != v.end()) {
    if (!it->is_array()) throw InputError(where + ".children: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      spec.children.push_back(spec_from_json<T>((*it)[i], where + ".children[" + std::to_string(i) + "]"));
    }
  }
  return spec;
}

template <class T>
Json spec_to_json(const TreeSpec<T>& spec) {
  Json out = Json::object();
  out["value"] = scalar_to_json(spec.value);
  if (!spec.children.empty()) {
    Json kids = Json::array();
    for (const auto& c : spec.children) kids.push_back(spec_to_json(c));
    out["children"] = std::move(kids);
  }
  return out;
}

std::filesystem::path resolve(std::string_view name, const std::filesystem::path& base) {
  std::filesystem::path p{std::string(name)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

std::string_view file_argument(std::string_view arg, std::string_view kind) {
  if (arg.empty() || arg.front() != '@') {
    throw InputError(std::string(kind) + " payoff expects @file, got '" + std::string(arg) + "'");
  }
  return arg.substr(1);
}

}  // namespace

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(file.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& file, const Json& doc) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write " + file.string());
  out << doc.dump(2) << '\n';
}

template <class T>
T scalar_from_json(const Json& v, const std::string& field) {
  try {
    if (v.is_string()) return parse_scalar<T>(v.get<std::string>());
    if (v.is_number()) {
      if constexpr (std::is_same_v<T, double>) {
        return v.get<double>();
      } else {
        return parse_scalar<T>(v.dump());
      }
    }
  } catch (const Error& e) {
    throw InputError(field + ": " + e.what());
  }
  throw InputError(field + ": expected a number or \"p/q\" string");
}

template <class T>
Json scalar_to_json(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) return x.get_num().get_si();
    return x.get_str();
  }
}

template <class T>
ExtReal<T> ext_from_json(const Json& v, const std::string& field) {
  if (v.is_string()) {
    const std::string s = strip(v.get<std::string>());
    if (s == "inf" || s == "+inf") return ExtReal<T>::pos_inf();
    if (s == "-inf") return ExtReal<T>::neg_inf();
  }
  return ExtReal<T>(scalar_from_json<T>(v, field));
}

template <class T>
Json ext_to_json(const ExtReal<T>& x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return scalar_to_json(x.value());
}

template <class T>
TrajectoryTree<T> model_from_json(const Json& doc) {
  const T s0 = scalar_from_json<T>(require(doc, "s0", "model"), "model.s0");
  const std::size_t horizon = index_from_json(require(doc, "horizon", "model"), "model.horizon");
  const TreeSpec<T> spec = spec_from_json<T>(require(doc, "tree", "model"), "model.tree");
  return TrajectoryTree<T>::build(s0, horizon, spec);
}

template <class T>
Json model_to_json(const TrajectoryTree<T>& tree) {
  Json out = Json::object();
  out["s0"] = scalar_to_json(tree.s0());
  out["horizon"] = tree.horizon();
  out["tree"] = spec_to_json(tree.to_spec());
  return out;
}

template <class T>
TrajectoryTree<T> load_model(const std::filesystem::path& file) {
  try {
    return model_from_json<T>(read_json_file(file));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(file.string(), 0) == 0) throw;
    throw InputError(file.string() + ": " + msg);
  }
}

template <class T>
Payoff<T> parse_payoff_spec(std::string_view spec, const std::filesystem::path& base) {
  const std::string text = strip(spec);
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : strip(std::string_view(text).substr(colon + 1));
  auto scalar_arg = [&]() {
    if (arg.empty()) throw InputError("payoff '" + text + "' needs an argument");
    try {
      return parse_scalar<T>(arg);
    } catch (const Error& e) {
      throw InputError("payoff '" + text + "': " + e.what());
    }
  };
  if (head == "terminal") return Payoff<T>::terminal();
  if (head == "const") return Payoff<T>::constant(scalar_arg());
  if (head == "call") return Payoff<T>::call(scalar_arg());
  if (head == "put") return Payoff<T>::put(scalar_arg());
  if (head == "absinc") {
    std::size_t step = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), step);
    if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size()) {
      throw InputError("payoff '" + text + "': step must be a nonnegative integer");
    }
    return Payoff<T>::abs_increment(step);
  }
  if (head == "indicator") {
    const auto file = resolve(file_argument(arg, "indicator"), base);
    const Json doc = read_json_file(file);
    const Json& list = doc.is_object() ? require(doc, "leaves", file.string()) : doc;
    if (!list.is_array()) throw InputError(file.string() + ": expected an array of leaf paths");
    std::set<NodePath> leaves;
    for (std::size_t i = 0; i < list.size(); ++i) {
      leaves.insert(path_from_json(list[i], file.string() + "[" + std::to_string(i) + "]"));
    }
    return Payoff<T>::indicator(std::move(leaves));
  }
  if (head == "table") {
    const auto file = resolve(file_argument(arg, "table"), base);
    const Json doc = read_json_file(file);
    std::map<NodePath, ExtReal<T>> values;
    if (doc.is_object()) {
      for (const auto& [key, v] : doc.items()) {
        values[path_from_json(Json(key), file.string() + "." + key)] = ext_from_json<T>(v, file.string() + "." + key);
      }
    } else if (doc.is_array()) {
      for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string where = file.string() + "[" + std::to_string(i) + "]";
        values[path_from_json(require(doc[i], "leaf", where), where + ".leaf")] =
            ext_from_json<T>(require(doc[i], "value", where), where + ".value");
      }
    } else {
      throw InputError(file.string() + ": expected an object or array of {leaf, value}");
    }
    return Payoff<T>::table(std::move(values));
  }
  throw InputError("unknown payoff '" + text + "' (expected call:K, put:K, const:c, terminal, absinc:i, "
                   "indicator:@file, table:@file)");
}

template <class T>
ElementaryFunction<T> portfolio_from_json(const Json& doc) {
  ElementaryFunction<T> p;
  p.start = index_from_json(require(doc, "start", "portfolio"), "portfolio.start");
  p.node = doc.contains("node") ? path_from_json(doc["node"], "portfolio.node") : NodePath::root();
  p.V = scalar_from_json<T>(require(doc, "V", "portfolio"), "portfolio.V");
  p.maturity = index_from_json(require(doc, "maturity", "portfolio"), "portfolio.maturity");
  if (doc.contains("H")) {
    const Json& hs = doc["H"];
    if (!hs.is_array()) throw InputError("portfolio.H: expected an array");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string where = "portfolio.H[" + std::to_string(i) + "]";
      p.H[path_from_json(require(hs[i], "node", where), where + ".node")] =
          scalar_from_json<T>(require(hs[i], "h", where), where + ".h");
    }
  }
  return p;
}

template <class T>
Json portfolio_to_json(const ElementaryFunction<T>& p) {
  Json out = Json::object();
  out["start"] = p.start;
  out["node"] = p.node.to_string();
  out["V"] = scalar_to_json(p.V);
  out["maturity"] = p.maturity;
  Json hs = Json::array();
  for (const auto& [path, h] : p.H) hs.push_back(Json{{"node", path.to_string()}, {"h", scalar_to_json(h)}});
  out["H"] = std::move(hs);
  return out;
}

template <class T>
Json certificate_to_json(const HedgeCertificate<T>& cert) {
  Json out = Json::object();
  out["node"] = cert.node.to_string();
  out["mode"] = to_string(cert.mode);
  out["total_premium"] = scalar_to_json(cert.total_premium);
  out["slack"] = scalar_to_json(cert.slack);
  Json elems = Json::array();
  for (const auto& e : cert.elements) elems.push_back(portfolio_to_json(e));
  out["elements"] = std::move(elems);
  return out;
}

template <class T>
Json process_to_json(const TrajectoryTree<T>& tree, const PriceProcess<T>& p) {
  Json out = Json::object();
  out["mode"] = to_string(p.mode);
  Json values = Json::array();
  for (NodeId id = 0; id < tree.size(); ++id) {
    values.push_back(Json{{"node", tree.path(id).to_string()}, {"depth", tree.depth(id)}, {"value", ext_to_json(p.values[id])}});
  }
  out["values"] = std::move(values);
  return out;
}

template <class T>
Interval<T> parse_interval(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw InputError("constraint '" + std::string(text) + "' must be lo,hi");
  Interval<T> iv;
  try {
    iv.lo = parse_ext_real<T>(strip(text.substr(0, comma)));
    iv.hi = parse_ext_real<T>(strip(text.substr(comma + 1)));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError("constraint '" + std::string(text) + "': " + e.what());
  }
  if (iv.hi < iv.lo) throw InputError("constraint '" + std::string(text) + "' has lo > hi");
  return iv;
}

#define TRAJINT_INSTANTIATE(T)                                                                \
  template T scalar_from_json<T>(const Json&, const std::string&);                            \
  template Json scalar_to_json(const T&);                                                     \
  template ExtReal<T> ext_from_json<T>(const Json&, const std::string&);                      \
  template Json ext_to_json(const ExtReal<T>&);                                               \
  template TrajectoryTree<T> model_from_json<T>(const Json&);                                 \
  template Json model_to_json(const TrajectoryTree<T>&);                                      \
  template TrajectoryTree<T> load_model<T>(const std::filesystem::path&);                     \
  template Payoff<T> parse_payoff_spec<T>(std::string_view, const std::filesystem::path&);    \
  template ElementaryFunction<T> portfolio_from_json<T>(const Json&);                         \
  template Json portfolio_to_json(const ElementaryFunction<T>&);                              \
  template Json certificate_to_json(const HedgeCertificate<T>&);                              \
  template Json process_to_json(const TrajectoryTree<T>&, const PriceProcess<T>&);            \
  template Interval<T> parse_interval<T>(std::string_view);

TRAJINT_INSTANTIATE(double)
TRAJINT_INSTANTIATE(Rational)

#undef TRAJINT_INSTANTIATE

}  // namespace trajint
