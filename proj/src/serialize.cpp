#include "cmzv/serialize.hpp"

#include "cmzv/errors.hpp"

namespace cmzv {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw invalid_input(std::string("malformed ") + what + " JSON: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw invalid_input(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

std::string basis_key(const SymbolicConstant::BasisId& id) {
  std::string key;
  for (std::size_t i = 0; i < id.size(); ++i) key += (i ? "," : "") + id[i].get_str();
  return key;
}

} // namespace

Json to_json(const Composition& c) { return Json(c.parts()); }

Composition composition_from_json(const Json& j) {
  return guarded("composition", [&] { return Composition(j.get<std::vector<int>>()); });
}

Json to_json(const WordSum& w) {
  Json out = Json::object();
  for (const auto& [word, c] : w.terms()) out[word] = to_fraction_string(c);
  return out;
}

WordSum word_sum_from_json(const Json& j) {
  return guarded("word sum", [&] {
    if (!j.is_object()) throw invalid_input("word sum JSON must be an object");
    WordSum out;
    for (const auto& [word, c] : j.items()) {
      if (word.find_first_not_of("xy") != std::string::npos)
        throw invalid_input("word '" + word + "' has letters outside {x,y}");
      out.add(word, parse_rational(c.get<std::string>()));
    }
    return out;
  });
}

Json to_json(const VElement& v) {
  Json out = Json::array();
  for (const auto& [k, c] : v.terms())
    out.push_back({{"n", k.shift}, {"l", k.exponent}, {"coeff", to_fraction_string(c)}});
  return out;
}

VElement velement_from_json(const Json& j) {
  return guarded("V element", [&] {
    if (!j.is_array()) throw invalid_input("V element JSON must be an array");
    VElement out;
    for (const auto& item : j)
      out.add({item.at("n").get<int>(), item.at("l").get<int>()},
              parse_rational(item.at("coeff").get<std::string>()));
    return out;
  });
}

Json to_json(const NumericResult& r) {
  return {{"value", r.value},
          {"error_estimate", r.error_estimate},
          {"evaluations", r.evaluations},
          {"converged", r.converged}};
}

NumericResult numeric_result_from_json(const Json& j) {
  return guarded("numeric result", [&] {
    NumericResult r;
    r.value = j.at("value").get<double>();
    r.error_estimate = j.at("error_estimate").get<double>();
    r.evaluations = j.at("evaluations").get<std::int64_t>();
    r.converged = j.at("converged").get<bool>();
    return r;
  });
}

Json to_json(const SymbolicConstant& c) {
  Json logs = Json::object();
  for (const auto& [p, q] : c.logs()) logs[p.get_str()] = to_fraction_string(q);
  Json basis = Json::object();
  for (const auto& [id, q] : c.basis()) basis[basis_key(id)] = to_fraction_string(q);
  return {{"rational", to_fraction_string(c.rational())}, {"logs", logs}, {"basis", basis}};
}

SymbolicConstant symbolic_constant_from_json(const Json& j) {
  return guarded("symbolic constant", [&] {
    SymbolicConstant out(parse_rational(j.at("rational").get<std::string>()));
    for (const auto& [p, q] : j.at("logs").items())
      out.add_log_prime(Integer(p), parse_rational(q.get<std::string>()));
    for (const auto& [key, q] : j.at("basis").items()) {
      SymbolicConstant::BasisId id;
      std::size_t pos = 0;
      while (pos <= key.size()) {
        auto comma = key.find(',', pos);
        if (comma == std::string::npos) comma = key.size();
        id.push_back(parse_rational(key.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      out.add_basis(id, parse_rational(q.get<std::string>()));
    }
    return out;
  });
}

Json to_json(const Hyperplane& h) { return {{"coeffs", h.coeffs}, {"constant", h.constant}}; }

Hyperplane hyperplane_from_json(const Json& j) {
  return guarded("hyperplane", [&] {
    return Hyperplane{j.at("coeffs").get<std::vector<int>>(), j.at("constant").get<int>()};
  });
}

} // namespace cmzv
