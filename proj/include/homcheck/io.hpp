#pragma once

// JSON file formats (UTF-8):
//   Algebra  {"blocks":[n1,...]}            tensor algebras add "factors":[A,B]
//   Element  {"algebra":Algebra, "blocks":[[[re,im],...],...]}
//            each block flattened row-major
//   LinMap   {"domain":Algebra, "codomain":Algebra, "images":[Element,...]}
//            images in canonical basis order: blocks ascending, then (i,j)
//            row-major
//   State    {"algebra":Algebra, "density":Element}
// Floating-point numbers are written in scientific notation with 17
// significant digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "homcheck/algebra.hpp"
#include "homcheck/entropy.hpp"
#include "homcheck/linmap.hpp"

namespace homcheck {

using Json = nlohmann::ordered_json;

/// Written next to elements of X (x) Y that stand for operators on X (x) Y^op.
inline constexpr const char* kOpStorageNote =
    "second tensor factor is an opposite algebra, stored through its blockwise transpose";

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

inline const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) parse_fail(where + ": expected an object");
  const auto it = j.find(name);
  if (it == j.end()) parse_fail(where + ": missing field \"" + name + "\"");
  return *it;
}

inline double number(const Json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where + ": expected a number");
  return j.get<double>();
}

inline std::string format_double(double x) {
  if (x == 0.0) return "0.0000000000000000e+00";
  if (!std::isfinite(x)) parse_fail("cannot serialize a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

inline bool is_leaf_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j) {
    if (x.is_object()) return false;
    if (x.is_array()) {
      for (const auto& y : x)
        if (y.is_structured()) return false;
    }
  }
  return true;
}

inline void dump_to(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool inline_array = is_leaf_array(j);
      out += "[";
      bool first = true;
      for (const auto& x : j) {
        if (!first) out += inline_array ? ", " : ",";
        first = false;
        if (!inline_array) out += "\n" + pad;
        dump_to(out, x, indent, depth + 1);
      }
      if (!inline_array) out += "\n" + close_pad;
      out += "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += "\n" + pad + Json(it.key()).dump() + ": ";
        dump_to(out, it.value(), indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Serializes with 17-significant-digit floats; stable for a given value.
inline std::string dump(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_to(out, j, indent, 0);
  return out + "\n";
}

/// Defects are displayed as fixed decimals rounded to 1e-12.
inline std::string format_defect(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

inline Json to_json(const Algebra& a) {
  Json j;
  j["blocks"] = a.blocks();
  if (a.is_tensor()) j["factors"] = Json::array({to_json(a.left_factor()), to_json(a.right_factor())});
  return j;
}

inline Algebra algebra_from_json(const Json& j, const std::string& where = "algebra") {
  const Json& blocks = detail::field(j, "blocks", where);
  if (!blocks.is_array() || blocks.empty()) detail::parse_fail(where + ".blocks: expected a non-empty array");
  std::vector<int> sizes;
  for (const auto& b : blocks) {
    if (!b.is_number_integer() || b.get<long long>() < 1 || b.get<long long>() > 4096) {
      detail::parse_fail(where + ".blocks: block sizes must be positive integers");
    }
    sizes.push_back(b.get<int>());
  }
  if (const auto it = j.find("factors"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) detail::parse_fail(where + ".factors: expected two algebras");
    const Algebra t = Algebra::tensor(algebra_from_json((*it)[0], where + ".factors[0]"),
                                      algebra_from_json((*it)[1], where + ".factors[1]"));
    if (t.blocks() != sizes) detail::parse_fail(where + ": factors do not match blocks");
    return t;
  }
  return Algebra(std::move(sizes));
}

inline Json to_json(const Element& x) {
  Json j;
  j["algebra"] = to_json(x.algebra());
  Json blocks = Json::array();
  for (const auto& b : x.blocks()) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index k = 0; k < b.cols(); ++k)
        entries.push_back(Json::array({b(i, k).real(), b(i, k).imag()}));
    blocks.push_back(std::move(entries));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

inline Element element_from_json(const Json& j, const std::string& where = "element") {
  const Algebra a = algebra_from_json(detail::field(j, "algebra", where), where + ".algebra");
  const Json& blocks = detail::field(j, "blocks", where);
  if (!blocks.is_array() || static_cast<int>(blocks.size()) != a.num_blocks()) {
    detail::parse_fail(where + ".blocks: expected " + std::to_string(a.num_blocks()) + " blocks");
  }
  std::vector<Matrix> out;
  for (int k = 0; k < a.num_blocks(); ++k) {
    const std::string bw = where + ".blocks[" + std::to_string(k) + "]";
    const Json& entries = blocks[static_cast<std::size_t>(k)];
    const int n = a.block_size(k);
    if (!entries.is_array() || static_cast<int>(entries.size()) != n * n) {
      detail::parse_fail(bw + ": expected " + std::to_string(n * n) + " entries");
    }
    Matrix m(n, n);
    for (int idx = 0; idx < n * n; ++idx) {
      const Json& z = entries[static_cast<std::size_t>(idx)];
      if (!z.is_array() || z.size() != 2) detail::parse_fail(bw + ": entries must be [re, im]");
      m(idx / n, idx % n) = Complex(detail::number(z[0], bw), detail::number(z[1], bw));
    }
    out.push_back(std::move(m));
  }
  return Element(a, std::move(out));
}

inline Json to_json(const LinMap& phi) {
  Json j;
  j["domain"] = to_json(phi.domain());
  j["codomain"] = to_json(phi.codomain());
  Json images = Json::array();
  for (const auto& img : phi.images()) images.push_back(to_json(img));
  j["images"] = std::move(images);
  return j;
}

inline LinMap linmap_from_json(const Json& j) {
  const Algebra dom = algebra_from_json(detail::field(j, "domain", "map"), "map.domain");
  const Algebra cod = algebra_from_json(detail::field(j, "codomain", "map"), "map.codomain");
  const Json& images = detail::field(j, "images", "map");
  if (!images.is_array() || static_cast<int>(images.size()) != dom.vec_dim()) {
    detail::parse_fail("map.images: expected " + std::to_string(dom.vec_dim()) + " images");
  }
  std::vector<Element> elems;
  for (std::size_t u = 0; u < images.size(); ++u) {
    const std::string w = "map.images[" + std::to_string(u) + "]";
    Element e = element_from_json(images[u], w);
    if (e.algebra() != cod) detail::parse_fail(w + ": image does not live in the codomain");
    elems.push_back(std::move(e));
  }
  return LinMap::from_images(dom, cod, elems);
}

inline Json to_json(const State& mu) {
  Json j;
  j["algebra"] = to_json(mu.algebra());
  j["density"] = to_json(mu.density());
  return j;
}

inline State state_from_json(const Json& j) {
  const Algebra a = algebra_from_json(detail::field(j, "algebra", "state"), "state.algebra");
  const Element d = element_from_json(detail::field(j, "density", "state"), "state.density");
  if (d.algebra() != a) detail::parse_fail("state.density: lives in a different algebra");
  return State::from_density(d);
}

}  // namespace homcheck
