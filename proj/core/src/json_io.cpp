#include "minflex/json_io.hpp"

#include <fstream>

namespace minflex {

json load_json(const std::string& path_or_inline) {
  try {
    const auto first = path_or_inline.find_first_not_of(" \t\r\n");
    if (first != std::string::npos &&
        (path_or_inline[first] == '{' || path_or_inline[first] == '[')) {
      return json::parse(path_or_inline);
    }
    std::ifstream in(path_or_inline);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path_or_inline);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

namespace {

Mat mat_from_json(const json& j) {
  const int rows = static_cast<int>(j.size());
  if (rows == 0) return Mat();
  const int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  return m;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ConvexBody body_from_json(const json& j) {
  if (!j.contains("dim")) throw Error(ErrorCode::ParseError, "body needs \"dim\"");
  const int dim = j.at("dim").get<int>();
  std::vector<Halfspace> hs;
  for (const auto& h : j.value("halfspaces", json::array())) {
    Halfspace half;
    half.normal = vec_from_json(h.at("a"));
    half.offset = h.at("b").get<double>();
    if (half.normal.size() != dim)
      throw Error(ErrorCode::ParseError, "halfspace normal dimension mismatch");
    hs.push_back(half);
  }
  SmoothPart smooth;
  const std::string support = j.value("support", "none");
  if (support != "none") {
    const json params = j.value("params", json::object());
    if (support == "ball") smooth.kind = SmoothKind::Ball;
    else if (support == "cylinder") smooth.kind = SmoothKind::Cylinder;
    else if (support == "disc-product") smooth.kind = SmoothKind::DiscProduct;
    else throw Error(ErrorCode::ParseError, "unknown support kind " + support);
    smooth.center = params.contains("center") ? vec_from_json(params.at("center"))
                                              : Vec(Vec::Zero(dim));
    smooth.radius = params.value("radius", 1.0);
    if (params.contains("axes"))
      smooth.axes = params.at("axes").get<std::vector<int>>();
    else if (smooth.kind == SmoothKind::Ball)
      for (int i = 0; i < dim; ++i) smooth.axes.push_back(i);
    else
      throw Error(ErrorCode::ParseError, support + " needs \"params.axes\"");
  }
  std::optional<int> hint;
  if (j.contains("lineality_hint")) hint = j.at("lineality_hint").get<int>();
  return ConvexBody(dim, std::move(hs), smooth, hint);
}

json body_to_json(const ConvexBody& C) {
  json j;
  j["dim"] = C.dim();
  json hs = json::array();
  for (const auto& h : C.halfspaces())
    hs.push_back({{"a", vec_to_json(h.normal)}, {"b", h.offset}});
  j["halfspaces"] = hs;
  switch (C.smooth().kind) {
    case SmoothKind::None: j["support"] = "none"; break;
    case SmoothKind::Ball: j["support"] = "ball"; break;
    case SmoothKind::Cylinder: j["support"] = "cylinder"; break;
    case SmoothKind::DiscProduct: j["support"] = "disc-product"; break;
  }
  if (C.smooth().kind != SmoothKind::None) {
    j["params"] = {{"center", vec_to_json(C.smooth().center)},
                   {"radius", C.smooth().radius},
                   {"axes", C.smooth().axes}};
  }
  if (C.lineality_hint()) j["lineality_hint"] = *C.lineality_hint();
  return j;
}

DomainSpec domain_from_json(const json& j) {
  const std::string variant = j.value("variant", "");
  if (variant == "full-space") return DomainSpec::full_space(j.at("dim").get<int>());
  if (variant == "convex-complement")
    return DomainSpec::convex_complement(body_from_json(j.at("body")));
  if (variant == "wedge") {
    Mat frame = j.contains("frame") ? mat_from_json(j.at("frame")) : Mat();
    Vec shift = j.contains("shift") ? vec_from_json(j.at("shift")) : Vec();
    return DomainSpec::wedge(j.at("angle").get<double>(), frame, shift);
  }
  if (variant == "quadric-graph")
    return DomainSpec::quadric_graph(j.at("a1").get<double>(),
                                     j.at("a2").get<double>(),
                                     j.at("a3").get<double>());
  if (variant == "wedge-graph")
    return DomainSpec::wedge_graph(j.at("a2").get<double>(),
                                   j.at("a3").get<double>(), j.value("dim", 4));
  if (variant == "halfspace")
    return DomainSpec::halfspace(vec_from_json(j.at("normal")),
                                 j.at("offset").get<double>());
  if (variant == "slab")
    return DomainSpec::slab(vec_from_json(j.at("normal")),
                            j.at("lo").get<double>(), j.at("hi").get<double>());
  if (variant == "union-chain") {
    std::vector<DomainSpec> members;
    for (const auto& m : j.at("members")) members.push_back(domain_from_json(m));
    return DomainSpec::union_chain(std::move(members));
  }
  throw Error(ErrorCode::ParseError, "unknown domain variant \"" + variant + "\"");
}

json domain_to_json(const DomainSpec& omega) {
  return std::visit(
      [](const auto& d) -> json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FullSpace>)
          return {{"variant", "full-space"}, {"dim", d.dim}};
        else if constexpr (std::is_same_v<T, ConvexComplement>)
          return {{"variant", "convex-complement"}, {"body", body_to_json(d.body)}};
        else if constexpr (std::is_same_v<T, Wedge>)
          return {{"variant", "wedge"},
                  {"angle", d.angle},
                  {"frame", mat_to_json(d.frame)},
                  {"shift", vec_to_json(d.shift)}};
        else if constexpr (std::is_same_v<T, QuadricGraph>)
          return {{"variant", "quadric-graph"}, {"a1", d.a1}, {"a2", d.a2}, {"a3", d.a3}};
        else if constexpr (std::is_same_v<T, WedgeGraph>)
          return {{"variant", "wedge-graph"}, {"a2", d.a2}, {"a3", d.a3}, {"dim", d.dim}};
        else if constexpr (std::is_same_v<T, HalfspaceDomain>)
          return {{"variant", "halfspace"},
                  {"normal", vec_to_json(d.normal)},
                  {"offset", d.offset}};
        else if constexpr (std::is_same_v<T, SlabDomain>)
          return {{"variant", "slab"},
                  {"normal", vec_to_json(d.normal)},
                  {"lo", d.lo},
                  {"hi", d.hi}};
        else {
          json members = json::array();
          for (const auto& m : d.members) members.push_back(domain_to_json(m));
          return {{"variant", "union-chain"}, {"members", members}};
        }
      },
      omega.variant);
}

ExprPtr expr_from_json(const json& j) {
  if (j.is_number()) return expr_const(j.get<double>());
  const std::string op = j.value("op", "");
  auto args = [&] {
    std::vector<ExprPtr> out;
    for (const auto& a : j.at("args")) out.push_back(expr_from_json(a));
    return out;
  };
  if (op == "const") return expr_const(j.at("value").get<double>());
  if (op == "var") return expr_var(j.at("index").get<int>());
  if (op == "add") return expr_add(args());
  if (op == "mul") return expr_mul(args());
  if (op == "sub") {
    auto a = args();
    if (a.size() != 2) throw Error(ErrorCode::ParseError, "sub takes 2 args");
    return expr_sub(a[0], a[1]);
  }
  if (op == "div") {
    auto a = args();
    if (a.size() != 2) throw Error(ErrorCode::ParseError, "div takes 2 args");
    return expr_div(a[0], a[1]);
  }
  if (op == "pow") {
    auto a = args();
    if (a.size() != 1) throw Error(ErrorCode::ParseError, "pow takes 1 arg");
    return expr_pow(a[0], j.at("exponent").get<int>());
  }
  if (op == "abs") {
    auto a = args();
    if (a.size() != 1) throw Error(ErrorCode::ParseError, "abs takes 1 arg");
    return expr_abs(a[0]);
  }
  if (op == "norm") return expr_norm();
  if (op == "sqnorm") return expr_sqnorm();
  if (op == "max") return expr_max(args());
  if (op == "min") return expr_min(args());
  if (op == "smoothmax") return expr_smoothmax(args(), j.value("sharpness", 100.0));
  if (op == "smoothrelu") {
    auto a = args();
    if (a.size() != 1) throw Error(ErrorCode::ParseError, "smoothrelu takes 1 arg");
    return expr_smoothrelu(a[0], j.value("width", 1e-3));
  }
  throw Error(ErrorCode::ParseError, "unknown expression op \"" + op + "\"");
}

ScalarField field_from_json(const json& j) {
  Box box;
  box.lo = vec_from_json(j.at("box").at("lo"));
  box.hi = vec_from_json(j.at("box").at("hi"));
  if (box.lo.size() != box.hi.size())
    throw Error(ErrorCode::ParseError, "box lo/hi dimension mismatch");
  return ScalarField::from_expr(expr_from_json(j.at("expr")), box);
}

json witness_to_json(const Witness& w) {
  json growth = json::array();
  for (const auto& [r, achieved] : w.growth)
    growth.push_back({{"radius", r}, {"clearance", achieved}});
  return {{"base", vec_to_json(w.plane.base)},
          {"dir1", vec_to_json(w.plane.dir1)},
          {"dir2", vec_to_json(w.plane.dir2)},
          {"delta", w.delta},
          {"complex_line", w.complex_line},
          {"growth", growth}};
}

json classification_to_json(const ClassificationResult& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["rule"] = to_string(r.reason);
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  j["diagnostics"] = r.diagnostics;
  return j;
}

json psh_report_to_json(const PshReport& r) {
  return {{"p", r.p},
          {"min_partial_sum", r.min_partial_sum},
          {"argmin", vec_to_json(r.argmin)},
          {"grid_points", r.grid_points},
          {"psh", r.psh},
          {"strongly", r.strongly},
          {"monotone_consistent", r.monotone_consistent}};
}

json p_convex_to_json(const PConvexCertificate& c) {
  return {{"certified", c.certified},
          {"gate_ok", c.gate_ok},
          {"psh_on_grid", c.psh_on_grid},
          {"strong_on_complement", c.strong_on_complement},
          {"zero_set_samples", c.zero_set_samples},
          {"complement_samples", c.complement_samples},
          {"min_partial_sum", c.min_partial_sum},
          {"min_complement_sum", c.min_complement_sum}};
}

json conformality_to_json(const ConformalityReport& r) {
  return {{"max_null", r.max_null},
          {"max_harmonic", r.max_harmonic},
          {"min_h", r.min_h},
          {"branched", r.branched}};
}

json containment_to_json(const ContainmentReport& r) {
  json violations = json::array();
  for (const auto& [i, j] : r.violations) violations.push_back({i, j});
  return {{"fraction", r.fraction},
          {"min_clearance", r.min_clearance},
          {"nodes_checked", r.nodes_checked},
          {"violations", violations}};
}

json arc_to_json(const ArcExtension& a) {
  json nodes = json::array();
  for (size_t i = 0; i < a.t.size(); ++i)
    nodes.push_back({{"t", a.t[i]}, {"f", vec_to_json(a.f[i])}});
  json segs = json::array();
  for (const auto& h : a.h) {
    json re = json::array(), im = json::array();
    for (int c = 0; c < h.size(); ++c) {
      re.push_back(h[c].real());
      im.push_back(h[c].imag());
    }
    segs.push_back({{"h_re", re}, {"h_im", im}});
  }
  return {{"nodes", nodes}, {"segments", segs}};
}

}  // namespace minflex
