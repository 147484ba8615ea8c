#include "ccb/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccb/rng.hpp"

namespace ccb::io {

using nlohmann::json;

namespace {

Vec as_vec(const json& j, const char* what) {
  if (!j.is_array()) throw SolverError(ErrorCode::ParseError, std::string(what) + " must be an array");
  Vec v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw SolverError(ErrorCode::ParseError, std::string(what) + " must hold numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

CcbInstance parse_ccb(const json& j) {
  CcbInstance inst;
  inst.dim = j.at("dim").get<int>();
  for (const auto& jb : j.at("balls")) {
    Ball b;
    b.center = as_vec(jb.at("center"), "ball center");
    b.radius = jb.at("radius").get<double>();
    inst.balls.push_back(std::move(b));
  }
  if (inst.balls.empty()) throw SolverError(ErrorCode::ParseError, "instance has no balls");
  for (const Ball& b : inst.balls)
    if (static_cast<int>(b.center.size()) != inst.dim)
      throw SolverError(ErrorCode::ParseError, "ball center size does not match dim");
  return inst;
}

UqInstance parse_uq(const json& j) {
  UqInstance uq;
  uq.dim = j.at("dim").get<int>();
  uq.a0 = as_vec(j.at("a0"), "a0");
  for (const auto& jc : j.at("constraints")) {
    UqConstraint c;
    c.a = as_vec(jc.at("a"), "constraint a");
    c.b = jc.at("b").get<double>();
    uq.constraints.push_back(std::move(c));
  }
  if (uq.constraints.empty()) throw SolverError(ErrorCode::ParseError, "instance has no constraints");
  if (static_cast<int>(uq.a0.size()) != uq.dim)
    throw SolverError(ErrorCode::ParseError, "a0 size does not match dim");
  for (const UqConstraint& c : uq.constraints)
    if (static_cast<int>(c.a.size()) != uq.dim)
      throw SolverError(ErrorCode::ParseError, "constraint size does not match dim");
  return uq;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SolverError(ErrorCode::ParseError, e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ccb") return parse_ccb(j);
    if (kind == "uq") return parse_uq(j);
    throw SolverError(ErrorCode::ParseError, "unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw SolverError(ErrorCode::ParseError, e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorCode::Usage, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string to_canonical_json(const CcbInstance& inst) {
  json j;
  j["kind"] = "ccb";
  j["dim"] = inst.dim;
  json balls = json::array();
  for (const Ball& b : inst.balls) balls.push_back({{"center", b.center}, {"radius", b.radius}});
  j["balls"] = std::move(balls);
  return j.dump();
}

std::string to_canonical_json(const UqInstance& uq) {
  json j;
  j["kind"] = "uq";
  j["dim"] = uq.dim;
  j["a0"] = uq.a0;
  json cons = json::array();
  for (const UqConstraint& c : uq.constraints) cons.push_back({{"a", c.a}, {"b", c.b}});
  j["constraints"] = std::move(cons);
  return j.dump();
}

CcbInstance gen(int dim, int p, std::uint64_t seed, double spread, double margin) {
  if (dim < 1 || p < 1) throw SolverError(ErrorCode::Usage, "gen needs dim >= 1 and p >= 1");
  SplitMix64 rng(seed);
  Vec x0(dim);
  for (double& v : x0) v = rng.uniform(-spread, spread);
  CcbInstance inst;
  inst.dim = dim;
  inst.balls.reserve(p);
  for (int i = 0; i < p; ++i) {
    Ball b;
    b.center.resize(dim);
    for (double& v : b.center) v = rng.uniform(-spread, spread);
    b.radius = dist(x0, b.center) * (1.0 + margin) + margin;
    inst.balls.push_back(std::move(b));
  }
  return inst;
}

}  // namespace ccb::io
