#include "ukepler/io.hpp"

#include <fstream>

#include "json.hpp"

namespace ukepler {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_parse("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw_parse("malformed JSON in " + path + ": " + ex.what());
  }
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw_parse("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

Element<double> load_element(const std::string& path) {
  const json j = read_json(path);
  try {
    const std::string algebra = j.at("algebra").get<std::string>();
    if (algebra == "gamma3") {
      const auto vec = j.at("vec").get<std::vector<double>>();
      if (vec.size() != 3) throw_parse(path + ": gamma3 vec must have 3 entries");
      return Element<double>::gamma3(j.at("x0").get<double>(), {vec[0], vec[1], vec[2]});
    }
    if (algebra != "hn") throw_parse(path + ": unknown algebra tag '" + algebra + "'");
    const int n = j.at("n").get<int>();
    const auto desc = AlgebraDescriptor::hermitian(n);
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != n * n || static_cast<int>(im.size()) != n * n)
      throw_parse(path + ": re/im must each have n*n entries");
    Element<double> e = Element<double>::zero(desc);
    for (int i = 0; i < n * n; ++i)
      e.mat[static_cast<size_t>(i)] = {re[static_cast<size_t>(i)], im[static_cast<size_t>(i)]};
    if (hermiticity_residual(e) > 1e-12)
      throw_parse(path + ": matrix is not hermitian within 1e-12");
    return e;
  } catch (const json::exception& ex) {
    throw_parse(path + ": " + ex.what());
  }
}

void save_element(const std::string& path, const Element<double>& e) {
  json j;
  if (e.desc.tag == AlgebraTag::Gamma3) {
    j["algebra"] = "gamma3";
    j["x0"] = e.g0;
    j["vec"] = {e.gv[0], e.gv[1], e.gv[2]};
  } else {
    j["algebra"] = "hn";
    j["n"] = e.desc.n;
    std::vector<double> re, im;
    re.reserve(e.mat.size());
    im.reserve(e.mat.size());
    for (const auto& c : e.mat) {
      re.push_back(c.re);
      im.push_back(c.im);
    }
    j["re"] = re;
    j["im"] = im;
  }
  write_json(path, j);
}

PhasePoint load_phase_point(const std::string& path) {
  const json j = read_json(path);
  try {
    const std::string algebra = j.at("algebra").get<std::string>();
    AlgebraDescriptor desc;
    if (algebra == "gamma3")
      desc = AlgebraDescriptor::gamma3();
    else if (algebra == "hn")
      desc = AlgebraDescriptor::hermitian(j.at("n").get<int>());
    else
      throw_parse(path + ": unknown algebra tag '" + algebra + "'");
    const int pivot = j.value("pivot", 0);
    const auto q = j.at("q").get<std::vector<double>>();
    const auto p = j.at("p").get<std::vector<double>>();
    return lift(make_chart_point(desc, pivot, q), p);
  } catch (const json::exception& ex) {
    throw_parse(path + ": " + ex.what());
  }
}

void save_phase_point(const std::string& path, const PhasePoint& ph) {
  json j;
  j["algebra"] = tag_name(ph.point.desc.tag);
  j["n"] = ph.point.desc.n;
  j["pivot"] = ph.point.pivot;
  j["q"] = ph.point.q;
  j["p"] = ph.p;
  write_json(path, j);
}

GeneratorSpec load_generator_spec(const std::string& path, const AlgebraDescriptor& expected) {
  const json j = read_json(path);
  try {
    const std::string kind_str = j.at("kind").get<std::string>();
    const auto kind = kind_from_name(kind_str);
    if (!kind) throw_parse(path + ": unknown generator kind '" + kind_str + "'");
    GeneratorSpec spec{*kind, std::nullopt, std::nullopt};
    if (j.contains("u")) {
      spec.u = load_element(j.at("u").get<std::string>());
      if (!(spec.u->desc == expected)) throw_parse(path + ": element 'u' algebra mismatch");
    }
    if (j.contains("v")) {
      spec.v = load_element(j.at("v").get<std::string>());
      if (!(spec.v->desc == expected)) throw_parse(path + ": element 'v' algebra mismatch");
    }
    return spec;
  } catch (const json::exception& ex) {
    throw_parse(path + ": " + ex.what());
  }
}

}  // namespace ukepler
