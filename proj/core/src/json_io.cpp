// Copyright 2026 The combcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "combcert/json_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "combcert/error.hpp"

namespace combcert {

namespace {

void need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kParse, std::string("missing field '") + key + "'");
  }
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  need(j, "rows");
  need(j, "cols");
  need(j, "re");
  need(j, "im");
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  if (rows < 0 || cols < 0 || !re.is_array() || !im.is_array() ||
      re.size() != static_cast<std::size_t>(rows * cols) ||
      im.size() != re.size()) {
    throw Error(ErrorCode::kParse, "matrix entry count does not match shape");
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      m(r, c) = Complex(re[k].get<double>(), im[k].get<double>());
    }
  }
  return m;
}

Json to_json(const LabeledOperator& x) {
  Json j = to_json(x.matrix());
  Json spaces = Json::array();
  for (const auto& s : x.spaces()) {
    spaces.push_back({{"label", s.label}, {"dim", s.dim}});
  }
  j["spaces"] = spaces;
  return j;
}

LabeledOperator labeled_from_json(const Json& j) {
  need(j, "spaces");
  SpaceList spaces;
  for (const auto& s : j.at("spaces")) {
    need(s, "label");
    need(s, "dim");
    spaces.push_back({s.at("label").get<std::string>(),
                      s.at("dim").get<std::size_t>()});
  }
  return LabeledOperator(matrix_from_json(j), std::move(spaces));
}

Json to_json(const Channel& ch) {
  Json kraus = Json::array();
  for (const auto& e : ch.kraus) kraus.push_back(to_json(e));
  return Json{{"d_in", ch.d_in}, {"d_out", ch.d_out}, {"kraus", kraus}};
}

Channel channel_from_json(const Json& j) {
  need(j, "d_in");
  need(j, "d_out");
  need(j, "kraus");
  Channel ch;
  ch.d_in = j.at("d_in").get<std::size_t>();
  ch.d_out = j.at("d_out").get<std::size_t>();
  for (const auto& e : j.at("kraus")) ch.kraus.push_back(matrix_from_json(e));
  ch.validate();
  return ch;
}

Json to_json(const Comb& c) {
  Json j = to_json(c.op);
  j["space_sequence"] = c.sequence;
  Json cert = Json::array();
  for (const auto& x : c.certificate) cert.push_back(to_json(x));
  j["certificate"] = cert;
  return j;
}

std::uint64_t fnv1a64(const ComplexMatrix& m) {
  std::uint64_t h = 14695981039346656037ULL;
  auto eat = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t k = 0; k < n; ++k) {
      h ^= b[k];
      h *= 1099511628211ULL;
    }
  };
  const std::int64_t shape[2] = {m.rows(), m.cols()};
  eat(shape, sizeof shape);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double re = m(r, c).real() + 0.0, im = m(r, c).imag() + 0.0;  // −0 → +0
      eat(&re, sizeof re);
      eat(&im, sizeof im);
    }
  }
  return h;
}

std::string matrix_hash(const ComplexMatrix& m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(m)));
  return buf;
}

Json matrix_ref(const ComplexMatrix& m, bool embed) {
  Json j{{"hash", matrix_hash(m)}, {"rows", m.rows()}, {"cols", m.cols()}};
  if (embed) {
    const Json full = to_json(m);
    j["re"] = full["re"];
    j["im"] = full["im"];
  }
  return j;
}

Json to_json(const HardInstanceSpec& spec) {
  const HardInstanceResiduals r = residuals(spec);
  return Json{{"d1", spec.d1},
              {"d2", spec.d2},
              {"epsilon", spec.epsilon},
              {"seed", spec.seed},
              {"hash", matrix_hash(spec.v)},
              {"v0", to_json(spec.v0)},
              {"delta", to_json(spec.delta)},
              {"u", to_json(spec.u)},
              {"frame", to_json(spec.frame)},
              {"v", to_json(spec.v)},
              {"residuals",
               {{"v0_isometry", r.v0_isometry},
                {"delta_isometry", r.delta_isometry},
                {"orthogonality", r.orthogonality},
                {"v_isometry", r.v_isometry},
                {"u_unitarity", r.u_unitarity}}}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kParse, "write failed for '" + path + "'");
}

}  // namespace combcert
