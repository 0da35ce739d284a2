// Copyright 2026 The qisom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qisom/qisom.hpp"

#include <gtest/gtest.h>

#include "qisom/random.hpp"

namespace qisom {
namespace {

std::string invariant_of(const Json& doc) {
  try {
    qmatrix_from_json(doc);
  } catch (const InvalidQMatrix& e) {
    return e.invariant();
  }
  return "";
}

TEST(QMatrixJson, RealAndComplexEntries) {
  const auto q = qmatrix_from_json(Json::parse(R"({"n": 2, "q": [[0, [0.3, 0.4]], [[0.3, -0.4], 0]]})"));
  EXPECT_EQ(q.n(), 2u);
  EXPECT_EQ(q(1, 2), Complex(0.3, 0.4));
  EXPECT_EQ(q(2, 1), Complex(0.3, -0.4));
  EXPECT_TRUE(q.isom_mode());
}

TEST(QMatrixJson, RoundTripsRandomMatrices) {
  Rng rng(61);
  for (int draw = 0; draw < 20; ++draw) {
    const auto q = draw % 2 ? random_qmatrix(3, 0.9, rng) : random_general_qmatrix(3, 0.9, rng);
    const auto back = qmatrix_from_json(Json::parse(to_json(q).dump()));
    EXPECT_EQ(back.isom_mode(), q.isom_mode());
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) EXPECT_EQ(back(i, j), q(i, j));
  }
}

TEST(QMatrixJson, ShapeErrors) {
  EXPECT_THROW(qmatrix_from_json(Json::parse(R"([1, 2])")), ParseError);
  EXPECT_THROW(qmatrix_from_json(Json::parse(R"({"n": 2})")), ParseError);
  EXPECT_THROW(qmatrix_from_json(Json::parse(R"({"n": 3, "q": [[0, 0], [0, 0]]})")), ParseError);
  EXPECT_THROW(qmatrix_from_json(Json::parse(R"({"q": [[0, "x"], [0, 0]]})")), ParseError);
  EXPECT_THROW(qmatrix_from_json(Json::parse(R"({"q": [[0], [0, 0]]})")), InvalidQMatrix);
  EXPECT_THROW(qmatrix_from_json(Json::parse(R"({"q": [[0]], "mode": "other"})")), ParseError);
}

TEST(QMatrixJson, InvariantViolationsAreNamed) {
  EXPECT_EQ(invariant_of(Json::parse(R"({"q": [[0, [0.3, 0.4]], [[0.3, 0.4], 0]]})")), QMatrix::kHermitian);
  EXPECT_EQ(invariant_of(Json::parse(R"({"q": [[0, 1.0], [1.0, 0]]})")), QMatrix::kModulus);
  EXPECT_EQ(invariant_of(Json::parse(R"({"q": [[0.5, 0], [0, 0]]})")), QMatrix::kZeroDiagonal);
  EXPECT_EQ(invariant_of(Json::parse(R"({"q": [[[0.5, 0.1], 0], [0, 0]], "mode": "general"})")), QMatrix::kRealDiagonal);
  EXPECT_EQ(invariant_of(Json::parse(R"({"q": [[0.5, 0], [0, 0]], "mode": "general"})")), "");
}

TEST(UnitaryJson, ReadsSquareMatrices) {
  const CMatrix u = matrix_from_json(Json::parse(R"({"u": [[0, [0, 1]], [1, 0]]})"), "u");
  EXPECT_EQ(u(0, 1), Complex(0, 1));
  EXPECT_EQ(u(1, 0), Complex(1, 0));
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"u": [[0, 1]]})"), "u"), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"v": [[1]]})"), "u"), ParseError);
}

TEST(Schema, IsFirstKey) {
  const Json out = with_schema(Json{{"a", 1}, {"b", 2}});
  EXPECT_EQ(out.begin().key(), "schema");
  EXPECT_EQ(out["schema"], kSchemaVersion);
  EXPECT_EQ(out.dump(), R"({"schema":1,"a":1,"b":2})");
}

TEST(ReportJson, DiagramIsStable) {
  const auto d = bratteli_closed(2, 1);
  const Json j = to_json(d);
  EXPECT_EQ(j["edges"].size(), d.edges.size());
  EXPECT_EQ(j.dump(), to_json(bratteli_closed(2, 1)).dump());
  EXPECT_EQ(j["nodes"][0]["v"], Json::parse("[0, 0]"));
}

}  // namespace
}  // namespace qisom
