#include <gtest/gtest.h>

#include "homlts/io.hpp"
#include "oracles/fixtures.hpp"

using namespace homlts;
using fixtures::F;
using fixtures::Q;
using io::Json;

namespace {
const FieldSpec kQ = FieldSpec::rationals();

Json parse(const std::string& s) { return io::parse_json(s, "test"); }

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const parse_error& e) {
    return e.what();
  }
  return "";
}

const char* kB2 = R"({
  "field": "Q",
  "dim": 2,
  "alpha": [["1", "0"], ["0", "-1"]],
  "bracket": [
    {"i": 0, "j": 1, "k": 0, "l": 1, "c": "1"},
    {"i": 0, "j": 1, "k": 1, "l": 0, "c": "1"},
    {"i": 1, "j": 0, "k": 0, "l": 1, "c": "-1"},
    {"i": 1, "j": 0, "k": 1, "l": 0, "c": "-1"}
  ],
  "multiplicative": true
}
)";
}  // namespace

TEST(AlgebraFile, MinimalFile) {
  const auto t = io::algebra_from_json<Q>(parse(R"({"field":"Q","dim":1,"alpha":[["1"]],"bracket":[]})"));
  EXPECT_EQ(t.dim(), 1u);
  EXPECT_TRUE(t.bracket().is_zero());
  EXPECT_TRUE(t.multiplicative());
  EXPECT_TRUE(check_axioms(t).passed());
}

TEST(AlgebraFile, B2RoundTripIsByteIdentical) {
  const auto t = io::algebra_from_json<Q>(parse(kB2));
  EXPECT_EQ(t, fixtures::b2<Q>());
  EXPECT_EQ(io::dump(io::algebra_to_json(t)), kB2);
  EXPECT_EQ(io::algebra_from_json<Q>(parse(io::dump(io::algebra_to_json(t)))), t);
}

TEST(AlgebraFile, EntryOrderDoesNotMatter) {
  const auto t = io::algebra_from_json<Q>(parse(R"({"field":"Q","dim":2,"alpha":[["1","0"],["0","-1"]],"bracket":[
    {"i":1,"j":0,"k":1,"l":0,"c":"-1"},{"i":0,"j":1,"k":0,"l":1,"c":"1"},
    {"i":1,"j":0,"k":0,"l":1,"c":"-1"},{"i":0,"j":1,"k":1,"l":0,"c":"1"}]})"));
  EXPECT_EQ(io::dump(io::algebra_to_json(t)), kB2);
}

TEST(AlgebraFile, PrimeFieldRoundTrip) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto t = random_homlts<F>(3, fixtures::gf101(), seed);
    const auto text = io::dump(io::algebra_to_json(t));
    EXPECT_NE(text.find("\"GF\": 101"), std::string::npos);
    const auto back = io::algebra_from_json<F>(parse(text));
    EXPECT_EQ(back, t);
    EXPECT_EQ(io::dump(io::algebra_to_json(back)), text);
  }
}

TEST(AlgebraFile, Rejections) {
  const auto bad = [](const std::string& text) {
    return error_of([&] { io::algebra_from_json<Q>(parse(text)); });
  };
  const std::string head = R"({"field":"Q","dim":2,"alpha":[["1","0"],["0","1"]],)";
  EXPECT_NE(bad(head + R"("bracket":[{"i":0,"j":1,"k":0,"l":1,"c":"1"},{"i":0,"j":1,"k":0,"l":1,"c":"2"}]})")
                .find("duplicate entry"),
            std::string::npos);
  EXPECT_NE(bad(head + R"("bracket":[{"i":0,"j":1,"k":0,"l":1,"c":1}]})").find("bracket[0].c"), std::string::npos);
  EXPECT_NE(bad(head + R"("bracket":[{"i":0,"j":1,"k":0,"l":1,"c":"2/4"}]})").find("bracket[0].c"), std::string::npos);
  EXPECT_NE(bad(head + R"("bracket":[{"i":0,"j":2,"k":0,"l":1,"c":"1"}]})").find("bracket[0].j"), std::string::npos);
  EXPECT_NE(bad(head + R"("bracket":[], "extra": 1})").find("unknown field \"extra\""), std::string::npos);
  EXPECT_NE(bad(head + R"("bracket":[], "dim": 2})").find("duplicate key"), std::string::npos);
  EXPECT_NE(bad(R"({"field":"Q","dim":2,"alpha":[["1","0"]],"bracket":[]})").find("alpha"), std::string::npos);
  EXPECT_NE(bad(R"({"field":"Q","dim":0,"alpha":[],"bracket":[]})").find("dim"), std::string::npos);
  EXPECT_NE(bad(R"({"field":"R","dim":1,"alpha":[["1"]],"bracket":[]})").find("field"), std::string::npos);
  EXPECT_NE(bad(R"({"field":"Q","dim":1,"alpha":[["1"]]})").find("missing field \"bracket\""), std::string::npos);
  EXPECT_NE(bad(R"({"field":"Q",)").find("invalid JSON"), std::string::npos);
  EXPECT_FALSE(bad(R"({"field":{"GF":101},"dim":1,"alpha":[["1"]],"bracket":[]})").empty());
}

TEST(AlgebraFile, PrimeFieldRejections) {
  const auto bad = [](const std::string& text) {
    return error_of([&] { io::algebra_from_json<F>(parse(text)); });
  };
  EXPECT_NE(bad(R"({"field":{"GF":101},"dim":1,"alpha":[["101"]],"bracket":[]})").find("alpha[0][0]"),
            std::string::npos);
  EXPECT_NE(bad(R"({"field":{"GF":101},"dim":1,"alpha":[["-1"]],"bracket":[]})").find("alpha[0][0]"),
            std::string::npos);
  EXPECT_NE(bad(R"({"field":{"GF":100},"dim":1,"alpha":[["1"]],"bracket":[]})").find("field.GF"), std::string::npos);
}

TEST(RepresentationFile, RoundTrip) {
  const auto t = fixtures::b2<Q>();
  const auto r = adjoint_rep(t);
  const auto j = io::representation_to_json(r);
  EXPECT_EQ(io::representation_from_json<Q>(parse(io::dump(j)), t), r);
  const auto triv = fixtures::trivial1(t);
  EXPECT_EQ(io::dump(io::representation_to_json(triv)), "{\"mdim\": 1, \"A\": [[\"1\"]], \"theta\": []}\n");
  EXPECT_NE(error_of([&] {
              io::representation_from_json<Q>(
                  parse(R"({"mdim":1,"A":[["1"]],"theta":[{"a":0,"b":0,"matrix":[["1"]]},{"a":0,"b":0,"matrix":[["2"]]}]})"),
                  t);
            }).find("duplicate block"),
            std::string::npos);
}

TEST(CochainFile, RoundTrip) {
  Rng rng(2);
  const auto t = fixtures::b2<Q>();
  const auto ad = adjoint_rep(t);
  for (std::size_t n = 1; n <= 5; ++n) {
    Cochain<Q> f(kQ, n, 2, 2);
    for (const auto& b : cochain_space(ad, n).basis) f.add_scaled(random_scalar<Q>(kQ, rng, 5), b);
    const auto back = io::cochain_from_json<Q>(parse(io::dump(io::cochain_to_json(f))), kQ, 2, 2);
    EXPECT_EQ(back, f);
  }
  EXPECT_NE(error_of([&] { io::cochain_from_json<Q>(parse(R"({"degree":1,"values":[{"idx":[0,1],"v":["1"]}]})"), kQ, 2, 1); })
                .find("values[0].idx"),
            std::string::npos);
  EXPECT_NE(error_of([&] {
              io::cochain_from_json<Q>(parse(R"({"degree":1,"values":[{"idx":[0],"v":["1"]},{"idx":[0],"v":["2"]}]})"), kQ, 2, 1);
            }).find("duplicate tuple"),
            std::string::npos);
}

TEST(DeformationFile, RoundTrip) {
  const auto t = fixtures::b2<Q>();
  const TruncatedDeformation<Q> D(t, {t.bracket(), Cochain<Q>(kQ, 3, 2, 2)});
  const auto text = io::dump(io::deformation_to_json(D));
  EXPECT_EQ(io::deformation_from_json<Q>(parse(text), t), D);
  EXPECT_NE(error_of([&] { io::deformation_from_json<Q>(parse(R"({"order":2,"jets":[]})"), t); }).find("jets"),
            std::string::npos);
  const FormalIsomorphism<Q> phi{{Q(mpq_class(1, 2)) * Matrix<Q>::identity(kQ, 2)}};
  const auto iso = io::isomorphism_from_json<Q>(parse(io::dump(io::isomorphism_to_json(phi))), t);
  EXPECT_EQ(iso.phis, phi.phis);
}

TEST(ExtensionFile, ContainsAlgebraAndMaps) {
  const auto t = fixtures::b2<Q>();
  const auto g = cochain_space(fixtures::trivial1(t), 3).basis.at(0);
  const auto j = io::extension_to_json(build_extension(t, fixtures::trivial1(t), g));
  const auto total = io::algebra_from_json<Q>(j["algebra"]);
  EXPECT_EQ(total.dim(), 3u);
  EXPECT_TRUE(check_axioms(total).passed());
  EXPECT_EQ(j["iota"].size(), 3u);
  EXPECT_EQ(j["pi"].size(), 2u);
}
