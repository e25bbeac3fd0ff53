#include <doctest.h>

#include "bdyn/errors.hpp"
#include "bdyn/serialize.hpp"

using namespace bdyn;

TEST_CASE("FBP JSON round trip keeps field order and values") {
  const FBP f = make_fbp(std::polar(1.0, 0.3), {Complex(0.1, -0.2), Complex(0.5, 0.25)});
  const Json j = to_json(f);
  CHECK(j.dump() .find("{\"rho\":{\"re\":") == 0);
  const FBP g = fbp_from_json(Json::parse(j.dump()));
  CHECK(fbp_distance(f, g) == 0);
  CHECK(fbp_from_json(document("cheby", to_json(cheby_blaschke(3, 0.4)))).degree() == 3);
}

TEST_CASE("malformed FBP JSON") {
  CHECK_THROWS_AS(fbp_from_json(Json::parse("{\"rho\": 1}")), InputError);
  CHECK_THROWS_AS(fbp_from_json(Json::parse("{\"rho\": {\"re\": 1}, \"zeros\": []}")), InputError);
  CHECK_THROWS_AS(fbp_from_json(Json::parse("{\"rho\": {\"re\": 1, \"im\": 0}, \"zeros\": [{\"re\": 2, \"im\": 0}]}")),
                  DomainError);
}

TEST_CASE("exact maps from JSON") {
  const auto a = exact_blaschke_from_json(Json::parse("{\"rho\": \"1\", \"zeros\": [\"1/2\", \"1/3*i\"]}"));
  CHECK(a.degree() == 2);
  const auto b = exact_blaschke_from_json(Json::parse("{\"rho\": {\"re\": 1, \"im\": 0}, \"zeros\": [{\"re\": 0.5, \"im\": 0}]}"));
  CHECK(b.zeros()[0] == GaussianRational::parse("1/2"));
  CHECK(exact_blaschke_from_json(Json::parse("{\"power\": 3}")).degree() == 3);
  // 0.1 is not exactly representable; its exact binary value is used
  const auto c = exact_blaschke_from_json(Json::parse("{\"rho\": 1, \"zeros\": [0.1]}"));
  CHECK_FALSE(c.zeros()[0] == GaussianRational::parse("1/10"));
  CHECK_THROWS_AS(exact_blaschke_from_json(Json::parse("{\"rho\": \"1/2\", \"zeros\": [\"0\"]}")), DomainError);
}

TEST_CASE("documents carry the schema tag") {
  const Json d = document("orbit", Json{{"points", Json::array()}});
  CHECK(d["schema"] == "blaschke-dyn/1");
  CHECK(d.begin().key() == "schema");
}
