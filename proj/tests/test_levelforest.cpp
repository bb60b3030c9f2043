#include <string>

#include "doctest.h"
#include "dendrotensor/level_forest.hpp"

using namespace dendrotensor;

namespace {

const char* kFigure =
    R"({"levels":[["1","2","3","4"],["1","2","3"],["1"]],)"
    R"("maps":[{"1":"1","2":"1","3":"3","4":"3"},{"1":"1","2":"1","3":"*"}]})";

}  // namespace

TEST_CASE("omega reproduces the worked example") {
  auto a = parse_fin_simplex(kFigure);
  auto f = omega(a);
  CHECK(to_string(f) == "{ℓ2:1[ℓ1:1[ℓ0:1,ℓ0:2],ℓ1:2[]];ℓ1:3[ℓ0:3,ℓ0:4]}");
  CHECK(f.edge_count() == 8);
  CHECK(f.component_count() == 2);
  CHECK(parse_fin_simplex(to_json(a)) == a);
}

TEST_CASE("omega on small simplices") {
  CHECK(to_string(omega(parse_fin_simplex(R"({"levels":[["1","2"]],"maps":[]})"))) ==
        "{ℓ0:1;ℓ0:2}");
  CHECK(to_string(omega(parse_fin_simplex(R"({"levels":[[]]})"))) == "{}");
  auto lin = omega(parse_fin_simplex(R"({"levels":[["1"],["1"]],"maps":[{"1":"1"}]})"));
  CHECK(to_string(lin) == "{ℓ1:1[ℓ0:1]}");
  CHECK_THROWS_AS(parse_fin_simplex(R"({"levels":[["1"],["1"]],"maps":[{}]})"), ParseError);
  CHECK_THROWS_AS(parse_fin_simplex("{"), ParseError);
}

TEST_CASE("omega on operators") {
  auto a = parse_fin_simplex(kFigure);
  CHECK(omega(SimplicialOperator::identity(2), a) == identity_map(share(omega(a))));

  auto d1 = omega(SimplicialOperator::face(1, 2), a);
  CHECK(validate(d1).empty());
  CHECK(to_string(*d1.source) == "{ℓ1:1[ℓ0:1,ℓ0:2];ℓ0:3;ℓ0:4}");
  const auto& t = *d1.target;
  auto img = d1.vertex_map.at(d1.source->at("ℓ1:1"));
  CHECK(img.output == t.at("ℓ2:1"));
  CHECK(img.inputs == std::vector<EdgeIndex>{t.at("ℓ0:1"), t.at("ℓ0:2")});
  auto ops = operations(t, img.output);
  CHECK(std::find(ops.begin(), ops.end(), img) != ops.end());

  auto s0 = SimplicialOperator::degeneracy(0, 2);
  auto d0 = SimplicialOperator::face(0, 3);
  CHECK(compose(s0, d0) == SimplicialOperator::identity(2));
  auto lhs = omega(compose(s0, d0), a);
  auto rhs = compose(omega(d0, restrict(a, s0)), omega(s0, a));
  CHECK(lhs == rhs);
  CHECK(lhs == identity_map(share(omega(a))));
}

TEST_CASE("retract witness") {
  auto check = [](const std::string& text) {
    auto f = parse_forest(text);
    auto w = retract_witness(f);
    CHECK(validate(w.section).empty());
    CHECK(validate(w.retraction).empty());
    CHECK(compose(w.section, w.retraction) == identity_map(w.section.source));
    CHECK(w.padded.edge_count() == w.retraction.source->edge_count());
    return w;
  };
  auto w = check("{r[a,b[]]}");
  CHECK(to_string(w.padded) == "{r[a[a1],b[]]}");
  CHECK(w.simplex.level(0) == std::vector<std::string>{"a1"});
  CHECK(w.simplex.level(2) == std::vector<std::string>{"r"});
  auto stump = check("{r[]}");
  CHECK(stump.simplex.level(0).empty());
  CHECK(stump.simplex.level(1) == std::vector<std::string>{"r"});
  auto fig = check("{x[y[z,w],u[]];p[q,s]}");
  CHECK(fig.padded.edge_count() == 8);
  auto empty = check("{}");
  CHECK(empty.simplex.length() == 0);
  check("{e}");
  check("{r[a1,a[]]}");
}
