#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "irbox/fractal_gasket.hpp"
#include "test_util.hpp"

using namespace irbox;

namespace {

Rational abs(const Rational& q) { return q < Rational(0) ? Rational(0) - q : q; }

// Shoelace area from the vertex coordinates alone.
Rational shoelace_area(const DyadicTriangle& t) {
  auto v = t.vertices();
  Rational twice(0);
  for (int i = 0; i < 3; ++i) {
    const auto& p = v[static_cast<std::size_t>(i)];
    const auto& q = v[static_cast<std::size_t>((i + 1) % 3)];
    twice += p.x.to_rational() * q.y.to_rational() - q.x.to_rational() * p.y.to_rational();
  }
  return abs(twice) / Rational(2);
}

// Leg length from the vertex coordinates alone.
Rational leg_from_vertices(const DyadicTriangle& t) {
  auto v = t.vertices();
  return abs(v[1].x.to_rational() - v[0].x.to_rational()) +
         abs(v[1].y.to_rational() - v[0].y.to_rational());
}

using Key = std::tuple<int, std::int64_t, std::int64_t, int>;
Key key(const DyadicTriangle& t) {
  return {t.leg_log2, t.corner_x, t.corner_y, static_cast<int>(t.right_angle)};
}

}  // namespace

TEST_SUITE("fractal_gasket") {
  TEST_CASE("initial state is the square split along the unity line") {
    auto s = initial_state();
    CHECK(s.depth == 0);
    CHECK(s.remaining.size() == 2);
    CHECK(s.removed_count_total == 0);
    CHECK(s.area_removed == Rational(0));
    CHECK(enumerated_area(s.remaining) == Rational(1));
    CHECK(s.perimeter_coefficient == Rational(2));
    CHECK(perimeter_value(s.perimeter_coefficient) == doctest::Approx(6.828427124746190));
    // Both halves meet along d = e: vertices (0,0) and (1,1) are shared.
    for (const auto& t : s.remaining) {
      auto v = t.vertices();
      int on_diagonal = 0;
      for (const auto& p : v) on_diagonal += p.x == p.y;
      CHECK(on_diagonal == 2);
    }
  }

  TEST_CASE("first iterations match the removal counts") {
    auto s1 = iterate(initial_state());
    CHECK(s1.depth == 1);
    CHECK(s1.remaining.size() == 6);
    CHECK(s1.removed_last_step == 2);
    CHECK(s1.removed_count_total == 2);
    CHECK(s1.area_removed == Rational(1, 4));
    auto s2 = iterate(s1);
    CHECK(s2.remaining.size() == 18);
    CHECK(s2.removed_last_step == 6);
    CHECK(s2.removed_count_total == 8);
    CHECK(s2.area_removed == Rational(7, 16));
    auto s5 = build_gasket(5);
    CHECK(s5.remaining.size() == 486);
    CHECK(s5.area_removed == Rational(781, 1024));
    CHECK(s5.area_removed.to_string() == "781/1024");
  }

  TEST_CASE("closed forms") {
    CHECK(closed_form_area_removed(0) == Rational(0));
    CHECK(closed_form_area_removed(1) == Rational(1, 4));
    CHECK(closed_form_area_removed(3) == Rational(37, 64));
    CHECK(closed_form_perimeter(0) == Rational(2));
    CHECK(closed_form_perimeter(1) == Rational(3));
    CHECK(closed_form_perimeter(10) == Rational(59049, 512));
    CHECK(perimeter_value(closed_form_perimeter(10)) == doctest::Approx(393.9).epsilon(1e-3));
    CHECK(cumulative_perimeter_series(1) == Rational(3, 2));
    CHECK(cumulative_perimeter_series(2) == Rational(15, 4));
  }

  TEST_CASE("state invariants agree with an independent vertex-based oracle") {
    auto s = initial_state();
    std::uint64_t pow3 = 1;
    for (int k = 0; k <= 7; ++k) {
      CAPTURE(k);
      CHECK(s.remaining.size() == 2 * pow3);
      CHECK(s.removed_count_total == pow3 - 1);
      if (k > 0) CHECK(s.removed_last_step == 2 * pow3 / 3);
      Rational area(0), legs(0);
      for (const auto& t : s.remaining) {
        CHECK(shoelace_area(t) == t.area());
        area += shoelace_area(t);
        legs += leg_from_vertices(t);
      }
      CHECK(area == Rational::pow(Rational(3, 4), k));
      CHECK(Rational(1) - area == s.area_removed);
      CHECK(s.area_removed == closed_form_area_removed(k));
      CHECK(legs == s.perimeter_coefficient);
      CHECK(legs == closed_form_perimeter(k));
      pow3 *= 3;
      if (k < 7) s = iterate(s);
    }
  }

  TEST_CASE("triangle shape") {
    for (const auto& t : build_gasket(3).remaining) {
      auto v = t.vertices();
      const Rational leg = Rational::power_of_two(-t.leg_log2);
      // axis-parallel legs of equal length from the right-angle corner
      CHECK(v[1].y == v[0].y);
      CHECK(abs(v[1].x.to_rational() - v[0].x.to_rational()) == leg);
      CHECK(v[2].x == v[0].x);
      CHECK(abs(v[2].y.to_rational() - v[0].y.to_rational()) == leg);
      CHECK(t.area() == Rational::power_of_two(-2 * t.leg_log2 - 1));
      CHECK(t.perimeter_coefficient() == leg);
    }
  }

  TEST_CASE("medial removal partitions the parent") {
    auto parent = initial_state().remaining[0];
    auto kids = parent.corner_children();
    auto mid = parent.medial();
    Rational sum = mid.area();
    for (const auto& k : kids) sum += k.area();
    CHECK(sum == parent.area());
    CHECK(mid.right_angle != parent.right_angle);
    for (const auto& k : kids) CHECK(k.right_angle == parent.right_angle);
  }

  TEST_CASE("self-similarity: each child is a contraction image of its parent") {
    auto s = build_gasket(3);
    auto next = iterate(s);
    std::set<Key> images;
    for (const auto& t : s.remaining) {
      for (const auto& map : contraction_maps(t)) images.insert(key(map.apply(t)));
    }
    std::set<Key> children;
    for (const auto& t : next.remaining) children.insert(key(t));
    CHECK(images == children);
  }

  TEST_CASE("contraction maps halve distances toward their fixed point") {
    auto t = initial_state().remaining[1];
    for (const auto& map : contraction_maps(t)) {
      auto img = map.apply(t);
      CHECK(img.leg_log2 == t.leg_log2 + 1);
      auto fp = map.fixed_point;
      CHECK(map.apply(fp) == fp);
    }
  }

  TEST_CASE("nesting: deeper sets lie inside shallower ones") {
    auto parent = build_gasket(3);
    auto child = iterate(parent);
    for (const auto& t : child.remaining) {
      for (const auto& v : t.vertices()) {
        auto x = v.x.to_rational(), y = v.y.to_rational();
        bool inside = std::any_of(parent.remaining.begin(), parent.remaining.end(),
                                  [&](const DyadicTriangle& p) { return p.contains(x, y); });
        CHECK(inside);
      }
      // an interior point of each child
      auto v = t.vertices();
      auto cx = (v[0].x.to_rational() + v[1].x.to_rational() + v[2].x.to_rational()) / Rational(3);
      auto cy = (v[0].y.to_rational() + v[1].y.to_rational() + v[2].y.to_rational()) / Rational(3);
      CHECK(t.contains(cx, cy));
      CHECK(std::any_of(parent.remaining.begin(), parent.remaining.end(),
                        [&](const DyadicTriangle& p) { return p.contains(cx, cy); }));
    }
    // The centroid of a removed medial triangle is in no remaining triangle.
    auto removed = parent.remaining[0].medial();
    auto v = removed.vertices();
    auto cx = (v[0].x.to_rational() + v[1].x.to_rational() + v[2].x.to_rational()) / Rational(3);
    auto cy = (v[0].y.to_rational() + v[1].y.to_rational() + v[2].y.to_rational()) / Rational(3);
    CHECK(std::none_of(child.remaining.begin(), child.remaining.end(),
                       [&](const DyadicTriangle& p) { return p.contains(cx, cy); }));
  }

  TEST_CASE("perimeter grows without bound") {
    Rational prev = closed_form_perimeter(0);
    for (int k = 1; k <= 30; ++k) {
      auto q = closed_form_perimeter(k);
      CHECK(q > prev);
      prev = q;
    }
    // bound B = 1000 is exceeded once k > log(B / (2(2+sqrt 2))) / log(3/2)
    const double k_star = std::log(1000.0 / (2 * (2 + std::sqrt(2.0)))) / std::log(1.5);
    const int k = static_cast<int>(std::floor(k_star)) + 1;
    CHECK(perimeter_value(closed_form_perimeter(k)) > 1000.0);
    CHECK(perimeter_value(closed_form_perimeter(k - 1)) <= 1000.0);
  }

  TEST_CASE("depth cap") {
    CHECK_ERROR_CODE(build_gasket(3, GasketLimits{2}), ErrorCode::DepthLimit);
    CHECK_ERROR_CODE(build_gasket(13), ErrorCode::DepthLimit);
    CHECK_NOTHROW(build_gasket(2, GasketLimits{2}));
  }

  TEST_CASE("binary triangle list round-trips") {
    auto s = build_gasket(4);
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    write_triangle_list(buf, s.depth, s.remaining);
    const std::string bytes = buf.str();
    CHECK(bytes.substr(0, 4) == "IRGT");
    CHECK(bytes.size() == 4 + 4 + 4 + 8 + s.remaining.size() * (4 + 1 + 8 + 4 + 8 + 4));
    auto list = read_triangle_list(buf);
    CHECK(list.depth == 4);
    CHECK(list.triangles == s.remaining);
  }

  TEST_CASE("malformed triangle lists are rejected") {
    auto s = build_gasket(1);
    std::ostringstream out(std::ios::binary);
    write_triangle_list(out, s.depth, s.remaining);
    const std::string good = out.str();

    std::string bad_magic = good;
    bad_magic[0] = 'X';
    std::istringstream in1(bad_magic, std::ios::binary);
    CHECK_ERROR_CODE(read_triangle_list(in1), ErrorCode::MalformedInput);

    std::istringstream in2(good.substr(0, good.size() - 3), std::ios::binary);
    CHECK_ERROR_CODE(read_triangle_list(in2), ErrorCode::MalformedInput);

    std::istringstream in3(std::string{}, std::ios::binary);
    CHECK_ERROR_CODE(read_triangle_list(in3), ErrorCode::MalformedInput);
  }

  TEST_CASE("dyadic normalization") {
    auto d = Dyadic::from_units(12, 4);  // 12/16 = 3/4
    CHECK(d.numerator == 3);
    CHECK(d.exponent == 2);
    CHECK(d.to_units(4) == 12);
    CHECK(d.to_rational() == Rational(3, 4));
    CHECK(d.to_double() == 0.75);
    CHECK(Dyadic::from_units(0, 7) == Dyadic{0, 0});
  }
}
