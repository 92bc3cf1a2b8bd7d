#include <gtest/gtest.h>

#include "support.hpp"

using namespace arrangelab;
using testsupport::gaussian;

namespace {

Arrangement ft2() { return example_arrangement(2.0); }

bool has_point(const std::vector<IntersectionPoint>& pts, Point p, std::vector<std::size_t> lines) {
    for (const auto& ip : pts)
        if (distance(ip.location, p) < 1e-12 && ip.incident == lines) return true;
    return false;
}

}  // namespace

TEST(Line, NormalizesLargestCoefficientToOne) {
    const Line l(2.0, 4.0, 6.0);
    EXPECT_EQ(l.b(), cplx(1.0));
    EXPECT_EQ(l.a(), cplx(0.5));
    EXPECT_EQ(l.c(), cplx(1.5));
    const Line tie(3.0, -3.0, 1.0);
    EXPECT_EQ(tie.a(), cplx(1.0));
    EXPECT_EQ(tie.b(), cplx(-1.0));
}

TEST(Line, NormalizationIsIdempotent) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
        const Line l(gaussian(rng, false), gaussian(rng, false), gaussian(rng, false));
        EXPECT_EQ(Line(l.a(), l.b(), l.c()), l);
    }
}

TEST(Line, RejectsDegenerateAndNonFinite) {
    EXPECT_THROW(Line(0.0, 0.0, 1.0), DegenerateLineError);
    EXPECT_THROW(Line(NAN, 1.0, 0.0), Error);
}

TEST(Parse, CoordinateAxes) {
    const auto arr = parse_arrangement(R"({"lines": [{"a": 0, "b": 1, "c": 0}, {"a": [1, 0], "b": 0, "c": 0}]})");
    ASSERT_EQ(arr.size(), 2u);
    EXPECT_EQ(arr[0], Line(0.0, 1.0, 0.0));
    EXPECT_EQ(arr[1], Line(1.0, 0.0, 0.0));
}

TEST(Parse, FourLineExample) {
    const auto arr = parse_arrangement(
        R"({"lines": [{"a":1,"b":0,"c":0},{"a":0,"b":1,"c":0},{"a":1,"b":1,"c":-4},{"a":1,"b":-2,"c":0}]})");
    EXPECT_EQ(arr.size(), 4u);
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_arrangement(R"({"lines": [{"a": 0, "b": 0, "c": 1}]})"), DegenerateLineError);
    EXPECT_THROW(parse_arrangement(R"({"lines": [{"a": 1, "b": 0, "c": 1}, {"a": 2, "b": 0, "c": 2}]})"),
                 DuplicateLineError);
    EXPECT_THROW(parse_arrangement("{\"lines\": ["), ParseError);
    EXPECT_THROW(parse_arrangement(R"({"lines": [{"a": 1, "b": 0}]})"), ParseError);
    EXPECT_THROW(parse_arrangement(R"({"lines": [{"a": "x", "b": 0, "c": 0}]})"), ParseError);
    EXPECT_THROW(parse_arrangement(R"({"lines": []})"), Error);
    EXPECT_THROW(parse_arrangement(R"([1, 2])"), ParseError);
}

TEST(Parse, RoundTripIsIdentityOnNormalizedArrangements) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
        const auto arr = testsupport::random_generic(rng, testsupport::random_partition(rng, 2 + k % 6));
        const auto back = parse_arrangement(serialize_arrangement(arr));
        ASSERT_EQ(back.size(), arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) EXPECT_EQ(back[i], arr[i]);
    }
}

TEST(Directions, AxisParallel) {
    const Arrangement arr({Line(1, 0, 0), Line(1, 0, -1), Line(0, 1, 0)});
    const auto d = directions(arr);
    EXPECT_TRUE(same_direction(d[0], d[1]));
    EXPECT_EQ(d[0].a, cplx(1.0));
    EXPECT_EQ(d[0].b, cplx(0.0));
    EXPECT_EQ(d[2].a, cplx(0.0));
    EXPECT_EQ(d[2].b, cplx(1.0));
}

TEST(Directions, ExampleDirectionsPairwiseDistinct) {
    const auto d = directions(ft2());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) EXPECT_FALSE(same_direction(d[i], d[j]));
}

TEST(Directions, SingleLineNormalized) {
    const auto d = directions(Arrangement({Line(2, 2, 1)}));
    EXPECT_EQ(d[0].a, cplx(1.0));
    EXPECT_EQ(d[0].b, cplx(1.0));
}

TEST(Combinatorics, Examples) {
    const auto seven = Arrangement({Line(0, 1, 0), Line(0, 1, -1), Line(0, 1, -2.5), Line(1, 0, 0), Line(1, 0, -1.7),
                                    Line(1, 1, -0.3), Line(1, -1, 0.45)});
    EXPECT_EQ(combinatorics(seven).class_sizes, (std::vector<int>{3, 2, 1, 1}));
    EXPECT_EQ(combinatorics(Arrangement({Line(1, 0, 0), Line(0, 1, 0)})).class_sizes, (std::vector<int>{1, 1}));
    EXPECT_EQ(combinatorics(Arrangement({Line(1, 0, 0), Line(1, 0, -1), Line(1, 0, -2)})).class_sizes,
              (std::vector<int>{3}));
}

TEST(Combinatorics, SizesSumToDegree) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        const int d = 2 + k % 9;
        const auto arr = testsupport::random_generic(rng, testsupport::random_partition(rng, d));
        EXPECT_EQ(combinatorics(arr).degree(), d);
    }
}

TEST(Intersections, Examples) {
    const auto xy = intersections(Arrangement({Line(1, 0, 0), Line(0, 1, 0)}));
    ASSERT_EQ(xy.size(), 1u);
    EXPECT_EQ(xy[0].multiplicity(), 2);

    const auto pts = intersections(ft2());
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_TRUE(has_point(pts, {0.0, 0.0}, {0, 1, 3}));
    EXPECT_TRUE(has_point(pts, {0.0, 4.0}, {0, 2}));
    EXPECT_TRUE(has_point(pts, {4.0, 0.0}, {1, 2}));
    EXPECT_TRUE(has_point(pts, {8.0 / 3.0, 4.0 / 3.0}, {2, 3}));

    EXPECT_TRUE(intersections(Arrangement({Line(1, 0, 0), Line(1, 0, -1)})).empty());
}

TEST(Intersections, AmbiguousClusteringRaises) {
    // The third line meets the axes 1.5e-9 away from their double point.
    const Arrangement arr({Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, 1.5e-9)});
    EXPECT_THROW(intersections(arr), ClusterAmbiguityError);
}

TEST(Genericity, Examples) {
    const auto ft = is_generic(ft2());
    EXPECT_FALSE(ft.is_generic);
    ASSERT_EQ(ft.triple_points.size(), 1u);
    EXPECT_LT(norm(ft.triple_points[0].location), 1e-12);

    EXPECT_TRUE(is_generic(Arrangement({Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, -1)})).is_generic);

    const auto par = is_generic(Arrangement({Line(1, 0, 0), Line(1, 0, -1), Line(1, 0, -2)}));
    EXPECT_FALSE(par.is_generic);
    EXPECT_TRUE(par.all_parallel);
}

TEST(Evaluate, Examples) {
    const Arrangement xy({Line(1, 0, 0), Line(0, 1, 0)});
    auto e = evaluate(xy, {1.0, 1.0});
    EXPECT_EQ(e.value, cplx(1.0));
    EXPECT_EQ(e.gradient[0], cplx(1.0));
    EXPECT_EQ(e.gradient[1], cplx(1.0));
    e = evaluate(xy, {0.0, 0.0});
    EXPECT_EQ(e.value, cplx(0.0));
    EXPECT_EQ(e.gradient[0], cplx(0.0));

    const Arrangement tri({Line(1, 0, 0), Line(0, 1, 0), Line(1, 1, -1)});
    e = evaluate(tri, {1.0 / 3.0, 1.0 / 3.0});
    EXPECT_NEAR(std::abs(e.value - cplx(-1.0 / 27.0)), 0.0, 1e-15);
    EXPECT_LT(std::abs(e.gradient[0]) + std::abs(e.gradient[1]), 1e-15);
}

TEST(Evaluate, GradientMatchesCentralDifferences) {
    std::mt19937_64 rng(17);
    const double h = 1e-6;
    int checked = 0;
    while (checked < 100) {
        const auto arr = testsupport::random_generic(rng, testsupport::random_partition(rng, 2 + checked % 5));
        const Point p{gaussian(rng, false), gaussian(rng, false)};
        if (arrangement_distance(arr, p) < 0.1) continue;
        const auto e = evaluate(arr, p);
        const cplx fx = (evaluate(arr, {p.x + h, p.y}).value - evaluate(arr, {p.x - h, p.y}).value) / (2 * h);
        const cplx fy = (evaluate(arr, {p.x, p.y + h}).value - evaluate(arr, {p.x, p.y - h}).value) / (2 * h);
        const double scale = std::max(std::abs(e.gradient[0]), std::abs(e.gradient[1]));
        EXPECT_LT(std::abs(fx - e.gradient[0]) / scale, 1e-6);
        EXPECT_LT(std::abs(fy - e.gradient[1]) / scale, 1e-6);
        ++checked;
    }
}

TEST(Scaling, SingleLineScaleLeavesEverythingUnchanged) {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 20; ++k) {
        const auto arr = testsupport::random_generic(rng, testsupport::random_partition(rng, 3 + k % 4));
        const cplx lambda = gaussian(rng, false);
        std::vector<Line> raw;
        std::vector<Triple> triples;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            Triple t = arr[i].coefficients();
            if (i == 0)
                for (auto& z : t) z *= lambda;
            triples.push_back(t);
            raw.emplace_back(t[0], t[1], t[2]);
        }
        const Arrangement scaled(raw);
        EXPECT_LT(proportionality_gap(scaled[0], arr[0]), 1e-15);
        EXPECT_LT(std::abs(scaled[0].a() - arr[0].a()) + std::abs(scaled[0].b() - arr[0].b()), 1e-12);
        EXPECT_EQ(combinatorics(scaled), combinatorics(arr));
        EXPECT_EQ(intersections(scaled).size(), intersections(arr).size());

        // The unnormalized product scales by exactly lambda.
        const Point p{gaussian(rng, false), gaussian(rng, false)};
        cplx raw_value = 1.0;
        for (const auto& t : triples) raw_value *= t[0] * p.x + t[1] * p.y + t[2];
        EXPECT_LT(std::abs(raw_value - lambda * evaluate(arr, p).value), 1e-12 * std::abs(raw_value) + 1e-300);
    }
}

TEST(AffineEquivariance, IntersectionsMoveWithTheMap) {
    std::mt19937_64 rng(29);
    for (int k = 0; k < 20; ++k) {
        const auto arr = testsupport::random_generic(rng, testsupport::random_partition(rng, 3 + k % 4));
        // T(x, y) = M (x, y) + v; the image of l is l o T^-1.
        const cplx m00 = gaussian(rng, false), m01 = gaussian(rng, false), m10 = gaussian(rng, false),
                   m11 = gaussian(rng, false);
        const cplx v0 = gaussian(rng, false), v1 = gaussian(rng, false);
        const cplx det = m00 * m11 - m01 * m10;
        const cplx i00 = m11 / det, i01 = -m01 / det, i10 = -m10 / det, i11 = m00 / det;
        std::vector<Line> lines;
        for (const auto& l : arr) {
            const cplx a = l.a() * i00 + l.b() * i10;
            const cplx b = l.a() * i01 + l.b() * i11;
            const cplx c = l.c() - a * v0 - b * v1;
            lines.emplace_back(a, b, c);
        }
        const Arrangement image(lines);
        EXPECT_EQ(combinatorics(image), combinatorics(arr));
        const auto before = intersections(arr);
        const auto after = intersections(image);
        ASSERT_EQ(before.size(), after.size());
        for (const auto& ip : before) {
            const Point q{m00 * ip.location.x + m01 * ip.location.y + v0, m10 * ip.location.x + m11 * ip.location.y + v1};
            EXPECT_TRUE(std::any_of(after.begin(), after.end(), [&](const auto& jp) {
                return jp.incident == ip.incident && distance(jp.location, q) < 1e-8 * std::max(1.0, norm(q));
            }));
        }
    }
}
