#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "focir/activation.hpp"
#include "focir/layers/shape_ops.hpp"
#include "focir/rng.hpp"
#include "focir/tensor.hpp"

using namespace focir;

TEST_CASE("tensor shape and row-major indexing", "[tensor]") {
    Tensor t({2, 3});
    REQUIRE(t.size() == 6);
    t(1, 2) = 7.0;
    REQUIRE(t[5] == 7.0);
    t(0, 1) = -1.5;
    REQUIRE(t[1] == -1.5);

    Tensor cube({2, 3, 4});
    cube(1, 2, 3) = 9.0;
    REQUIRE(cube[(1 * 3 + 2) * 4 + 3] == 9.0);
}

TEST_CASE("tensor data/shape mismatch is rejected", "[tensor]") {
    REQUIRE_THROWS_AS(Tensor({2, 2}, std::vector<double>{1.0, 2.0, 3.0}), data_error);
}

TEST_CASE("ensure_finite flags NaN and Inf", "[tensor]") {
    Tensor t({2});
    t[0] = 1.0;
    REQUIRE_NOTHROW(t.ensure_finite("test"));
    t[1] = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(t.ensure_finite("test"), numeric_error);
    t[1] = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(t.ensure_finite("test"), numeric_error);
}

TEST_CASE("activation values", "[activation]") {
    REQUIRE(activate(Activation::sigmoid, 0.0) == 0.5);
    REQUIRE(activate(Activation::relu, -3.0) == 0.0);
    REQUIRE(activate_grad(Activation::relu, -3.0) == 0.0);
    REQUIRE(activate(Activation::tanh, 1.0) == Catch::Approx(std::tanh(1.0)).epsilon(0));
    REQUIRE(activate(Activation::tanh, 1.0) == Catch::Approx(0.7615941559557649).margin(1e-15));
    REQUIRE(activate(Activation::linear, -2.5) == -2.5);
    REQUIRE(activate_grad(Activation::linear, 42.0) == 1.0);
}

TEST_CASE("activation parsing rejects unknown kinds", "[activation]") {
    REQUIRE(activation_from_string("tanh") == Activation::tanh);
    REQUIRE_THROWS_AS(activation_from_string("softmax"), config_error);
}

TEST_CASE("elementwise activation over a tensor", "[activation]") {
    Tensor x = Tensor::vector({-1.0, 0.0, 2.0});
    Tensor y = activation_apply(Activation::relu, x);
    REQUIRE(y[0] == 0.0);
    REQUIRE(y[1] == 0.0);
    REQUIRE(y[2] == 2.0);
    Tensor g = activation_grad(Activation::sigmoid, x);
    REQUIRE(g[1] == 0.25);
}

TEST_CASE("rng reproducibility and ranges", "[tensor]") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) {
        double u = a.uniform();
        REQUIRE(u == b.uniform());
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    Rng c(7);
    std::vector<int> v{1, 2, 3, 4, 5};
    auto v1 = v;
    c.shuffle(v1);
    Rng d(7);
    auto v2 = v;
    d.shuffle(v2);
    REQUIRE(v1 == v2);
    std::sort(v1.begin(), v1.end());
    REQUIRE(v1 == v);
}

TEST_CASE("concatenate keeps column order", "[tensor]") {
    Tensor a = Tensor::matrix(2, 2, {1, 2, 3, 4});
    Tensor b = Tensor::matrix(2, 3, {5, 6, 7, 8, 9, 10});

    Tensor single = concatenate({&a});
    REQUIRE(single == a);

    Tensor both = concatenate({&a, &b});
    REQUIRE(both.extent(1) == 5);
    REQUIRE(both(0, 0) == 1);
    REQUIRE(both(0, 2) == 5);
    REQUIRE(both(1, 4) == 10);

    // concat then slice recovers the parts
    REQUIRE(slice_columns(both, 0, 2) == a);
    REQUIRE(slice_columns(both, 2, 5) == b);
}

TEST_CASE("concatenate rejects mismatched zone extents", "[tensor]") {
    Tensor a({2, 2});
    Tensor b({3, 2});
    REQUIRE_THROWS_AS(concatenate({&a, &b}), data_error);
}

TEST_CASE("reshape_to_steps follows the layout rule", "[tensor]") {
    SECTION("single variable single lag is an identity up to axes") {
        Tensor x = Tensor::matrix(2, 1, {3.0, 4.0});
        Tensor steps = reshape_to_steps(x, 1, 1);
        REQUIRE(steps.shape() == std::vector<std::size_t>{2, 1, 1});
        REQUIRE(steps(0, 0, 0) == 3.0);
        REQUIRE(steps(1, 0, 0) == 4.0);
    }
    SECTION("two variables, two lags, one zone") {
        // columns: d lag1, d lag2, s lag1, s lag2; oldest step first
        Tensor x = Tensor::matrix(1, 4, {1.0, 2.0, 3.0, 4.0});
        Tensor steps = reshape_to_steps(x, 2, 2);
        REQUIRE(steps(0, 0, 0) == 2.0);  // d at t-2
        REQUIRE(steps(0, 1, 0) == 4.0);  // s at t-2
        REQUIRE(steps(0, 0, 1) == 1.0);  // d at t-1
        REQUIRE(steps(0, 1, 1) == 3.0);  // s at t-1
    }
    SECTION("reshape then flatten inverts") {
        Rng rng(11);
        Tensor x({3, 6});
        for (auto& v : x.values()) v = rng.uniform(-1.0, 1.0);
        REQUIRE(flatten_from_steps(reshape_to_steps(x, 3, 2)) == x);
        REQUIRE(flatten_from_steps(reshape_to_steps(x, 2, 3)) == x);
    }
}
