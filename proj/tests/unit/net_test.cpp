// Copyright 2026 The PuriGAN Authors. All Rights Reserved.
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

#include "purigan/net.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "purigan/errors.hpp"
#include "purigan/serialize.hpp"
#include "test_support.hpp"

namespace purigan {
namespace {

Mlp Linear1x1(double w, double b) {
  Mlp net = Mlp::Zeros({1, 1}, Activation::kTanh);
  net.params()[0].weight(0, 0) = w;
  net.params()[0].bias(0) = b;
  return net;
}

Points Col(std::initializer_list<double> xs) {
  Points p(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) p(i++, 0) = x;
  return p;
}

TEST(Forward, IdentityLayer) {
  EXPECT_DOUBLE_EQ(forward(Linear1x1(1.0, 0.0), Col({3.0}))(0, 0), 3.0);
}

TEST(Forward, ZeroWeightsGiveBias) {
  Mlp net = Mlp::Zeros({3, 5, 1}, Activation::kLeakyRelu);
  net.params().back().bias(0) = 0.7;
  Rng rng(1);
  const Points x = Points::Random(20, 3) * 10.0;
  const auto out = forward(net, x);
  for (Eigen::Index i = 0; i < out.rows(); ++i) EXPECT_DOUBLE_EQ(out(i, 0), 0.7);
}

TEST(Forward, TanhOddSymmetryAtZero) {
  Rng rng(2);
  Mlp net({2, 8, 8, 1}, Activation::kTanh, rng);
  for (auto& l : net.params()) l.bias.setZero();
  EXPECT_DOUBLE_EQ(forward(net, Points::Zero(3, 2)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Forward, ShapeAndNumericErrors) {
  Rng rng(3);
  Mlp net({2, 4, 1}, Activation::kTanh, rng);
  EXPECT_THROW(forward(net, Points::Zero(3, 3)), ShapeError);
  Points bad = Points::Zero(2, 2);
  bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    forward(net, bad);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_EQ(e.layer(), 0u);
  }
}

TEST(Forward, BatchOrderInvariant) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    Mlp net({3, 16, 16, 2}, trial % 2 ? Activation::kTanh : Activation::kLeakyRelu, rng);
    const Points x = Points::Random(31, 3);
    std::vector<Eigen::Index> perm(31);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Points xp(31, 3);
    for (Eigen::Index i = 0; i < 31; ++i) xp.row(i) = x.row(perm[static_cast<std::size_t>(i)]);
    const auto y = forward(net, x), yp = forward(net, xp);
    for (Eigen::Index i = 0; i < 31; ++i) {
      EXPECT_EQ(yp.row(i), y.row(perm[static_cast<std::size_t>(i)]));
    }
  }
}

TEST(Gradients, StationaryPoint) {
  const auto g = gradients(Linear1x1(0.5, 0.0), Col({2.0}),
                           [](const Eigen::MatrixXd& o) { return mean_squared_to(o, 1.0); });
  EXPECT_DOUBLE_EQ(g.grads[0].weight(0, 0), 0.0);
}

TEST(Gradients, HandChainRule) {
  // L = (w x - 1)^2, dL/dw = 2 (w x - 1) x = 2 * 1 * 2 = 4 at w = 1, x = 2.
  const auto g = gradients(Linear1x1(1.0, 0.0), Col({2.0}),
                           [](const Eigen::MatrixXd& o) { return mean_squared_to(o, 1.0); });
  EXPECT_DOUBLE_EQ(g.grads[0].weight(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(g.grads[0].bias(0), 2.0);
  EXPECT_DOUBLE_EQ(g.loss, 1.0);
}

TEST(Gradients, MatchFiniteDifferencesOnRandomNets) {
  Rng rng(2026);
  std::uniform_int_distribution<int> width(1, 12), depth(0, 3), in(1, 4), out(1, 3), batch(1, 16);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> sizes{in(rng)};
    for (int l = depth(rng); l > 0; --l) sizes.push_back(width(rng));
    sizes.push_back(out(rng));
    const auto act = trial % 2 ? Activation::kTanh : Activation::kLeakyRelu;
    Mlp net(sizes, act, rng);
    testing::GradCheck r;
    for (int draw = 0; draw < 100; ++draw) {
      const Points x = Points::Random(batch(rng), sizes.front());
      const Eigen::MatrixXd t = Eigen::MatrixXd::Random(x.rows(), sizes.back());
      r = testing::check_gradients(net, x, t);
      if (r.kink_crossings == 0) break;
    }
    ASSERT_EQ(r.kink_crossings, 0u) << "trial " << trial;
    EXPECT_LT(r.max_rel_error, testing::kGradRelTolerance) << "trial " << trial;
  }
}

// The kink detector has to fire, or the redraw above would hide nothing.
TEST(Gradients, DetectsStencilAcrossKink) {
  Mlp net = Mlp::Zeros({1, 1, 1}, Activation::kLeakyRelu);
  net.params()[0].weight(0, 0) = 1.0;
  net.params()[0].bias(0) = -0.5 + 5e-5;
  net.params()[1].weight(0, 0) = 1.0;
  const Points x = Points::Constant(1, 1, 0.5);
  const auto r = testing::check_gradients(net, x, Eigen::MatrixXd::Zero(1, 1));
  EXPECT_GT(r.kink_crossings, 0u);
}

TEST(Gradients, InputGradientMatchesFiniteDifferences) {
  Rng rng(8);
  Mlp net({2, 10, 1}, Activation::kTanh, rng);
  Points x = Points::Random(5, 2);
  const auto trace = forward_trace(net, x);
  const auto back = backward(net, trace, Eigen::MatrixXd::Ones(5, 1), false);
  EXPECT_TRUE(back.grads.empty());
  const double h = 1e-5;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      Points up = x, down = x;
      up(i, j) += h;
      down(i, j) -= h;
      const double fd = (forward(net, up).sum() - forward(net, down).sum()) / (2 * h);
      EXPECT_NEAR(back.d_input(i, j), fd, 1e-8);
    }
  }
}

TEST(Adam, ZeroGradientIsNoOp) {
  Rng rng(5);
  Mlp net({2, 4, 1}, Activation::kTanh, rng);
  const Mlp before = net;
  AdamState opt(net, {});
  optimizer_step(opt, net, zeros_like(net.params()));
  EXPECT_TRUE(net == before);
  EXPECT_EQ(opt.step(), 1);
}

TEST(Adam, ConvergesOnScalarQuadratic) {
  Mlp net = Linear1x1(0.0, 0.0);
  AdamState opt(net, {.learning_rate = 0.01});
  for (int i = 0; i < 2000; ++i) {
    ParamSet g = zeros_like(net.params());
    g[0].weight(0, 0) = 2.0 * (net.params()[0].weight(0, 0) - 3.0);
    optimizer_step(opt, net, g);
  }
  EXPECT_LT(std::abs(net.params()[0].weight(0, 0) - 3.0), 0.01);
}

TEST(Adam, DeterministicTrajectories) {
  auto run = [] {
    Rng rng(17);
    Mlp net({2, 6, 1}, Activation::kLeakyRelu, rng);
    AdamState opt(net, {});
    for (int i = 0; i < 50; ++i) {
      const Points x = Points::NullaryExpr(8, 2, [&] { return std::normal_distribution<double>()(rng); });
      auto g = gradients(net, x, [](const Eigen::MatrixXd& o) { return mean_squared_to(o, 0.3); });
      optimizer_step(opt, net, g.grads);
    }
    return std::make_pair(net, opt);
  };
  const auto a = run(), b = run();
  EXPECT_TRUE(a.first == b.first);
  EXPECT_TRUE(a.second == b.second);
}

TEST(Adam, RejectsBadGradients) {
  Rng rng(6);
  Mlp net({2, 3, 1}, Activation::kTanh, rng);
  AdamState opt(net, {});
  ParamSet g = zeros_like(net.params());
  g[1].bias(0) = NAN;
  try {
    optimizer_step(opt, net, g);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_EQ(e.layer(), 1u);
  }
  g.pop_back();
  EXPECT_THROW(optimizer_step(opt, net, g), ShapeError);
}

TEST(Serialize, BitwiseRoundTrip) {
  Rng rng(7);
  Mlp net({2, 5, 5, 1}, Activation::kLeakyRelu, rng);
  AdamState opt(net, {.learning_rate = 2e-4, .beta1 = 0.5});
  auto g = gradients(net, Points::Random(4, 2),
                     [](const Eigen::MatrixXd& o) { return mean_squared_to(o, 1.0); });
  optimizer_step(opt, net, g.grads);
  BinaryWriter w;
  write_mlp(w, net);
  write_adam(w, opt);
  BinaryReader r(w.data());
  const Mlp net2 = read_mlp(r);
  const AdamState opt2 = read_adam(r);
  EXPECT_TRUE(r.at_end());
  EXPECT_TRUE(net2 == net);
  EXPECT_TRUE(opt2 == opt);

  BinaryWriter only_net;
  write_mlp(only_net, net);
  const std::string_view bytes = only_net.data();
  for (std::size_t cut : {std::size_t{3}, bytes.size() / 2, bytes.size() - 1}) {
    BinaryReader truncated(bytes.substr(0, cut));
    EXPECT_THROW(read_mlp(truncated), LoadError) << cut;
  }
}

TEST(Flatten, RoundTrip) {
  Rng rng(9);
  Mlp net({3, 4, 2}, Activation::kTanh, rng);
  const auto flat = flatten(net.params());
  EXPECT_EQ(static_cast<std::size_t>(flat.size()), net.parameter_count());
  ParamSet p = zeros_like(net.params());
  unflatten(flat, p);
  Mlp copy = net;
  copy.params() = p;
  EXPECT_TRUE(copy == net);
}

}  // namespace
}  // namespace purigan
