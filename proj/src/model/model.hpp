// Copyright 2026 The legendgen Authors
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

#pragma once

#include "metrics/metrics.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace legendgen::model {

inline constexpr std::size_t kInputs = metrics::MetricVector::kSize;
inline constexpr int kDefaultHidden = 16;
inline constexpr double kInitRange = 0.1;
inline constexpr double kPretrainTarget = 1e-3; // mean squared error
inline constexpr std::size_t kPretrainSamples = 10000;
inline constexpr double kLearningRate = 0.01;
inline constexpr int kEpochs = 10;

using Features = std::array<double, kInputs>;

/// Two-layer perceptron: score = w2 . tanh(w1 x + b1) + b2 over the
/// normalized metric features. A value type; updates return a new model.
struct QualityModel {
    int hidden = kDefaultHidden;
    std::vector<double> w1; // hidden x kInputs, row-major
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0;
    std::uint64_t version = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const QualityModel&, const QualityModel&) = default;

    static QualityModel zeros(int hidden = kDefaultHidden);

    std::size_t parameterCount() const { return w1.size() + b1.size() + w2.size() + 1; }
    /// Flattened as w1, b1, w2, b2.
    std::vector<double> parameters() const;
    void setParameters(std::span<const double> p);
    bool finite() const;
};

/// Default target on normalized features: -O - I + R - S + C - pref_c.
double defaultTarget(const Features& f);

/// Small uniform random parameters, no pre-training.
QualityModel randomModel(std::uint64_t seed, int hidden = kDefaultHidden);

/// Random init followed by Adam regression onto defaultTarget until the
/// mean squared error falls below kPretrainTarget.
QualityModel initModel(std::uint64_t seed, int hidden = kDefaultHidden);

/// Throws NonFiniteInput.
double score(const QualityModel& m, const metrics::MetricVector& x);
double scoreFeatures(const QualityModel& m, const Features& f);

struct FeedbackTuple {
    metrics::MetricVector x0;
    metrics::MetricVector x1;
    int preferred = 0; // index of the preferred vector
    std::string timestamp;
    std::string sessionId;

    friend bool operator==(const FeedbackTuple&, const FeedbackTuple&) = default;
};

/// Throws NoChange when x0 == x1 and InvalidArgument for a bad index or
/// non-finite vectors.
void validateTuple(const FeedbackTuple& t);

/// sigma(r(x_i) - r(x_{1-i})).
double pairwiseProbability(const QualityModel& m, const FeedbackTuple& t);

/// -mean(log p_i), log argument clamped at 1e-12.
double pairwiseLoss(const QualityModel& m, std::span<const FeedbackTuple> batch);

/// Analytic gradient of pairwiseLoss, laid out like parameters().
std::vector<double> lossGradient(const QualityModel& m, std::span<const FeedbackTuple> batch);

/// Full-batch gradient descent. Throws DivergedUpdate when the loss turns
/// non-finite (the caller keeps the old model). `losses`, when given,
/// receives the loss before each epoch and after the last.
QualityModel update(const QualityModel& m, std::span<const FeedbackTuple> buffer, double lr = kLearningRate,
                    int epochs = kEpochs, std::vector<double>* losses = nullptr);

/// Largest |analytic - numeric| / max(|analytic|, |numeric|, 1e-6) over all
/// parameters, with central differences of step eps.
double gradientCheck(const QualityModel& m, const FeedbackTuple& t, double eps = 1e-5);

std::string serializeModel(const QualityModel& m);
QualityModel parseModel(std::string_view text);

std::string serializeTuple(const FeedbackTuple& t);
FeedbackTuple parseTuple(std::string_view text);

} // namespace legendgen::model
