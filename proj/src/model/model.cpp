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

#include "model/model.hpp"

#include "error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace legendgen::model {

namespace {

constexpr double kMinProbability = 1e-12;

struct Forward {
    std::vector<double> h;
    double r = 0;
};

Forward forward(const QualityModel& m, const Features& x)
{
    Forward f;
    f.h.resize(std::size_t(m.hidden));
    f.r = m.b2;
    for (std::size_t j = 0; j < f.h.size(); ++j) {
        double z = m.b1[j];
        for (std::size_t k = 0; k < kInputs; ++k)
            z += m.w1[j * kInputs + k] * x[k];
        f.h[j] = std::tanh(z);
        f.r += m.w2[j] * f.h[j];
    }
    return f;
}

// Adds scale * d r(x) / d theta to grad.
void accumulate(const QualityModel& m, const Features& x, const Forward& f, double scale, std::vector<double>& grad)
{
    const std::size_t H = std::size_t(m.hidden);
    double* gw1 = grad.data();
    double* gb1 = gw1 + H * kInputs;
    double* gw2 = gb1 + H;
    double* gb2 = gw2 + H;
    for (std::size_t j = 0; j < H; ++j) {
        const double dz = scale * m.w2[j] * (1 - f.h[j] * f.h[j]);
        for (std::size_t k = 0; k < kInputs; ++k)
            gw1[j * kInputs + k] += dz * x[k];
        gb1[j] += dz;
        gw2[j] += scale * f.h[j];
    }
    *gb2 += scale;
}

Features features(const metrics::MetricVector& x)
{
    if (!x.finite())
        fail(ErrorCode::NonFiniteInput, "metric vector has non-finite fields");
    return metrics::normalizedFeatures(x);
}

// -log sigma(d), clamped; and its derivative in d.
std::pair<double, double> nll(double d)
{
    // softplus(-d) computed stably
    const double loss = d > 0 ? std::log1p(std::exp(-d)) : -d + std::log1p(std::exp(d));
    if (loss > -std::log(kMinProbability))
        return {-std::log(kMinProbability), 0.0};
    const double p = 1.0 / (1.0 + std::exp(-d));
    return {loss, -(1.0 - p)};
}

double sigmoid(double d)
{
    return 1.0 / (1.0 + std::exp(-d));
}

void appendNumbers(std::string& out, const char* key, std::span<const double> v)
{
    out += key;
    char buf[32];
    for (double x : v) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
        out += ' ';
        out.append(buf, end);
    }
    out += '\n';
}

} // namespace

QualityModel QualityModel::zeros(int hidden)
{
    if (hidden < 1)
        fail(ErrorCode::InvalidArgument, "hidden width must be at least 1");
    QualityModel m;
    m.hidden = hidden;
    m.w1.assign(std::size_t(hidden) * kInputs, 0.0);
    m.b1.assign(std::size_t(hidden), 0.0);
    m.w2.assign(std::size_t(hidden), 0.0);
    return m;
}

std::vector<double> QualityModel::parameters() const
{
    std::vector<double> p;
    p.reserve(parameterCount());
    p.insert(p.end(), w1.begin(), w1.end());
    p.insert(p.end(), b1.begin(), b1.end());
    p.insert(p.end(), w2.begin(), w2.end());
    p.push_back(b2);
    return p;
}

void QualityModel::setParameters(std::span<const double> p)
{
    if (p.size() != parameterCount())
        fail(ErrorCode::LengthMismatch, "parameter count mismatch");
    auto it = p.begin();
    std::copy_n(it, w1.size(), w1.begin());
    it += std::ptrdiff_t(w1.size());
    std::copy_n(it, b1.size(), b1.begin());
    it += std::ptrdiff_t(b1.size());
    std::copy_n(it, w2.size(), w2.begin());
    it += std::ptrdiff_t(w2.size());
    b2 = *it;
}

bool QualityModel::finite() const
{
    auto p = parameters();
    return std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); });
}

double defaultTarget(const Features& f)
{
    return -f[0] - f[1] + f[2] - f[3] + f[4] - f[7];
}

QualityModel randomModel(std::uint64_t seed, int hidden)
{
    QualityModel m = QualityModel::zeros(hidden);
    m.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-kInitRange, kInitRange);
    auto p = m.parameters();
    for (auto& v : p)
        v = u(rng);
    m.setParameters(p);
    return m;
}

QualityModel initModel(std::uint64_t seed, int hidden)
{
    QualityModel m = randomModel(seed, hidden);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Features> xs(kPretrainSamples);
    std::vector<double> ys(kPretrainSamples);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (auto& v : xs[i])
            v = unit(rng);
        ys[i] = defaultTarget(xs[i]);
    }

    auto mse = [&] {
        double s = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double e = forward(m, xs[i]).r - ys[i];
            s += e * e;
        }
        return s / double(xs.size());
    };

    // Adam on shuffled minibatches.
    constexpr double lr = 0.01, beta1 = 0.9, beta2 = 0.999, epsilon = 1e-8;
    constexpr std::size_t batch = 250;
    constexpr int maxEpochs = 500;
    const std::size_t P = m.parameterCount();
    std::vector<double> mom(P, 0.0), vel(P, 0.0), grad(P);
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    long step = 0;
    for (int epoch = 0; epoch < maxEpochs && mse() >= kPretrainTarget; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += batch) {
            std::fill(grad.begin(), grad.end(), 0.0);
            const std::size_t end = std::min(order.size(), start + batch);
            for (std::size_t k = start; k < end; ++k) {
                const auto& x = xs[order[k]];
                auto f = forward(m, x);
                accumulate(m, x, f, 2.0 * (f.r - ys[order[k]]) / double(end - start), grad);
            }
            ++step;
            auto p = m.parameters();
            const double c1 = 1 - std::pow(beta1, double(step)), c2 = 1 - std::pow(beta2, double(step));
            for (std::size_t i = 0; i < P; ++i) {
                mom[i] = beta1 * mom[i] + (1 - beta1) * grad[i];
                vel[i] = beta2 * vel[i] + (1 - beta2) * grad[i] * grad[i];
                p[i] -= lr * (mom[i] / c1) / (std::sqrt(vel[i] / c2) + epsilon);
            }
            m.setParameters(p);
        }
    }
    return m;
}

double scoreFeatures(const QualityModel& m, const Features& f)
{
    for (double v : f)
        if (!std::isfinite(v))
            fail(ErrorCode::NonFiniteInput, "feature vector has non-finite entries");
    return forward(m, f).r;
}

double score(const QualityModel& m, const metrics::MetricVector& x)
{
    return forward(m, features(x)).r;
}

void validateTuple(const FeedbackTuple& t)
{
    if (t.preferred != 0 && t.preferred != 1)
        fail(ErrorCode::InvalidArgument, "preferred index must be 0 or 1");
    if (!t.x0.finite() || !t.x1.finite())
        fail(ErrorCode::NonFiniteInput, "feedback vectors must be finite");
    if (t.x0 == t.x1)
        fail(ErrorCode::NoChange, "feedback vectors are identical");
}

double pairwiseProbability(const QualityModel& m, const FeedbackTuple& t)
{
    const auto& a = t.preferred == 0 ? t.x0 : t.x1;
    const auto& b = t.preferred == 0 ? t.x1 : t.x0;
    return sigmoid(score(m, a) - score(m, b));
}

double pairwiseLoss(const QualityModel& m, std::span<const FeedbackTuple> batch)
{
    if (batch.empty())
        fail(ErrorCode::InvalidArgument, "loss needs at least one tuple");
    double s = 0;
    for (const auto& t : batch) {
        const auto& a = t.preferred == 0 ? t.x0 : t.x1;
        const auto& b = t.preferred == 0 ? t.x1 : t.x0;
        s += nll(score(m, a) - score(m, b)).first;
    }
    return s / double(batch.size());
}

std::vector<double> lossGradient(const QualityModel& m, std::span<const FeedbackTuple> batch)
{
    if (batch.empty())
        fail(ErrorCode::InvalidArgument, "gradient needs at least one tuple");
    std::vector<double> grad(m.parameterCount(), 0.0);
    for (const auto& t : batch) {
        const auto xa = features(t.preferred == 0 ? t.x0 : t.x1);
        const auto xb = features(t.preferred == 0 ? t.x1 : t.x0);
        const auto fa = forward(m, xa), fb = forward(m, xb);
        const double g = nll(fa.r - fb.r).second / double(batch.size());
        accumulate(m, xa, fa, g, grad);
        accumulate(m, xb, fb, -g, grad);
    }
    return grad;
}

QualityModel update(const QualityModel& m, std::span<const FeedbackTuple> buffer, double lr, int epochs,
                    std::vector<double>* losses)
{
    if (buffer.empty())
        fail(ErrorCode::InvalidArgument, "update needs at least one tuple");
    if (!(lr > 0) || epochs < 1)
        fail(ErrorCode::InvalidArgument, "update needs a positive learning rate and epoch count");
    for (const auto& t : buffer)
        validateTuple(t);

    QualityModel next = m;
    auto check = [&](double loss) {
        if (!std::isfinite(loss) || !next.finite())
            fail(ErrorCode::DivergedUpdate, "loss became non-finite; update rejected");
        if (losses)
            losses->push_back(loss);
    };
    for (int e = 0; e < epochs; ++e) {
        check(pairwiseLoss(next, buffer));
        auto grad = lossGradient(next, buffer);
        auto p = next.parameters();
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] -= lr * grad[i];
        next.setParameters(p);
    }
    check(pairwiseLoss(next, buffer));
    next.version = m.version + 1;
    return next;
}

double gradientCheck(const QualityModel& m, const FeedbackTuple& t, double eps)
{
    const std::span<const FeedbackTuple> one(&t, 1);
    const auto analytic = lossGradient(m, one);
    QualityModel probe = m;
    auto p = m.parameters();
    double worst = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto q = p;
        q[i] = p[i] + eps;
        probe.setParameters(q);
        const double up = pairwiseLoss(probe, one);
        q[i] = p[i] - eps;
        probe.setParameters(q);
        const double down = pairwiseLoss(probe, one);
        const double numeric = (up - down) / (2 * eps);
        const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-6});
        worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
    }
    return worst;
}

std::string serializeModel(const QualityModel& m)
{
    std::string out = "legendgen-model 1\n";
    out += "inputs " + std::to_string(kInputs) + "\n";
    out += "hidden " + std::to_string(m.hidden) + "\n";
    out += "version " + std::to_string(m.version) + "\n";
    out += "seed " + std::to_string(m.seed) + "\n";
    appendNumbers(out, "w1", m.w1);
    appendNumbers(out, "b1", m.b1);
    appendNumbers(out, "w2", m.w2);
    appendNumbers(out, "b2", std::span<const double>(&m.b2, 1));
    return out;
}

QualityModel parseModel(std::string_view text)
{
    std::istringstream in{std::string(text)};
    auto bad = [](const std::string& why) -> QualityModel { fail(ErrorCode::InvalidArgument, "model record: " + why); };
    std::string key;
    int format = 0;
    if (!(in >> key >> format) || key != "legendgen-model" || format != 1)
        return bad("missing header");
    std::size_t inputs = 0;
    int hidden = 0;
    std::uint64_t version = 0, seed = 0;
    if (!(in >> key >> inputs) || key != "inputs" || inputs != kInputs)
        return bad("input count");
    if (!(in >> key >> hidden) || key != "hidden" || hidden < 1 || hidden > 4096)
        return bad("hidden width");
    if (!(in >> key >> version) || key != "version")
        return bad("version");
    if (!(in >> key >> seed) || key != "seed")
        return bad("seed");
    QualityModel m = QualityModel::zeros(hidden);
    m.version = version;
    m.seed = seed;
    auto readList = [&](const char* name, std::span<double> dst) {
        std::string k;
        if (!(in >> k) || k != name)
            bad(std::string("expected ") + name);
        for (auto& v : dst) {
            std::string tok;
            if (!(in >> tok))
                bad(std::string("short list ") + name);
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
                bad("bad number '" + tok + "'");
        }
    };
    readList("w1", m.w1);
    readList("b1", m.b1);
    readList("w2", m.w2);
    readList("b2", std::span<double>(&m.b2, 1));
    std::string extra;
    if (in >> extra)
        return bad("trailing data");
    return m;
}

std::string serializeTuple(const FeedbackTuple& t)
{
    nlohmann::ordered_json j;
    j["x0"] = nlohmann::ordered_json::parse(metrics::serializeMetrics(t.x0));
    j["x1"] = nlohmann::ordered_json::parse(metrics::serializeMetrics(t.x1));
    j["preferred"] = t.preferred;
    j["timestamp"] = t.timestamp;
    j["session_id"] = t.sessionId;
    return j.dump();
}

FeedbackTuple parseTuple(std::string_view text)
{
    try {
        auto j = nlohmann::json::parse(text);
        FeedbackTuple t;
        t.x0 = metrics::parseMetrics(j.at("x0").dump());
        t.x1 = metrics::parseMetrics(j.at("x1").dump());
        t.preferred = j.at("preferred").get<int>();
        t.timestamp = j.at("timestamp").get<std::string>();
        t.sessionId = j.at("session_id").get<std::string>();
        return t;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("feedback record: ") + e.what());
    }
}

} // namespace legendgen::model
