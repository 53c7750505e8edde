#ifndef FOCIR_TRAINING_HPP
#define FOCIR_TRAINING_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "focir/dataset.hpp"
#include "focir/network.hpp"
#include "focir/rng.hpp"

namespace focir {

struct TrainConfig {
    double learning_rate = 0.001;
    std::size_t batch_size = 32;
    double l2_alpha = 0.001;  // on every parameter outside the FI layer, biases included
    double l1_beta = 0.001;   // on the FI weights only
    std::size_t patience = 100;
    std::size_t max_epochs = 2000;
    std::uint64_t seed = 0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;

    void validate() const {
        if (learning_rate <= 0.0) throw config_error("train: learning_rate must be positive");
        if (batch_size == 0) throw config_error("train: batch_size must be >= 1");
        if (l2_alpha < 0.0 || l1_beta < 0.0)
            throw config_error("train: regularization strengths must be non-negative");
        if (patience == 0 || max_epochs == 0)
            throw config_error("train: patience and max_epochs must be >= 1");
        if (patience > max_epochs) throw config_error("train: patience exceeds max_epochs");
        if (adam_beta1 <= 0.0 || adam_beta1 >= 1.0 || adam_beta2 <= 0.0 || adam_beta2 >= 1.0 ||
            adam_eps <= 0.0)
            throw config_error("train: invalid Adam constants");
    }
};

inline double mse_data_term(std::span<const double> pred, std::span<const double> target) {
    if (pred.size() != target.size())
        throw data_error("loss: prediction/target length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double d = pred[i] - target[i];
        sum += d * d;
    }
    return sum / static_cast<double>(pred.size());
}

// alpha * sum(non-FI params squared) + beta * sum |W_FI|
inline double regularization_penalty(Network& net, const TrainConfig& config) {
    double l2 = 0.0, l1 = 0.0;
    net.visit_params([&](const ParamRef& p) {
        if (p.kind == ParamKind::feature_importance) {
            for (double v : p.value->values()) l1 += std::fabs(v);
        } else {
            for (double v : p.value->values()) l2 += v * v;
        }
    });
    return config.l2_alpha * l2 + config.l1_beta * l1;
}

// Regularized objective for a single sample: mean squared error over the
// zone cells plus the penalty terms.
inline double loss(std::span<const double> pred, std::span<const double> target, Network& net,
                   const TrainConfig& config) {
    return mse_data_term(pred, target) + regularization_penalty(net, config);
}

// Data-term-only MSE over every zone cell of a sample set.
inline double dataset_mse(const Network& net, const SampleSet& set) {
    if (set.empty()) throw data_error("dataset_mse: empty sample set");
    double sum = 0.0;
    std::size_t cells = 0;
    Network::Cache scratch;
    for (const InputSample& sample : set.samples) {
        std::vector<double> pred = net.forward(sample.x, scratch);
        for (std::size_t p = 0; p < pred.size(); ++p) {
            double d = pred[p] - sample.target[p];
            sum += d * d;
        }
        cells += pred.size();
    }
    return sum / static_cast<double>(cells);
}

inline void constrain_recurrent(Tensor& recurrent_weights, double bound) {
    for (double& w : recurrent_weights.values()) {
        if (w > bound) w = bound;
        if (w < -bound) w = -bound;
    }
}

inline void constrain_recurrent(IndRnnLayer& layer) {
    constrain_recurrent(layer.recurrent_weights, layer.recurrent_bound);
}

struct AdamState {
    struct Slot {
        Tensor m;
        Tensor v;
    };
    std::vector<Slot> slots;  // parameter visitation order
    std::size_t step = 0;
};

inline AdamState make_adam_state(Network& net) {
    AdamState state;
    net.visit_params([&](const ParamRef& p) {
        state.slots.push_back({Tensor(p.value->shape()), Tensor(p.value->shape())});
    });
    return state;
}

// Standard Adam with bias correction, applied to every parameter group from
// its accumulated gradient; IndRNN recurrent weights are clipped back into
// their bound immediately afterwards.
inline void adam_step(Network& net, AdamState& state, const TrainConfig& config) {
    ++state.step;
    const double b1 = config.adam_beta1;
    const double b2 = config.adam_beta2;
    const double correction1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
    const double correction2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
    std::size_t slot_index = 0;
    net.visit_params([&](const ParamRef& p) {
        AdamState::Slot& slot = state.slots.at(slot_index++);
        if (!slot.m.same_shape(*p.value))
            throw data_error("adam: state shape mismatch for " + p.name);
        Tensor& value = *p.value;
        const Tensor& grad = *p.grad;
        for (std::size_t i = 0; i < value.size(); ++i) {
            slot.m[i] = b1 * slot.m[i] + (1.0 - b1) * grad[i];
            slot.v[i] = b2 * slot.v[i] + (1.0 - b2) * grad[i] * grad[i];
            double m_hat = slot.m[i] / correction1;
            double v_hat = slot.v[i] / correction2;
            value[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_eps);
        }
        if (p.kind == ParamKind::indrnn_recurrent)
            constrain_recurrent(value, p.recurrent_bound);
    });
}

// Adds the penalty gradients on top of the accumulated data-term gradients.
inline void accumulate_regularization_grads(Network& net, const TrainConfig& config) {
    net.visit_params([&](const ParamRef& p) {
        if (p.kind == ParamKind::feature_importance) {
            for (std::size_t i = 0; i < p.value->size(); ++i) {
                double v = (*p.value)[i];
                (*p.grad)[i] += config.l1_beta * (v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0));
            }
        } else {
            for (std::size_t i = 0; i < p.value->size(); ++i)
                (*p.grad)[i] += 2.0 * config.l2_alpha * (*p.value)[i];
        }
    });
}

struct TrainLog {
    struct EpochEntry {
        std::size_t epoch = 0;  // 1-based
        double train_loss = 0.0;
        double val_loss = 0.0;
    };
    std::vector<EpochEntry> epochs;
    std::size_t best_epoch = 0;
    double best_val_loss = std::numeric_limits<double>::infinity();
    std::string stop_reason;
};

// Called after every optimizer step; used by the invariant tests.
using StepObserver = std::function<void(Network&, std::size_t step)>;

// Mini-batch loop with epoch shuffling, early stopping on the validation
// data term, and restoration of the best-validation parameters. The batch
// MSE averages over all batch_size * N cells; a trailing partial batch is
// kept and averaged over its own cells.
inline TrainLog train(Network& net, const SampleSet& train_set, const SampleSet& val_set,
                      const TrainConfig& config, const StepObserver& observer = {}) {
    config.validate();
    if (train_set.empty() || val_set.empty())
        throw data_error("train: empty training or validation set");
    if (!(train_set.layout == net.layout))
        throw data_error("train: sample layout does not match network");

    Rng rng(config.seed);
    AdamState adam = make_adam_state(net);
    TrainLog log;

    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::vector<Tensor> best_params = net.snapshot_params();
    std::size_t epochs_since_best = 0;
    std::size_t global_step = 0;

    Network::Cache cache;
    std::vector<double> grad_pred(net.num_zones);

    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        rng.shuffle(order);

        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t end = std::min(start + config.batch_size, order.size());
            const double batch_cells = static_cast<double>((end - start) * net.num_zones);

            net.zero_grads();
            double batch_sq = 0.0;
            for (std::size_t i = start; i < end; ++i) {
                const InputSample& sample = train_set.samples[order[i]];
                std::vector<double> pred = net.forward(sample.x, cache);
                for (std::size_t p = 0; p < net.num_zones; ++p) {
                    double diff = pred[p] - sample.target[p];
                    batch_sq += diff * diff;
                    grad_pred[p] = 2.0 * diff / batch_cells;
                }
                net.backward(grad_pred, cache);
            }
            double batch_loss = batch_sq / batch_cells + regularization_penalty(net, config);
            if (!std::isfinite(batch_loss))
                throw numeric_error("training diverged at epoch " + std::to_string(epoch) +
                                    ": non-finite batch loss");

            accumulate_regularization_grads(net, config);
            adam_step(net, adam, config);
            ++global_step;
            if (observer) observer(net, global_step);

            epoch_loss += batch_loss;
            ++batches;
        }

        double train_loss = epoch_loss / static_cast<double>(batches);
        double val_loss = dataset_mse(net, val_set);
        if (!std::isfinite(val_loss))
            throw numeric_error("training diverged at epoch " + std::to_string(epoch) +
                                ": non-finite validation loss");
        log.epochs.push_back({epoch, train_loss, val_loss});

        if (val_loss < log.best_val_loss) {
            log.best_val_loss = val_loss;
            log.best_epoch = epoch;
            best_params = net.snapshot_params();
            epochs_since_best = 0;
        } else {
            ++epochs_since_best;
        }
        if (epochs_since_best >= config.patience) {
            log.stop_reason = "early stopping: no validation improvement for " +
                              std::to_string(config.patience) + " epochs";
            break;
        }
    }
    if (log.stop_reason.empty())
        log.stop_reason = "reached max_epochs (" + std::to_string(config.max_epochs) + ")";

    net.restore_params(best_params);
    return log;
}

}  // namespace focir

#endif
