#ifndef FOCIR_FOCIR_HPP
#define FOCIR_FOCIR_HPP

// Umbrella header for the FOCIR-Net forecasting toolkit.

#include "focir/ablation.hpp"
#include "focir/activation.hpp"
#include "focir/checkpoint.hpp"
#include "focir/dataset.hpp"
#include "focir/dataset_io.hpp"
#include "focir/errors.hpp"
#include "focir/feature_layout.hpp"
#include "focir/gradcheck.hpp"
#include "focir/layers/conv1d.hpp"
#include "focir/layers/dense.hpp"
#include "focir/layers/feature_importance.hpp"
#include "focir/layers/indrnn.hpp"
#include "focir/layers/shape_ops.hpp"
#include "focir/metrics.hpp"
#include "focir/network.hpp"
#include "focir/params.hpp"
#include "focir/reports.hpp"
#include "focir/rng.hpp"
#include "focir/run_config.hpp"
#include "focir/synth.hpp"
#include "focir/tensor.hpp"
#include "focir/training.hpp"

#endif
