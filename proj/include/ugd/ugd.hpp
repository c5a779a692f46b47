#pragma once

// Umbrella header for the unified graph denoising library.

#include "ugd/autoencoder.hpp"
#include "ugd/classifier.hpp"
#include "ugd/config_io.hpp"
#include "ugd/driver.hpp"
#include "ugd/errors.hpp"
#include "ugd/graph.hpp"
#include "ugd/io.hpp"
#include "ugd/manifest.hpp"
#include "ugd/matrix.hpp"
#include "ugd/nn.hpp"
#include "ugd/noise.hpp"
#include "ugd/preset.hpp"
#include "ugd/rng.hpp"
#include "ugd/spectral.hpp"
#include "ugd/structure.hpp"
