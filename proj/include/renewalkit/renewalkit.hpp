#pragma once

#define RENEWALKIT_VERSION "0.1.0"

#include "renewalkit/distributions.hpp"
#include "renewalkit/error.hpp"
#include "renewalkit/estimators.hpp"
#include "renewalkit/golden_section.hpp"
#include "renewalkit/io.hpp"
#include "renewalkit/models.hpp"
#include "renewalkit/renewal.hpp"
#include "renewalkit/reward.hpp"
#include "renewalkit/rng.hpp"
